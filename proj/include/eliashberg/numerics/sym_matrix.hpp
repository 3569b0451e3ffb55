#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "eliashberg/errors.hpp"

namespace eliashberg {

/// Dense real symmetric matrix stored row-major. Every write mirrors, so
/// (i, j) and (j, i) are the same double bit for bit.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t order) : order_(order), data_(order * order, 0.0) {}

  /// Builds from nested rows; throws InputError unless square and symmetric.
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows) : SymMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != order_) throw InputError("SymMatrix: rows must form a square matrix");
      std::size_t j = 0;
      for (double v : row) data_[i * order_ + j++] = v;
      ++i;
    }
    for (std::size_t r = 0; r < order_; ++r)
      for (std::size_t c = r + 1; c < order_; ++c)
        if (data_[r * order_ + c] != data_[c * order_ + r])
          throw InputError("SymMatrix: entries (" + std::to_string(r) + "," + std::to_string(c) +
                           ") and its transpose differ");
  }

  std::size_t order() const noexcept { return order_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * order_ + j]; }

  void set(std::size_t i, std::size_t j, double value) noexcept {
    data_[i * order_ + j] = value;
    data_[j * order_ + i] = value;
  }

  void add_to_diagonal(double shift) noexcept {
    for (std::size_t i = 0; i < order_; ++i) data_[i * order_ + i] += shift;
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(data_).subspan(i * order_, order_);
  }

  /// Leading order x order block.
  SymMatrix leading_block(std::size_t order) const {
    if (order > order_) throw InputError("SymMatrix: block larger than matrix");
    SymMatrix out(order);
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t j = 0; j < order; ++j) out.data_[i * order + j] = (*this)(i, j);
    return out;
  }

  bool all_finite() const noexcept {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  /// y = M x
  void multiply(std::span<const double> x, std::span<double> y) const noexcept {
    for (std::size_t i = 0; i < order_; ++i) {
      double acc = 0.0;
      const double* r = data_.data() + i * order_;
      for (std::size_t j = 0; j < order_; ++j) acc += r[j] * x[j];
      y[i] = acc;
    }
  }

  std::vector<double> operator*(std::span<const double> x) const {
    std::vector<double> y(order_);
    multiply(x, y);
    return y;
  }

  double trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < order_; ++i) t += (*this)(i, i);
    return t;
  }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t order_ = 0;
  std::vector<double> data_;
};

}  // namespace eliashberg
