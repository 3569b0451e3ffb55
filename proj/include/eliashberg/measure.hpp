#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "eliashberg/config.hpp"
#include "eliashberg/errors.hpp"
#include "eliashberg/numerics/quadrature.hpp"

namespace eliashberg {

/// Temperature in the same energy unit as the phonon frequencies (hbar = k_B = 1).
struct Temperature {
  double value;
};

struct Atom {
  double weight;
  double omega;
};

struct DensityNode {
  double omega;
  double density;
};

struct EinsteinSpec {
  double omega;
};
struct DiscreteSpec {
  std::vector<Atom> atoms;
};
/// Piecewise-linear density through the nodes, zero outside [first, last].
struct TabulatedSpec {
  std::vector<DensityNode> nodes;
};

/// Unvalidated description of a phonon spectral measure.
using MeasureSpec = std::variant<EinsteinSpec, DiscreteSpec, TabulatedSpec>;

enum class MeasureKind { einstein, discrete, tabulated };

inline constexpr double kMassTolerance = 1e-3;

/// Normalized phonon measure P(d omega) with bounded support.
///
/// Instances only come out of validate() (or the named constructors, which
/// call it), so every SpectralMeasure has unit mass, positive frequencies and
/// a finite support bound. Immutable.
class SpectralMeasure {
 public:
  static SpectralMeasure einstein(double omega);
  static SpectralMeasure discrete(std::vector<Atom> atoms);
  static SpectralMeasure tabulated(std::vector<DensityNode> nodes);

  friend SpectralMeasure validate(const MeasureSpec& spec);

  MeasureKind kind() const noexcept { return kind_; }
  bool is_atomic() const noexcept { return kind_ != MeasureKind::tabulated; }
  bool is_single_atom() const noexcept { return is_atomic() && atoms_.size() == 1; }

  /// Largest point of the support (the bound written Omega-bar).
  double support_bound() const noexcept { return support_bound_; }

  /// Smallest atom, or the first node carrying mass for a tabulated density.
  double min_frequency() const noexcept { return min_frequency_; }

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::span<const DensityNode> nodes() const noexcept { return nodes_; }

  /// Advisory diagnostics collected during validation.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Integral of g against the measure.
  template <class G>
  double average(G&& g, double tol = default_tolerances().quadrature_tol) const {
    if (is_atomic()) {
      double sum = 0.0;
      for (const Atom& a : atoms_) sum += a.weight * g(a.omega);
      return sum;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
      const DensityNode l = nodes_[i];
      const DensityNode r = nodes_[i + 1];
      if (l.density == 0.0 && r.density == 0.0) continue;
      const double slope = (r.density - l.density) / (r.omega - l.omega);
      sum += integrate_adaptive([&](double w) { return g(w) * (l.density + slope * (w - l.omega)); }, l.omega,
                                r.omega, tol);
    }
    return sum;
  }

  /// <omega^k>, k >= 1. Exact for Einstein and discrete measures.
  double moment(int k) const {
    if (k < 1) throw DomainError("moment: order must be a positive integer");
    if (kind_ == MeasureKind::einstein) return std::pow(atoms_.front().omega, k);
    return average([k](double w) { return std::pow(w, k); });
  }

  /// <[[n]]> = < omega^2 / (omega^2 + (2 n pi T)^2) >.
  double kernel_average(int n, Temperature t, double tol = default_tolerances().quadrature_tol) const {
    if (!(t.value > 0.0)) throw DomainError("kernel_average: temperature must be positive");
    if (n < 1) throw DomainError("kernel_average: Matsubara index must be >= 1");
    const double c = 2.0 * n * std::numbers::pi * t.value;
    const double c2 = c * c;
    return average([c2](double w) { return w * w / (w * w + c2); }, tol);
  }

  /// <varpi^2> = <omega^2> / (2 pi T)^2.
  double mean_varpi_squared(Temperature t) const {
    if (!(t.value > 0.0)) throw DomainError("mean_varpi_squared: temperature must be positive");
    const double c = 2.0 * std::numbers::pi * t.value;
    return moment(2) / (c * c);
  }

  /// Pushforward under omega -> s * omega.
  SpectralMeasure scaled(double s) const;

  /// Normalized description, suitable for serialization.
  MeasureSpec spec() const;

 private:
  SpectralMeasure() = default;
  void finish();

  MeasureKind kind_ = MeasureKind::einstein;
  std::vector<Atom> atoms_;
  std::vector<DensityNode> nodes_;
  double support_bound_ = 0.0;
  double min_frequency_ = 0.0;
  std::vector<std::string> warnings_;
};

namespace detail {

inline void check_mass(double mass, std::vector<std::string>& problems) {
  if (!std::isfinite(mass) || std::abs(mass - 1.0) > kMassTolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "total mass " << mass << " deviates from 1 by more than " << kMassTolerance;
    problems.push_back(msg.str());
  }
}

[[noreturn]] inline void reject(const std::vector<std::string>& problems) {
  std::string what = "invalid spectral measure:";
  for (const auto& p : problems) what += "\n  - " + p;
  throw ValidationError(what);
}

}  // namespace detail

/// Checks a raw measure description and returns it normalized to unit mass.
inline SpectralMeasure validate(const MeasureSpec& spec) {
  SpectralMeasure m;
  std::vector<std::string> problems;

  if (const auto* e = std::get_if<EinsteinSpec>(&spec)) {
    if (!(e->omega > 0.0) || !std::isfinite(e->omega))
      problems.push_back("einstein frequency must be positive and finite, got " + std::to_string(e->omega));
    if (!problems.empty()) detail::reject(problems);
    m.kind_ = MeasureKind::einstein;
    m.atoms_ = {Atom{1.0, e->omega}};
  } else if (const auto* d = std::get_if<DiscreteSpec>(&spec)) {
    if (d->atoms.empty()) problems.push_back("discrete measure needs at least one atom");
    double mass = 0.0;
    for (std::size_t i = 0; i < d->atoms.size(); ++i) {
      const Atom& a = d->atoms[i];
      if (!(a.omega > 0.0) || !std::isfinite(a.omega))
        problems.push_back("atom " + std::to_string(i) + ": frequency must be positive, got " +
                           std::to_string(a.omega));
      if (!(a.weight >= 0.0) || !std::isfinite(a.weight))
        problems.push_back("atom " + std::to_string(i) + ": weight must be nonnegative, got " +
                           std::to_string(a.weight));
      mass += a.weight;
    }
    if (!d->atoms.empty()) detail::check_mass(mass, problems);
    if (!problems.empty()) detail::reject(problems);
    m.kind_ = MeasureKind::discrete;
    for (const Atom& a : d->atoms)
      if (a.weight > 0.0) m.atoms_.push_back(Atom{a.weight / mass, a.omega});
  } else {
    const auto& nodes = std::get<TabulatedSpec>(spec).nodes;
    if (nodes.size() < 2) problems.push_back("tabulated density needs at least two nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const DensityNode& n = nodes[i];
      if (!(n.omega >= 0.0) || !std::isfinite(n.omega))
        problems.push_back("node " + std::to_string(i) + ": frequency must be nonnegative, got " +
                           std::to_string(n.omega));
      if (!(n.density >= 0.0) || !std::isfinite(n.density))
        problems.push_back("node " + std::to_string(i) + ": density must be nonnegative, got " +
                           std::to_string(n.density));
      if (i > 0 && !(n.omega > nodes[i - 1].omega))
        problems.push_back("node " + std::to_string(i) + ": frequencies must be strictly increasing");
    }
    if (problems.empty()) {
      double mass = 0.0;
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        mass += 0.5 * (nodes[i].density + nodes[i + 1].density) * (nodes[i + 1].omega - nodes[i].omega);
      detail::check_mass(mass, problems);
      if (problems.empty()) {
        m.kind_ = MeasureKind::tabulated;
        m.nodes_ = nodes;
        for (auto& n : m.nodes_) n.density /= mass;
      }
    }
    if (!problems.empty()) detail::reject(problems);
  }
  m.finish();
  return m;
}

inline void SpectralMeasure::finish() {
  if (is_atomic()) {
    support_bound_ = 0.0;
    min_frequency_ = atoms_.front().omega;
    for (const Atom& a : atoms_) {
      support_bound_ = std::max(support_bound_, a.omega);
      min_frequency_ = std::min(min_frequency_, a.omega);
    }
    return;
  }
  support_bound_ = nodes_.back().omega;
  // Tail nodes with zero density still count: the support bound is the last node.
  min_frequency_ = nodes_.front().omega;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    if (nodes_[i].density > 0.0 || nodes_[i + 1].density > 0.0) {
      min_frequency_ = nodes_[i].omega;
      break;
    }
  }
  // Membership in the admissible class needs density = O(omega) as omega -> 0.
  // Heuristic: the first node may not sit above the steepest tabulated slope
  // extended linearly from the origin.
  double slope_bound = 0.0;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
    slope_bound = std::max(slope_bound, std::abs(nodes_[i + 1].density - nodes_[i].density) /
                                            (nodes_[i + 1].omega - nodes_[i].omega));
  const DensityNode first = nodes_.front();
  if (first.density > slope_bound * first.omega) {
    std::ostringstream msg;
    msg << "density " << first.density << " at omega = " << first.omega
        << " does not vanish linearly towards omega = 0";
    warnings_.push_back(msg.str());
  }
}

inline SpectralMeasure SpectralMeasure::einstein(double omega) { return validate(EinsteinSpec{omega}); }

inline SpectralMeasure SpectralMeasure::discrete(std::vector<Atom> atoms) {
  return validate(DiscreteSpec{std::move(atoms)});
}

inline SpectralMeasure SpectralMeasure::tabulated(std::vector<DensityNode> nodes) {
  return validate(TabulatedSpec{std::move(nodes)});
}

inline SpectralMeasure SpectralMeasure::scaled(double s) const {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("scaled: factor must be positive");
  SpectralMeasure out = *this;
  for (Atom& a : out.atoms_) a.omega *= s;
  for (DensityNode& n : out.nodes_) {
    n.omega *= s;
    n.density /= s;
  }
  out.support_bound_ *= s;
  out.min_frequency_ *= s;
  return out;
}

inline MeasureSpec SpectralMeasure::spec() const {
  switch (kind_) {
    case MeasureKind::einstein:
      return EinsteinSpec{atoms_.front().omega};
    case MeasureKind::discrete:
      return DiscreteSpec{atoms_};
    case MeasureKind::tabulated:
      break;
  }
  return TabulatedSpec{nodes_};
}

inline std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::einstein:
      return "einstein";
    case MeasureKind::discrete:
      return "discrete";
    case MeasureKind::tabulated:
      break;
  }
  return "tabulated";
}

}  // namespace eliashberg
