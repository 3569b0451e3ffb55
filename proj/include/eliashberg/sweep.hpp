#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>
#include <vector>

#include "eliashberg/bounds.hpp"
#include "eliashberg/errors.hpp"
#include "eliashberg/io/format.hpp"
#include "eliashberg/measure.hpp"
#include "eliashberg/tc_solver.hpp"

namespace eliashberg {

/// One lambda of a bound-vs-coupling sweep. Temperatures are raw (not yet
/// normalized); write_sweep_csv applies the requested axis scaling.
struct SweepRow {
  double lambda = 0.0;
  std::optional<double> tc_flat;
  double tc_sharp = 0.0;
  double tc_tilde = 0.0;
  std::optional<double> tc_n4;
  std::optional<double> tc_converged;
};

struct SweepOptions {
  double lambda_min = 1.0;
  double lambda_max = 100.0;
  int points = 50;
  /// Divide temperature columns by sqrt(<omega^2>).
  bool normalized = false;
  /// Also emit x = 1/sqrt(lambda) and y = T / (sqrt(<omega^2>) sqrt(lambda)).
  bool inverse_sqrt_x = false;
  /// Relative tolerance of the converged ladder; absent skips that column.
  std::optional<double> converge_tol = 1e-6;
  unsigned threads = 0;
};

/// Logarithmically spaced couplings, endpoints exact.
inline std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("sweep: requires 0 < lambda-min < lambda-max");
  if (points < 2) throw DomainError("sweep: requires at least two points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i / (points - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

inline SweepRow sweep_row(const SpectralMeasure& m, double lambda, const SweepOptions& opts) {
  SweepRow row{lambda, tc_flat(m, lambda), tc_sharp(m, lambda), tc_tilde(m, lambda), tc_n(m, lambda, 4).value,
               std::nullopt};
  if (opts.converge_tol) row.tc_converged = tc_converged(m, lambda, *opts.converge_tol).converged_tc;
  return row;
}

/// Rows are computed in parallel and returned in lambda order.
inline std::vector<SweepRow> compute_sweep(const SpectralMeasure& m, const SweepOptions& opts) {
  const std::vector<double> grid = log_grid(opts.lambda_min, opts.lambda_max, opts.points);
  // Warm the shared memo before fanning out.
  (void)asymptotic_tc_constant();
  (void)bound_constants();
  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        rows[i] = sweep_row(m, grid[i], opts);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

inline constexpr const char* kSweepSchema = "eliashberg-tc v1";

inline void write_sweep_csv(std::ostream& out, const SpectralMeasure& m, const std::vector<SweepRow>& rows,
                            const SweepOptions& opts) {
  const double root_w2 = std::sqrt(m.moment(2));
  const double scale = opts.normalized ? 1.0 / root_w2 : 1.0;
  out << "# " << kSweepSchema << "; temperatures " << (opts.normalized ? "divided by sqrt(<omega^2>)" : "raw")
      << "; tc_flat, tc_sharp proven; tc_tilde conjectured; tc_n4, tc_converged rank-N lower bounds\n";
  out << "lambda,tc_flat,tc_sharp,tc_tilde,tc_n4,tc_converged";
  if (opts.inverse_sqrt_x) out << ",inv_sqrt_lambda,y_flat,y_sharp,y_tilde,y_n4,y_converged";
  out << "\n";
  auto scaled = [](const std::optional<double>& v, double s) { return v ? std::optional<double>(*v * s) : std::nullopt; };
  for (const SweepRow& r : rows) {
    out << io::format_number(r.lambda) << ',' << io::format_optional(scaled(r.tc_flat, scale)) << ','
        << io::format_number(r.tc_sharp * scale) << ',' << io::format_number(r.tc_tilde * scale) << ','
        << io::format_optional(scaled(r.tc_n4, scale)) << ',' << io::format_optional(scaled(r.tc_converged, scale));
    if (opts.inverse_sqrt_x) {
      const double y = 1.0 / (root_w2 * std::sqrt(r.lambda));
      out << ',' << io::format_number(1.0 / std::sqrt(r.lambda)) << ',' << io::format_optional(scaled(r.tc_flat, y))
          << ',' << io::format_number(r.tc_sharp * y) << ',' << io::format_number(r.tc_tilde * y) << ','
          << io::format_optional(scaled(r.tc_n4, y)) << ',' << io::format_optional(scaled(r.tc_converged, y));
    }
    out << "\n";
  }
}

}  // namespace eliashberg
