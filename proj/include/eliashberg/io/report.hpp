#pragma once

#include <cmath>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "eliashberg/io/format.hpp"
#include "eliashberg/io/measure_json.hpp"
#include "eliashberg/operator.hpp"
#include "eliashberg/tc_solver.hpp"

namespace eliashberg::io {

inline std::string ladder_label(TcStatus s) {
  switch (s) {
    case TcStatus::proven:
      return "proven lower bound";
    case TcStatus::heuristic:
      return "heuristic lower bound (below T_*)";
    case TcStatus::undefined:
      break;
  }
  return "undefined";
}

inline const TcEntry* find_rung(const TcReport& r, int n) {
  for (const TcEntry& e : r.ladder)
    if (e.n == n) return &e;
  return nullptr;
}

inline json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json to_json(const TcReport& r) {
  json ladder = json::array();
  for (const TcEntry& e : r.ladder) {
    ladder.push_back({{"n", e.n},
                      {"value", optional_json(e.value)},
                      {"status", to_string(e.status)},
                      {"lambda_n", k_limit_T0(e.n).lambda_n}});
  }
  json j = {
      {"lambda", r.lambda},
      {"measure", to_json(r.measure)},
      {"support_bound", r.measure.support_bound()},
      {"mean_omega2", r.measure.moment(2)},
      {"t_star", t_star(r.measure)},
      {"tc_ladder", ladder},
      {"tc_flat", {{"value", optional_json(r.tc_flat)}, {"label", "proven lower bound"}}},
      {"tc_sharp", {{"value", r.tc_sharp}, {"label", "proven upper bound"}}},
      {"tc_tilde", {{"value", r.tc_tilde}, {"label", "conjectured upper bound"}}},
      {"lambda_star_bound", {{"strong", r.lambda_star.strong}, {"easy", r.lambda_star.easy},
                             {"label", "proven upper estimates of lambda_*"}}},
      {"converged_tc", optional_json(r.converged_tc)},
      {"converged_n", r.converged_n ? json(*r.converged_n) : json(nullptr)},
      {"tolerance", r.tolerance},
  };
  if (r.converged_n) {
    const TcEntry* last = find_rung(r, *r.converged_n);
    j["converged_status"] = to_string(last ? last->status : TcStatus::undefined);
  }
  return j;
}

inline void write_text(std::ostream& out, const TcReport& r) {
  const auto& m = r.measure;
  out << "measure            " << to_string(m.kind()) << ", Omega-bar = " << format_number(m.support_bound())
      << ", <omega^2> = " << format_number(m.moment(2)) << "\n";
  out << "coupling lambda    " << format_number(r.lambda) << "\n";
  out << "T_*                " << format_number(t_star(m)) << "  (monotonicity proven above)\n";
  out << "T_c ladder (rank-N lower bounds, inverse of Lambda^(N)):\n";
  for (const TcEntry& e : r.ladder) {
    std::string n = "N=" + std::to_string(e.n);
    n.resize(8, ' ');
    out << "  " << n;
    if (e.value) {
      std::string v = format_number(*e.value);
      v.resize(20, ' ');
      out << v << ladder_label(e.status) << "\n";
    } else {
      out << "undefined (lambda <= lambda_" << e.n << " = " << format_number(k_limit_T0(e.n).lambda_n) << ")\n";
    }
  }
  auto line = [&out](const std::string& name, const std::optional<double>& v, const std::string& label) {
    std::string padded = name;
    padded.resize(19, ' ');
    std::string value = v ? format_number(*v) : std::string("undefined");
    value.resize(20, ' ');
    out << padded << value << label << "\n";
  };
  line("T_c-flat", r.tc_flat, r.tc_flat ? "proven lower bound" : "proven lower bound (needs lambda > Omega-bar^2/<omega^2>)");
  line("T_c-sharp", r.tc_sharp, "proven upper bound");
  line("T_c-tilde", r.tc_tilde, "conjectured upper bound");
  if (r.converged_n) {
    const TcEntry* last = find_rung(r, *r.converged_n);
    line("T_c converged", r.converged_tc,
         ladder_label(last ? last->status : TcStatus::undefined) + ", N=" + std::to_string(*r.converged_n) +
             ", rel tol " + format_number(r.tolerance));
  } else if (r.tolerance > 0.0) {
    line("T_c converged", std::nullopt, "not converged below the N cap");
  }
  line("lambda_* <", r.lambda_star.strong, "proven upper estimate, 1/k^(4)(P,T_*)");
  line("lambda_* <=", r.lambda_star.easy, "proven upper estimate, (3/2) Omega-bar^2/<omega^2>");
}

}  // namespace eliashberg::io
