// eliashberg_tc: bounds on the critical coupling and critical temperature.
//
// Exit codes: 0 ok, 1 verify failure, 2 invalid input, 3 numerical failure,
// 4 I/O failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eliashberg/eliashberg.hpp"
#include "eliashberg/invariants.hpp"
#include "eliashberg/io/format.hpp"
#include "eliashberg/io/measure_json.hpp"
#include "eliashberg/io/report.hpp"
#include "eliashberg/sweep.hpp"

namespace {

using namespace eliashberg;
using io::format_number;

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalid = 2, kNumerical = 3, kIo = 4 };

SpectralMeasure load(const std::string& path) {
  SpectralMeasure m = io::load_measure(path);
  for (const std::string& w : m.warnings()) std::cerr << "warning: " << w << "\n";
  return m;
}

void row(const std::string& name, double value, const std::string& label) {
  std::string n = name;
  n.resize(14, ' ');
  std::string v = format_number(value);
  v.resize(20, ' ');
  std::cout << n << v << label << "\n";
}

int cmd_bounds(const std::string& file, double temperature, int max_n) {
  if (!(temperature > 0.0)) throw DomainError("--temperature must be positive");
  if (max_n < 1) throw DomainError("--max-n must be at least 1");
  const SpectralMeasure m = load(file);
  const Temperature t{temperature};
  std::cout << "measure       " << to_string(m.kind()) << ", Omega-bar = " << format_number(m.support_bound())
            << ", <omega^2> = " << format_number(m.moment(2)) << "\n";
  std::cout << "temperature   " << format_number(t.value) << ", <varpi^2> = " << format_number(m.mean_varpi_squared(t))
            << ", T_* = " << format_number(t_star(m)) << "\n";
  double k[5] = {};
  for (int n = 1; n <= 4; ++n) {
    k[n] = k_closed_form(m, t, n).k_value;
    row("k^(" + std::to_string(n) + ")", k[n], "lower bound on k, proven (closed form)");
  }
  const double kn = k_numeric(m, t, max_n).k_value;
  row("k^(" + std::to_string(max_n) + ")", kn, "lower bound on k, proven (eigensolver)");
  const double ks = k_star(m, t);
  const double kh = k_sharp(m, t);
  row("k*", ks, "upper bound on k, proven");
  row("k#", kh, "upper bound on k, proven");
  for (int n = 1; n <= 4; ++n) row("Lambda^(" + std::to_string(n) + ")", 1.0 / k[n], "upper bound on Lambda, proven");
  row("Lambda^(" + std::to_string(max_n) + ")", 1.0 / kn, "upper bound on Lambda, proven");
  row("1/k*", 1.0 / ks, "lower bound on Lambda, proven");
  row("1/k#", 1.0 / kh, "lower bound on Lambda, proven");
  return kOk;
}

int cmd_tc(const std::string& file, double lambda, std::optional<int> n, std::optional<double> converge, bool as_json) {
  const SpectralMeasure m = load(file);
  const TcReport report = n ? TcReport{lambda, m, {tc_n(m, lambda, *n)}, tc_flat(m, lambda), tc_sharp(m, lambda),
                                         tc_tilde(m, lambda), lambda_star_bounds(m), std::nullopt, std::nullopt, 0.0}
                             : tc_converged(m, lambda, converge.value_or(1e-6));
  if (as_json)
    std::cout << io::to_json(report).dump(2) << "\n";
  else
    io::write_text(std::cout, report);
  return kOk;
}

int cmd_sweep(const std::string& file, const SweepOptions& opts, const std::string& out_path) {
  const SpectralMeasure m = load(file);
  const std::vector<SweepRow> rows = compute_sweep(m, opts);
  std::ostringstream csv;
  write_sweep_csv(csv, m, rows, opts);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + out_path + "' for writing");
  out << csv.str();
  out.close();
  if (!out) throw IoError("failed writing '" + out_path + "'");
  return kOk;
}

int cmd_gamma(double gamma, int n) {
  const EigenPair top = g_top(gamma, n);
  std::cout << "g^(N)(gamma)                  " << format_number(top.value) << "\n";
  std::cout << "(1/2pi) g^(N)(gamma)^(1/gamma) "
            << format_number(std::pow(top.value, 1.0 / gamma) / (2.0 * std::numbers::pi)) << "\n";
  if (gamma == 2.0) std::cout << "<G^(N)(4)>_2                  " << format_number(gamma_asymptotics(n).expected_g4) << "\n";
  return kOk;
}

int cmd_verify(bool fast, const std::string& fault) {
  verify::AssembleModel model = verify::reference_assembly;
  if (fault == "k3-sign")
    model = verify::k3_sign_flipped_assembly;
  else if (!fault.empty())
    throw DomainError("unknown fault '" + fault + "'");
  const auto start = std::chrono::steady_clock::now();
  const auto results = verify::run_all(verify::make_context(fast, model), [](const verify::CheckResult& r) {
    const char* status = r.passed ? "PASS" : (r.blocking ? "FAIL" : "NOTE");
    std::printf("%s  %-44s %7.2fs", status, r.name.c_str(), r.seconds);
    if (!r.passed) std::printf("  %s", r.witness.c_str());
    std::printf("\n");
    std::fflush(stdout);
  });
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = verify::all_blocking_passed(results);
  std::printf("%s: %zu checks in %.1fs\n", ok ? "all invariants hold" : "invariant violations found", results.size(),
              total);
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigorous bounds on the Eliashberg critical coupling and critical temperature"};
  app.require_subcommand(1);

  std::string file;
  double temperature = 0.0;
  int max_n = 64;
  auto* bounds = app.add_subcommand("bounds", "bounds on k(P,T) and Lambda(P,T) at one temperature");
  bounds->add_option("measure", file, "measure JSON file")->required();
  bounds->add_option("--temperature,-T", temperature, "temperature T > 0")->required();
  bounds->add_option("--max-n", max_n, "rank of the numeric truncation")->capture_default_str();

  double lambda = 0.0;
  std::optional<int> tc_rank;
  std::optional<double> converge;
  bool as_json = false;
  auto* tc = app.add_subcommand("tc", "critical temperature ladder and explicit bounds");
  tc->add_option("measure", file, "measure JSON file")->required();
  tc->add_option("--coupling,-l", lambda, "coupling lambda > 0")->required();
  auto* n_opt = tc->add_option("--n", tc_rank, "single truncation rank N");
  tc->add_option("--converge", converge, "relative tolerance of the N ladder (default 1e-6)")->excludes(n_opt);
  tc->add_flag("--json", as_json, "print the report as JSON");

  SweepOptions sweep_opts;
  std::string out_path;
  double sweep_tol = 1e-6;
  auto* sweep = app.add_subcommand("sweep", "bounds over a logarithmic lambda grid, as CSV");
  sweep->add_option("measure", file, "measure JSON file")->required();
  sweep->add_option("--lambda-min", sweep_opts.lambda_min)->required();
  sweep->add_option("--lambda-max", sweep_opts.lambda_max)->required();
  sweep->add_option("--points", sweep_opts.points)->capture_default_str();
  sweep->add_option("--out,-o", out_path, "output CSV path")->required();
  sweep->add_flag("--normalized", sweep_opts.normalized, "divide temperatures by sqrt(<omega^2>)");
  sweep->add_flag("--inverse-sqrt-x", sweep_opts.inverse_sqrt_x, "add 1/sqrt(lambda) and T/sqrt(<omega^2> lambda)");
  sweep->add_option("--converge", sweep_tol, "relative tolerance of the tc_converged column")->capture_default_str();
  sweep->add_option("--threads", sweep_opts.threads, "worker threads (0 = all cores)");

  double gamma = 2.0;
  int gamma_n = 256;
  auto* gam = app.add_subcommand("gamma", "top eigenvalue of the gamma-model truncation");
  gam->add_option("--gamma", gamma)->required();
  gam->add_option("--n", gamma_n)->required();

  bool fast = false;
  std::string fault;
  auto* ver = app.add_subcommand("verify", "run the invariant suite");
  ver->add_flag("--fast", fast, "reduced grids");
  ver->add_option("--inject-fault", fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*bounds) return cmd_bounds(file, temperature, max_n);
    if (*tc) return cmd_tc(file, lambda, tc_rank, converge, as_json);
    if (*sweep) {
      sweep_opts.converge_tol = sweep_tol;
      return cmd_sweep(file, sweep_opts, out_path);
    }
    if (*gam) return cmd_gamma(gamma, gamma_n);
    if (*ver) return cmd_verify(fast, fault);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const Error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}
