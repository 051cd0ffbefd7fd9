#include "singlet/cli_app.hpp"

#include "singlet/adversary.hpp"
#include "singlet/hypotest.hpp"
#include "singlet/rng.hpp"
#include "singlet/simlab.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace singlet {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;

std::string fmt9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

int write_text(const std::string& path, const std::string& text, std::ostream& out,
               std::ostream& err) {
  if (path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file '" << path << "'\n";
    return kExitUsage;
  }
  file << text;
  return kExitOk;
}

struct ScenarioFlags {
  std::string name = "singlet";
  double psi = 0.0;
  double beta = 0.0;
  double epsilon = 0.0;
  double phi_plus = 0.0;
  double delta = 0.0;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& flags) {
  cmd->add_option("--scenario", flags.name, "Source under test")
      ->check(CLI::IsMember({"singlet", "intercept", "transform", "werner", "lhv-bell"}))
      ->required();
  cmd->add_option("--psi", flags.psi, "Intercept basis polar half-angle");
  cmd->add_option("--beta", flags.beta, "Intercept basis phase");
  cmd->add_option("--epsilon", flags.epsilon, "Transform: 1 - singlet fidelity");
  cmd->add_option("--phi-plus", flags.phi_plus, "Transform: PhiPlus fidelity");
  cmd->add_option("--delta", flags.delta, "Werner noise strength");
}

Scenario make_scenario(const ScenarioFlags& flags) {
  if (flags.name == "singlet") return Scenario::singlet();
  if (flags.name == "intercept") return Scenario::intercept_resend(flags.psi, flags.beta);
  if (flags.name == "transform") return Scenario::transformed(flags.epsilon, flags.phi_plus);
  if (flags.name == "werner") return Scenario::werner(flags.delta);
  return Scenario::lhv(std::make_shared<LhvModel>(bell_hemisphere_model()), "lhv-bell");
}

// ---------------------------------------------------------------------------
// tables

int cmd_tables(int n_param, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  std::vector<Scenario> scenarios = {
      Scenario::singlet(),
      Scenario::intercept_resend(0.0, 0.0),
      Scenario::intercept_resend(M_PI / 8.0, 0.0),
      Scenario::transformed(0.1, 0.0),
      Scenario::transformed(0.1, 0.1 / 3.0),
      Scenario::transformed(0.1, 0.1),
      Scenario::werner(0.2),
      Scenario::werner(0.4),
      Scenario::werner(0.8),
  };
  std::ostringstream csv;
  csv << "scenario,par1,par2,e_bc,e_rm,p,q,verdict\n";
  for (const ComparisonRow& row : scheme_comparison_table(scenarios, n_param)) {
    csv << row.scenario << ',' << fmt9(row.par1) << ',' << fmt9(row.par2) << ','
        << fmt9(row.e_bc) << ',' << fmt9(row.e_rm) << ',' << fmt9(row.p) << ','
        << fmt9(row.q) << ',' << row.verdict << '\n';
  }
  return write_text(out_path, csv.str(), out, err);
}

// ---------------------------------------------------------------------------
// power

int cmd_power(const ScenarioFlags& flags, const std::string& scheme_arg, int n_param,
              std::optional<double> theta, const std::string& theta_policy, double alpha,
              int trials, long samples, std::uint64_t seed, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  const Scenario scenario = make_scenario(flags);

  double theta_sep = M_PI / (2.0 * n_param);
  if (theta.has_value()) {
    theta_sep = *theta;
  } else if (theta_policy == "arcsin2pi") {
    theta_sep = optimal_bell_theta();
  }

  std::vector<long> grid;
  if (samples > 0) {
    grid.push_back(samples);
  } else {
    grid = default_n_grid();
  }

  std::vector<Scheme> schemes;
  if (scheme_arg == "bc" || scheme_arg == "both") schemes.push_back(Scheme::BC);
  if (scheme_arg == "rm" || scheme_arg == "both") schemes.push_back(Scheme::RM);

  std::ostringstream csv;
  csv << "scheme,n,empirical,exact,asymptotic,trials,seed\n";
  for (Scheme scheme : schemes) {
    SchemeConfig config{scheme, n_param, theta_sep, alpha, grid.front()};
    for (const PowerRecord& r : power_curve(scenario, config, grid, trials, seed)) {
      csv << (scheme == Scheme::BC ? "bc" : "rm") << ',' << r.n << ','
          << fmt9(r.empirical_rejection) << ',' << fmt9(r.exact_power) << ','
          << fmt9(r.asymptotic_power) << ',' << r.trials << ',' << r.master_seed << '\n';
    }
  }
  return write_text(out_path, csv.str(), out, err);
}

// ---------------------------------------------------------------------------
// gaps

int cmd_gaps(int max_n, int theta_points, const std::string& out_path, std::ostream& out,
             std::ostream& err) {
  std::ostringstream csv;
  csv << "quantity,param,value\n";
  for (int n = 2; n <= max_n; ++n) {
    csv << "D," << n << ',' << fmt9(lhv_gap_D(n)) << '\n';
  }
  for (int i = 0; i < theta_points; ++i) {
    const double theta = (M_PI / 2.0) * i / (theta_points - 1);
    csv << "D_tilde," << fmt9(theta) << ',' << fmt9(bell_model_gap(theta)) << '\n';
  }
  const double theta_star = optimal_bell_theta();
  csv << "theta_star," << fmt9(theta_star) << ',' << fmt9(bell_model_gap(theta_star)) << '\n';
  for (int n = 2; n <= max_n; ++n) {
    const DeltaThreshold t = delta_threshold(n);
    csv << "delta_threshold," << n << ',' << fmt9(t.threshold) << '\n';
    csv << "rm_validity_cap," << n << ',' << fmt9(t.rm_validity_cap) << '\n';
  }
  return write_text(out_path, csv.str(), out, err);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

int cmd_verify(int resolution, std::uint64_t seed, bool inject_fault,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::vector<VerifyCheck> checks;

  {
    // Signed-average route vs closed form for E[C-hat].
    VerifyCheck check{"bc_summation_vs_closed_form", 0.0, 1e-10, false};
    std::mt19937_64 rng(derive_seed(seed, 11));
    const double fault = inject_fault ? 1e-6 : 0.0;
    for (int i = 0; i < 100; ++i) {
      const TwoQubitState rho = random_density(rng);
      for (int n = 2; n <= 8; ++n) {
        const double dev =
            std::abs(bc_expectation(rho, n) + fault - bc_expectation_summed(rho, n));
        check.max_deviation = std::max(check.max_deviation, dev);
      }
    }
    check.passed = check.max_deviation <= check.tolerance;
    checks.push_back(check);
  }

  {
    // Sphere-average quadrature vs closed form for E[O-hat].
    VerifyCheck check{"rm_numeric_vs_closed_form", 0.0, 1e-3, false};
    std::mt19937_64 rng(derive_seed(seed, 12));
    for (int i = 0; i < 3; ++i) {
      const TwoQubitState rho = random_density(rng);
      for (double theta : {M_PI / 8.0, M_PI / 4.0, 3.0 * M_PI / 8.0}) {
        const double dev = std::abs(rm_expectation(rho, theta) -
                                    rm_expectation_numeric(rho, theta, resolution));
        check.max_deviation = std::max(check.max_deviation, dev);
      }
    }
    check.passed = check.max_deviation <= check.tolerance;
    checks.push_back(check);
  }

  {
    // Haar-averaged local rotations vs the analytic twirl.
    VerifyCheck check{"monte_carlo_twirl", 0.0, 0.05, false};
    std::mt19937_64 rng(derive_seed(seed, 13));
    for (int i = 0; i < 2; ++i) {
      const TwoQubitState rho = random_density(rng);
      Mat4c avg = Mat4c::Zero();
      const int draws = 10000;
      for (int k = 0; k < draws; ++k) {
        const Mat2c u = haar_su2(rng);
        avg += apply_local(rho, u, u).rho();
      }
      avg /= draws;
      const double dev = (avg - twirl_analytic(rho).rho()).cwiseAbs().maxCoeff();
      check.max_deviation = std::max(check.max_deviation, dev);
    }
    check.passed = check.max_deviation <= check.tolerance;
    checks.push_back(check);
  }

  bool all_passed = true;
  std::ostringstream csv;
  csv << "check,max_deviation,tolerance,status\n";
  for (const VerifyCheck& check : checks) {
    all_passed = all_passed && check.passed;
    out << (check.passed ? "[PASS] " : "[FAIL] ") << check.name
        << ": max deviation " << fmt9(check.max_deviation) << " (tolerance "
        << fmt9(check.tolerance) << ")\n";
    csv << check.name << ',' << fmt9(check.max_deviation) << ',' << fmt9(check.tolerance)
        << ',' << (check.passed ? "pass" : "fail") << '\n';
  }
  if (!out_path.empty()) {
    const int rc = write_text(out_path, csv.str(), out, err);
    if (rc != kExitOk) return rc;
  }
  return all_passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Singlet verification toolkit: Braunstein-Caves and "
               "random-measurement tests as hypothesis tests"};
  app.require_subcommand(1);

  // tables
  auto* tables = app.add_subcommand("tables", "Analytic expectation comparison table");
  int tables_n = 2;
  std::string tables_out;
  tables->add_option("--n-param", tables_n, "Braunstein-Caves parameter N")
      ->check(CLI::Range(2, 1000000));
  tables->add_option("--out", tables_out, "Output CSV path (default: stdout)");

  // power
  auto* power = app.add_subcommand("power", "Empirical and theoretical power curves");
  ScenarioFlags power_scenario;
  add_scenario_flags(power, power_scenario);
  std::string power_scheme = "both";
  int power_n = 2;
  std::optional<double> power_theta;
  std::string power_policy = "pi-over-2N";
  double power_alpha = 0.01;
  int power_trials = 400;
  long power_samples = 0;
  std::uint64_t power_seed = kDefaultSeed;
  std::string power_out;
  power->add_option("--scheme", power_scheme, "Which scheme(s) to run")
      ->check(CLI::IsMember({"bc", "rm", "both"}));
  power->add_option("--n-param", power_n, "Braunstein-Caves parameter N")
      ->check(CLI::Range(2, 1000000));
  auto* theta_opt = power->add_option("--theta", power_theta, "RM separation angle (radians)");
  power->add_option("--theta-policy", power_policy, "RM angle rule when --theta is absent")
      ->check(CLI::IsMember({"pi-over-2N", "arcsin2pi"}))
      ->excludes(theta_opt);
  power->add_option("--alpha", power_alpha, "Test size")
      ->check(CLI::Range(1e-9, 0.999999999));
  power->add_option("--trials", power_trials, "Simulated tests per sample count")
      ->check(CLI::Range(1, 100000000));
  power->add_option("--samples", power_samples,
                    "Fixed sample count n (default: 16-point log grid in [50, 5000])")
      ->check(CLI::Range(1L, 100000000L));
  power->add_option("--seed", power_seed, "Master seed");
  power->add_option("--out", power_out, "Output CSV path (default: stdout)");

  // gaps
  auto* gaps = app.add_subcommand("gaps", "LHV gaps and calibration-error thresholds");
  int gaps_max_n = 100;
  int gaps_theta_points = 25;
  std::string gaps_out;
  gaps->add_option("--max-n", gaps_max_n, "Largest N for D(N) and thresholds")
      ->check(CLI::Range(2, 1000000));
  gaps->add_option("--theta-points", gaps_theta_points, "Grid size for the Bell-model gap")
      ->check(CLI::Range(2, 1000000));
  gaps->add_option("--out", gaps_out, "Output CSV path (default: stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run internal oracle cross-checks");
  int verify_resolution = 200;
  std::uint64_t verify_seed = kDefaultSeed;
  std::string verify_out;
  bool verify_fault = false;
  verify->add_option("--resolution", verify_resolution, "Quadrature nodes per axis")
      ->check(CLI::Range(8, 100000));
  verify->add_option("--seed", verify_seed, "Master seed");
  verify->add_option("--out", verify_out, "CSV summary path");
  verify->add_flag("--inject-fault", verify_fault, "Self-test: force a check failure")
      ->group("");  // hidden

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (tables->parsed()) return cmd_tables(tables_n, tables_out, out, err);
    if (power->parsed()) {
      return cmd_power(power_scenario, power_scheme, power_n, power_theta, power_policy,
                       power_alpha, power_trials, power_samples, power_seed, power_out,
                       out, err);
    }
    if (gaps->parsed()) return cmd_gaps(gaps_max_n, gaps_theta_points, gaps_out, out, err);
    if (verify->parsed()) {
      return cmd_verify(verify_resolution, verify_seed, verify_fault, verify_out, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "error: no subcommand given\n";
  return kExitUsage;
}

}  // namespace singlet
