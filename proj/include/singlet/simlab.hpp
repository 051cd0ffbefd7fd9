#pragma once

#include "singlet/adversary.hpp"
#include "singlet/correlations.hpp"
#include "singlet/hypotest.hpp"
#include "singlet/qstate.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace singlet {

enum class Scheme { BC, RM };

/// Parameters of one hypothesis test: which scheme, its measurement
/// parameter, the test size and the number of samples. In the paired
/// comparison mode theta_sep = pi/2N, so both null distributions coincide.
struct SchemeConfig {
  Scheme scheme = Scheme::BC;
  int n_param = 2;          // BC parameter N >= 2 (also sets theta in paired mode)
  double theta_sep = M_PI / 4.0;  // RM separation angle
  double alpha_size = 0.01;
  long n_samples = 100;

  double null_p0() const {
    return scheme == Scheme::BC ? bc_null_p0(n_param) : rm_null_p0(theta_sep);
  }
};

/// Source under test: either a quantum state scenario or an LHV model.
struct Scenario {
  enum class Kind { Singlet, InterceptResend, Transformed, WernerNoise, Lhv };

  Kind kind = Kind::Singlet;
  double par1 = 0.0;  // psi | epsilon | delta
  double par2 = 0.0;  // beta_phase | phi_plus_weight
  std::shared_ptr<const LhvModel> model;
  std::string label = "singlet";

  static Scenario singlet();
  static Scenario intercept_resend(double psi, double beta_phase);
  static Scenario transformed(double epsilon, double phi_plus_weight);
  static Scenario werner(double delta);
  static Scenario lhv(std::shared_ptr<const LhvModel> model, std::string label);

  bool is_lhv() const { return kind == Kind::Lhv; }

  /// Density matrix of a quantum scenario; throws for LHV scenarios.
  TwoQubitState state() const;
};

/// Analytic sample expectation of the scenario under the given scheme.
double scenario_expectation(const Scenario& scenario, const SchemeConfig& config);

struct TestOutcome {
  double statistic = 0.0;    // sample mean in [-1, 1]
  long success_count = 0;    // number of +1 samples
  long quantile_z = 0;
  bool rejected = false;
  double achieved_size = 0.0;
};

/// Runs one seeded hypothesis test: draws n samples, forms the sample mean
/// and compares the success count against the critical region.
TestOutcome run_single_test(const Scenario& scenario, const SchemeConfig& config,
                            std::uint64_t seed);

struct PowerRecord {
  long n = 0;
  Scheme scheme = Scheme::BC;
  double empirical_rejection = 0.0;
  double exact_power = 0.0;
  double asymptotic_power = 0.0;
  int trials = 0;
  std::uint64_t master_seed = 0;
  bool within_band = true;  // |empirical - exact| <= 4 sqrt(exact(1-exact)/trials)
};

/// 16 log-spaced sample counts in [50, 5000].
std::vector<long> default_n_grid();

/// One point per n: `trials` independent tests with per-trial seeds derived
/// from master_seed, plus the exact and asymptotic theoretical power. The
/// result is identical for any worker thread count.
std::vector<PowerRecord> power_curve(const Scenario& scenario, const SchemeConfig& base,
                                     std::span<const long> n_grid, int trials,
                                     std::uint64_t master_seed, int threads = 0);

struct ComparisonRow {
  std::string scenario;
  double par1 = 0.0;
  double par2 = 0.0;
  double e_bc = 0.0;  // E[C-hat]
  double e_rm = 0.0;  // E[O-hat] at theta = pi/2N
  double p = 0.0;
  double q = 0.0;
  std::string verdict;  // "bc", "rm" or "equal"
};

/// Analytic comparison rows at the paired parameter theta = pi/2N.
std::vector<ComparisonRow> scheme_comparison_table(const std::vector<Scenario>& scenarios,
                                                   int n_param);

}  // namespace singlet
