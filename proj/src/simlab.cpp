#include "singlet/simlab.hpp"

#include "singlet/rng.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

namespace singlet {

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

}  // namespace

Scenario Scenario::singlet() { return Scenario{}; }

Scenario Scenario::intercept_resend(double psi, double beta_phase) {
  Scenario s;
  s.kind = Kind::InterceptResend;
  s.par1 = psi;
  s.par2 = beta_phase;
  s.label = "intercept";
  return s;
}

Scenario Scenario::transformed(double epsilon, double phi_plus_weight) {
  Scenario s;
  s.kind = Kind::Transformed;
  s.par1 = epsilon;
  s.par2 = phi_plus_weight;
  s.label = "transform";
  return s;
}

Scenario Scenario::werner(double delta) {
  Scenario s;
  s.kind = Kind::WernerNoise;
  s.par1 = delta;
  s.label = "werner";
  return s;
}

Scenario Scenario::lhv(std::shared_ptr<const LhvModel> model, std::string label) {
  Scenario s;
  s.kind = Kind::Lhv;
  s.model = std::move(model);
  s.label = std::move(label);
  return s;
}

TwoQubitState Scenario::state() const {
  switch (kind) {
    case Kind::Singlet:
      return bell_state(BellLabel::PsiMinus);
    case Kind::InterceptResend:
      return intercept_resend_state(par1, par2);
    case Kind::Transformed:
      return transformed_state(par1, par2);
    case Kind::WernerNoise:
      return werner_state(par1);
    case Kind::Lhv:
      break;
  }
  throw std::logic_error("Scenario::state: LHV scenario has no density matrix");
}

double scenario_expectation(const Scenario& scenario, const SchemeConfig& config) {
  if (scenario.is_lhv()) {
    return config.scheme == Scheme::BC
               ? lhv_bc_expectation(*scenario.model, config.n_param)
               : lhv_rm_expectation(*scenario.model, config.theta_sep);
  }
  const TwoQubitState rho = scenario.state();
  return config.scheme == Scheme::BC ? bc_expectation(rho, config.n_param)
                                     : rm_expectation(rho, config.theta_sep);
}

TestOutcome run_single_test(const Scenario& scenario, const SchemeConfig& config,
                            std::uint64_t seed) {
  if (config.n_samples < 1) {
    throw std::domain_error("run_single_test: n_samples must be >= 1");
  }
  std::mt19937_64 rng(seed);
  long successes = 0;

  if (scenario.is_lhv()) {
    const LhvModel& model = *scenario.model;
    if (config.scheme == Scheme::BC) {
      const BcMeasurementSet set = bc_set(config.n_param);
      for (long i = 0; i < config.n_samples; ++i) {
        if (lhv_bc_draw(rng, model, set) > 0) ++successes;
      }
    } else {
      for (long i = 0; i < config.n_samples; ++i) {
        if (lhv_rm_draw(rng, model, config.theta_sep) > 0) ++successes;
      }
    }
  } else {
    const TwoQubitState rho = scenario.state();
    if (config.scheme == Scheme::BC) {
      const BcMeasurementSet set = bc_set(config.n_param);
      for (long i = 0; i < config.n_samples; ++i) {
        if (bc_draw(rng, rho, set) > 0) ++successes;
      }
    } else {
      for (long i = 0; i < config.n_samples; ++i) {
        if (rm_draw(rng, rho, config.theta_sep) > 0) ++successes;
      }
    }
  }

  const Quantile quantile =
      binom_upper_quantile(config.alpha_size, config.n_samples, config.null_p0());
  TestOutcome outcome;
  outcome.success_count = successes;
  outcome.statistic = (2.0 * successes - config.n_samples) / config.n_samples;
  outcome.quantile_z = quantile.z;
  outcome.achieved_size = quantile.achieved_size;
  outcome.rejected = successes > quantile.z;
  return outcome;
}

std::vector<long> default_n_grid() {
  constexpr int kPoints = 16;
  constexpr double kLo = 50.0;
  constexpr double kHi = 5000.0;
  std::vector<long> grid;
  grid.reserve(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    const double t = static_cast<double>(i) / (kPoints - 1);
    const long n = std::lround(kLo * std::pow(kHi / kLo, t));
    if (grid.empty() || n > grid.back()) grid.push_back(n);
  }
  return grid;
}

std::vector<PowerRecord> power_curve(const Scenario& scenario, const SchemeConfig& base,
                                     std::span<const long> n_grid, int trials,
                                     std::uint64_t master_seed, int threads) {
  if (trials < 1) throw std::domain_error("power_curve: trials must be >= 1");
  if (n_grid.empty()) throw std::domain_error("power_curve: empty n grid");

  const double expectation = scenario_expectation(scenario, base);
  const double p_alt = (1.0 + expectation) / 2.0;
  const double p0 = base.null_p0();
  const std::uint64_t scheme_tag = base.scheme == Scheme::BC ? 1 : 2;

  auto run_point = [&](std::size_t grid_index) {
    SchemeConfig config = base;
    config.n_samples = n_grid[grid_index];
    int rejections = 0;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t seed = derive_seed(master_seed, scheme_tag, grid_index, t);
      if (run_single_test(scenario, config, seed).rejected) ++rejections;
    }
    PowerRecord record;
    record.n = config.n_samples;
    record.scheme = base.scheme;
    record.empirical_rejection = static_cast<double>(rejections) / trials;
    record.exact_power = exact_power_at_null(config.n_samples, config.alpha_size, p0, p_alt);
    record.asymptotic_power =
        asymptotic_power_at_null(config.n_samples, config.alpha_size, p0, p_alt);
    record.trials = trials;
    record.master_seed = master_seed;
    const double band =
        4.0 * std::sqrt(record.exact_power * (1.0 - record.exact_power) / trials);
    record.within_band = std::abs(record.empirical_rejection - record.exact_power) <= band;
    return record;
  };

  const int workers = std::min<int>(resolve_threads(threads), n_grid.size());
  std::vector<PowerRecord> records(n_grid.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_grid.size(); ++i) records[i] = run_point(i);
    return records;
  }
  std::vector<std::future<void>> jobs;
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next.fetch_add(1); i < n_grid.size(); i = next.fetch_add(1)) {
        records[i] = run_point(i);
      }
    }));
  }
  for (auto& job : jobs) job.get();
  return records;
}

std::vector<ComparisonRow> scheme_comparison_table(const std::vector<Scenario>& scenarios,
                                                   int n_param) {
  if (n_param < 2) throw std::domain_error("scheme_comparison_table: N must be >= 2");
  const double theta = M_PI / (2.0 * n_param);
  std::vector<ComparisonRow> rows;
  rows.reserve(scenarios.size());
  for (const Scenario& s : scenarios) {
    SchemeConfig bc{Scheme::BC, n_param, theta, 0.01, 1};
    SchemeConfig rm{Scheme::RM, n_param, theta, 0.01, 1};
    ComparisonRow row;
    row.scenario = s.label;
    row.par1 = s.par1;
    row.par2 = s.par2;
    row.e_bc = scenario_expectation(s, bc);
    row.e_rm = scenario_expectation(s, rm);
    row.p = (1.0 + row.e_bc) / 2.0;
    row.q = (1.0 + row.e_rm) / 2.0;
    if (std::abs(row.p - row.q) <= 1e-12) {
      row.verdict = "equal";
    } else {
      row.verdict = row.p > row.q ? "bc" : "rm";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace singlet
