#include "singlet/hypotest.hpp"

#include "singlet/correlations.hpp"

#include <cmath>
#include <stdexcept>

namespace singlet {

namespace {

double log_pmf(long k, long n, double p) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
         k * std::log(p) + (n - k) * std::log1p(-p);
}

}  // namespace

BernoulliParams bernoulli_params(const TwoQubitState& rho, int n_param) {
  if (n_param < 2) throw std::domain_error("bernoulli_params: N must be >= 2");
  const double c = std::cos(M_PI / (2.0 * n_param));
  const double f_phi = fidelity(rho, BellLabel::PhiPlus);
  const double f_psi = fidelity(rho, BellLabel::PsiMinus);
  BernoulliParams out;
  out.p = 0.5 + 0.5 * c * (f_phi - f_psi);
  out.q = 0.5 + 0.5 * c * (1.0 / 3.0 - 4.0 / 3.0 * f_psi);
  return out;
}

double bc_null_p0(int n_param) {
  if (n_param < 2) throw std::domain_error("bc_null_p0: N must be >= 2");
  return 0.5 - 0.5 * std::cos(M_PI / (2.0 * n_param));
}

double rm_null_p0(double theta_sep) { return 0.5 - 0.5 * std::cos(theta_sep); }

double binom_tail_above(long z, long n, double p) {
  if (n < 1) throw std::domain_error("binom_tail_above: n must be >= 1");
  if (z >= n) return 0.0;
  if (z < 0) return 1.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  // Sum pmf from k = n down to z+1 with Neumaier compensation; terms grow
  // toward the mode, keeping the accumulation well conditioned.
  double sum = 0.0;
  double comp = 0.0;
  for (long k = n; k > z; --k) {
    const double term = std::exp(log_pmf(k, n, p));
    const double t = sum + term;
    comp += (std::abs(sum) >= term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return std::min(1.0, sum + comp);
}

Quantile binom_upper_quantile(double alpha_size, long n, double p0) {
  if (!(alpha_size > 0.0 && alpha_size < 1.0)) {
    throw std::domain_error("binom_upper_quantile: alpha must be in (0,1)");
  }
  if (n < 1) throw std::domain_error("binom_upper_quantile: n must be >= 1");
  if (!(p0 > 0.0 && p0 < 1.0)) {
    throw std::domain_error("binom_upper_quantile: p0 must be in (0,1)");
  }
  // Walk the tail downward: after adding pmf(k) the running value is
  // P(X >= k) = P(X > k-1). The first k where it exceeds alpha gives z = k.
  double tail = 0.0;
  double comp = 0.0;
  for (long k = n; k >= 0; --k) {
    const double above = tail + comp;  // P(X > k)
    const double term = std::exp(log_pmf(k, n, p0));
    const double t = tail + term;
    comp += (std::abs(tail) >= term) ? (tail - t) + term : (term - t) + tail;
    tail = t;
    if (tail + comp > alpha_size) {
      return {k, above};
    }
  }
  return {0, tail + comp};  // unreachable for alpha < 1
}

double exact_power_at_null(long n, double alpha_size, double p0, double p_alt) {
  if (p_alt < 0.0 || p_alt > 1.0) {
    throw std::domain_error("exact_power_at_null: p_alt outside [0,1]");
  }
  const Quantile q = binom_upper_quantile(alpha_size, n, p0);
  if (p_alt <= 0.0) return 0.0;
  if (p_alt >= 1.0) return q.z < n ? 1.0 : 0.0;
  return binom_tail_above(q.z, n, p_alt);
}

double exact_power(long n, double alpha_size, int n_param, double p_alt) {
  return exact_power_at_null(n, alpha_size, bc_null_p0(n_param), p_alt);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double asymptotic_power_at_null(long n, double alpha_size, double p0, double p_alt) {
  if (p_alt <= 0.0 || p_alt >= 1.0) {
    return exact_power_at_null(n, alpha_size, p0, p_alt);
  }
  const Quantile q = binom_upper_quantile(alpha_size, n, p0);
  const double mean = n * p_alt;
  const double sd = std::sqrt(n * p_alt * (1.0 - p_alt));
  return 1.0 - normal_cdf((q.z - mean) / sd);
}

double asymptotic_power(long n, double alpha_size, int n_param, double p_alt) {
  return asymptotic_power_at_null(n, alpha_size, bc_null_p0(n_param), p_alt);
}

double lhv_gap_D(int n_param) {
  if (n_param < 2) throw std::domain_error("lhv_gap_D: N must be >= 2");
  return std::cos(M_PI / (2.0 * n_param)) + 1.0 / n_param - 1.0;
}

double bell_model_gap(double theta) {
  return std::cos(theta) + 2.0 * theta / M_PI - 1.0;
}

double optimal_bell_theta() { return std::asin(2.0 / M_PI); }

double rm_error_gap(int n_param, double delta) {
  if (n_param < 2) throw std::domain_error("rm_error_gap: N must be >= 2");
  if (delta < 0.0) throw std::domain_error("rm_error_gap: delta must be >= 0");
  return std::cos(M_PI / (2.0 * n_param) + 4.0 * delta) - (1.0 - 1.0 / n_param);
}

double bc_error_gap(int n_param, double delta) {
  if (n_param < 2) throw std::domain_error("bc_error_gap: N must be >= 2");
  if (delta < 0.0) throw std::domain_error("bc_error_gap: delta must be >= 0");
  return std::cos(M_PI / (2.0 * n_param)) * std::cos(4.0 * delta) - (1.0 - 1.0 / n_param);
}

DeltaThreshold delta_threshold(int n_param) {
  if (n_param < 2) throw std::domain_error("delta_threshold: N must be >= 2");
  const double n = static_cast<double>(n_param);
  DeltaThreshold out;
  out.threshold = (std::acos(1.0 - 1.0 / n) - M_PI / (2.0 * n)) / 4.0;
  out.rm_validity_cap = M_PI / (8.0 * n * (n - 1.0));
  return out;
}

double bc_singlet_with_calibration_error(int n_param, double eps_alice, double eps_bob) {
  if (n_param < 2) {
    throw std::domain_error("bc_singlet_with_calibration_error: N must be >= 2");
  }
  return -std::cos(M_PI / (2.0 * n_param)) * std::cos(2.0 * (eps_alice - eps_bob));
}

double bc_singlet_shifted_summation(int n_param, double eps_alice, double eps_bob) {
  const TwoQubitState singlet = bell_state(BellLabel::PsiMinus);
  const BcMeasurementSet set = bc_set(n_param);
  double sum = 0.0;
  for (const BcPair& pair : set.pairs) {
    sum += pair.sign * planar_correlation(singlet, pair.alice.theta_plane + eps_alice,
                                          pair.bob.theta_plane + eps_bob);
  }
  return sum / static_cast<double>(set.pairs.size());
}

}  // namespace singlet
