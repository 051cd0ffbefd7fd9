#pragma once

#include "singlet/qstate.hpp"

namespace singlet {

/// Bernoulli parameters of the shifted test samples: the BC sample is
/// 2 Bernoulli(p) - 1 and the RM sample at theta = pi/2N is
/// 2 Bernoulli(q) - 1.
struct BernoulliParams {
  double p = 0.0;
  double q = 0.0;
};

BernoulliParams bernoulli_params(const TwoQubitState& rho, int n_param);

/// Null-hypothesis (singlet) success probabilities.
double bc_null_p0(int n_param);      // (1 - cos(pi/2N)) / 2
double rm_null_p0(double theta_sep); // (1 - cos(theta)) / 2

/// P(X > z) for X ~ B(n, p), by log-space term accumulation.
double binom_tail_above(long z, long n, double p);

struct Quantile {
  long z = 0;
  double achieved_size = 0.0;  // P(X > z) under the null; always <= alpha
};

/// Smallest integer z with P(X > z | X ~ B(n, p0)) <= alpha_size.
/// Non-randomized, so the achieved size never exceeds alpha_size.
Quantile binom_upper_quantile(double alpha_size, long n, double p0);

/// Rejection probability P(X > z_{alpha,n} | X ~ B(n, p_alt)) with the
/// quantile taken under the null p0. exact_power uses the Braunstein-Caves
/// null p0 = 1/2 - cos(pi/2N)/2; the _at_null variants take p0 directly.
double exact_power_at_null(long n, double alpha_size, double p0, double p_alt);
double exact_power(long n, double alpha_size, int n_param, double p_alt);

/// Central-limit approximation 1 - Phi((z - n p)/sqrt(n p (1-p))).
/// Degenerate p_alt in {0, 1} is routed to the exact computation.
double asymptotic_power_at_null(long n, double alpha_size, double p0, double p_alt);
double asymptotic_power(long n, double alpha_size, int n_param, double p_alt);

/// Standard normal CDF.
double normal_cdf(double x);

/// Gap between the singlet correlation magnitude and the LHV bound:
/// D(N) = cos(pi/2N) + 1/N - 1.
double lhv_gap_D(int n_param);

/// Gap against Bell's hemisphere model: D~(theta) = cos(theta) + 2 theta/pi - 1.
double bell_model_gap(double theta);

/// arcsin(2/pi), the maximizer of bell_model_gap on [0, pi/2].
double optimal_bell_theta();

/// Assured singlet-LHV gaps under delta-bounded calibration errors.
double rm_error_gap(int n_param, double delta);  // cos(pi/2N + 4 delta) - (1 - 1/N)
double bc_error_gap(int n_param, double delta);  // cos(pi/2N) cos(4 delta) - (1 - 1/N)

struct DeltaThreshold {
  double threshold = 0.0;        // (arccos(1 - 1/N) - pi/2N) / 4
  double rm_validity_cap = 0.0;  // pi / (8 N (N - 1))
};

DeltaThreshold delta_threshold(int n_param);

/// Singlet BC expectation when every Alice angle is offset by eps_alice and
/// every Bob angle by eps_bob: -cos(pi/2N) cos(2 (eps_alice - eps_bob)).
double bc_singlet_with_calibration_error(int n_param, double eps_alice, double eps_bob);

/// The same quantity by the signed planar-correlation average over the
/// shifted measurement set; cross-check route, agrees to 1e-10.
double bc_singlet_shifted_summation(int n_param, double eps_alice, double eps_bob);

}  // namespace singlet
