#pragma once

#include "singlet/correlations.hpp"
#include "singlet/qstate.hpp"

#include <cstdint>
#include <functional>
#include <random>

namespace singlet {

/// Post-measurement mixture left by an intercept-resend attack in the basis
/// {|a> = cos(psi)|0> + e^{i beta} sin(psi)|1>, |a_perp>}:
///   (1/2)|a a_perp><a a_perp| + (1/2)|a_perp a><a_perp a|.
/// The singlet fidelity of the result is exactly 1/2 for every (psi, beta).
TwoQubitState intercept_resend_state(double psi, double beta_phase);

/// Bell-diagonal state with singlet weight 1 - epsilon, PhiPlus weight
/// phi_plus_weight, and the remainder split equally between PhiMinus and
/// PsiPlus. Requires 0 <= phi_plus_weight <= epsilon <= 1.
TwoQubitState transformed_state(double epsilon, double phi_plus_weight);

/// Deterministic local-hidden-variable model over unit-vector hidden states.
/// Responses must be pure functions of (lambda, measurement direction) and
/// odd under direction reversal, since flipping a measurement direction only
/// relabels its outcomes.
struct LhvModel {
  std::function<Eigen::Vector3d(std::mt19937_64&)> sample_lambda;
  std::function<int(const Eigen::Vector3d& lambda, const Eigen::Vector3d& direction)>
      respond_alice;
  std::function<int(const Eigen::Vector3d& lambda, const Eigen::Vector3d& direction)>
      respond_bob;
  /// Analytic E[O_A O_B] as a function of the Bloch angle between the two
  /// measurement directions, when known (used for theoretical power curves).
  std::function<double(double gamma)> pair_correlation;
};

/// Bell's hemisphere model: lambda uniform on the sphere,
/// Alice -> sign(lambda . a), Bob -> -sign(lambda . b). Its pair correlation
/// at separation gamma is -1 + 2 gamma / pi.
LhvModel bell_hemisphere_model();

/// A reproducible random deterministic model: responses are hash-valued +-1
/// over angular cells of (lambda, direction), made odd under direction
/// reversal. No analytic correlation is attached.
LhvModel random_response_model(std::uint64_t model_seed, int cells_per_axis = 16);

/// One random-measurement sample from an LHV source: Alice direction uniform,
/// Bob direction at Bloch angle theta_sep from it with uniform azimuth.
int lhv_rm_draw(std::mt19937_64& rng, const LhvModel& model, double theta_sep);

/// One Braunstein-Caves sample from an LHV source: uniform pair from
/// bc_set(N) mapped to Bloch directions, sign flag applied.
int lhv_bc_draw(std::mt19937_64& rng, const LhvModel& model, const BcMeasurementSet& set);
int lhv_bc_draw(std::mt19937_64& rng, const LhvModel& model, int n_param);

/// Analytic expectations from the model's pair_correlation hook.
/// Throw std::logic_error when the model has none.
double lhv_rm_expectation(const LhvModel& model, double theta_sep);
double lhv_bc_expectation(const LhvModel& model, int n_param);

}  // namespace singlet
