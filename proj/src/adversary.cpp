#include "singlet/adversary.hpp"

#include "singlet/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace singlet {

namespace {

Vec4c product_vector(const Vec2c& a, const Vec2c& b) {
  Vec4c v;
  v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return v;
}

int sign_of(double x) { return x >= 0.0 ? +1 : -1; }

// Direction at Bloch angle gamma from `axis`, azimuth phi around it.
Eigen::Vector3d tilted_direction(const Eigen::Vector3d& axis, double gamma, double phi) {
  Eigen::Vector3d ref = std::abs(axis.z()) < 0.9 ? Eigen::Vector3d::UnitZ()
                                                 : Eigen::Vector3d::UnitX();
  const Eigen::Vector3d e1 = axis.cross(ref).normalized();
  const Eigen::Vector3d e2 = axis.cross(e1);
  return std::cos(gamma) * axis + std::sin(gamma) * (std::cos(phi) * e1 + std::sin(phi) * e2);
}

}  // namespace

TwoQubitState intercept_resend_state(double psi, double beta_phase) {
  const QubitPure eve = pure_from_angles(2.0 * psi, beta_phase);
  const Vec4c branch_a = product_vector(eve.amp, eve.perp);
  const Vec4c branch_b = product_vector(eve.perp, eve.amp);
  const Mat4c rho =
      0.5 * (branch_a * branch_a.adjoint()) + 0.5 * (branch_b * branch_b.adjoint());
  return TwoQubitState::from_matrix(rho);
}

TwoQubitState transformed_state(double epsilon, double phi_plus_weight) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::domain_error("transformed_state: epsilon outside [0,1]");
  }
  if (phi_plus_weight < 0.0 || phi_plus_weight > epsilon + 1e-15) {
    throw std::domain_error("transformed_state: need 0 <= phi_plus_weight <= epsilon");
  }
  const double rest = (epsilon - phi_plus_weight) / 2.0;
  return bell_diagonal(1.0 - epsilon, phi_plus_weight, rest, rest);
}

LhvModel bell_hemisphere_model() {
  LhvModel model;
  model.sample_lambda = [](std::mt19937_64& rng) { return uniform_sphere(rng); };
  model.respond_alice = [](const Eigen::Vector3d& lambda, const Eigen::Vector3d& d) {
    return sign_of(lambda.dot(d));
  };
  model.respond_bob = [](const Eigen::Vector3d& lambda, const Eigen::Vector3d& d) {
    return -sign_of(lambda.dot(d));
  };
  model.pair_correlation = [](double gamma) { return -1.0 + 2.0 * gamma / M_PI; };
  return model;
}

LhvModel random_response_model(std::uint64_t model_seed, int cells_per_axis) {
  if (cells_per_axis < 1) {
    throw std::domain_error("random_response_model: cells_per_axis must be >= 1");
  }
  const int cells = cells_per_axis;

  auto cell_index = [cells](const Eigen::Vector3d& v) -> std::uint64_t {
    const double polar = std::acos(std::clamp(v.z(), -1.0, 1.0));
    double azim = std::atan2(v.y(), v.x());
    if (azim < 0.0) azim += 2.0 * M_PI;
    auto ip = std::min<std::uint64_t>(cells - 1, static_cast<std::uint64_t>(polar / M_PI * cells));
    auto ia = std::min<std::uint64_t>(cells - 1,
                                      static_cast<std::uint64_t>(azim / (2.0 * M_PI) * cells));
    return ip * cells + ia;
  };

  // Responses are defined on the upper hemisphere and extended by oddness,
  // so that reversing a direction always flips the outcome.
  auto respond = [cell_index, model_seed](std::uint64_t party, const Eigen::Vector3d& lambda,
                                          const Eigen::Vector3d& d) -> int {
    const bool upper = d.z() > 0.0 || (d.z() == 0.0 && (d.x() > 0.0 || (d.x() == 0.0 && d.y() > 0.0)));
    const Eigen::Vector3d dir = upper ? d : Eigen::Vector3d(-d);
    const std::uint64_t h =
        derive_seed(model_seed, party, cell_index(lambda), cell_index(dir));
    const int value = (h & 1u) ? +1 : -1;
    return upper ? value : -value;
  };

  LhvModel model;
  model.sample_lambda = [](std::mt19937_64& rng) { return uniform_sphere(rng); };
  model.respond_alice = [respond](const Eigen::Vector3d& lambda, const Eigen::Vector3d& d) {
    return respond(1, lambda, d);
  };
  model.respond_bob = [respond](const Eigen::Vector3d& lambda, const Eigen::Vector3d& d) {
    return respond(2, lambda, d);
  };
  return model;
}

int lhv_rm_draw(std::mt19937_64& rng, const LhvModel& model, double theta_sep) {
  if (theta_sep < 0.0 || theta_sep > M_PI / 2.0 + 1e-12) {
    throw std::domain_error("lhv_rm_draw: theta_sep outside [0, pi/2]");
  }
  const Eigen::Vector3d lambda = model.sample_lambda(rng);
  const Eigen::Vector3d a = uniform_sphere(rng);
  const Eigen::Vector3d b = tilted_direction(a, theta_sep, uniform(rng, 0.0, 2.0 * M_PI));
  return model.respond_alice(lambda, a) * model.respond_bob(lambda, b);
}

int lhv_bc_draw(std::mt19937_64& rng, const LhvModel& model, const BcMeasurementSet& set) {
  const auto n_pairs = set.pairs.size();
  auto idx = static_cast<std::size_t>(canonical(rng) * static_cast<double>(n_pairs));
  if (idx >= n_pairs) idx = n_pairs - 1;
  const BcPair& pair = set.pairs[idx];
  const Eigen::Vector3d lambda = model.sample_lambda(rng);
  const int product = model.respond_alice(lambda, pair.alice.bloch()) *
                      model.respond_bob(lambda, pair.bob.bloch());
  return pair.sign * product;
}

int lhv_bc_draw(std::mt19937_64& rng, const LhvModel& model, int n_param) {
  return lhv_bc_draw(rng, model, bc_set(n_param));
}

double lhv_rm_expectation(const LhvModel& model, double theta_sep) {
  if (!model.pair_correlation) {
    throw std::logic_error("lhv_rm_expectation: model has no analytic correlation");
  }
  return model.pair_correlation(theta_sep);
}

double lhv_bc_expectation(const LhvModel& model, int n_param) {
  if (!model.pair_correlation) {
    throw std::logic_error("lhv_bc_expectation: model has no analytic correlation");
  }
  const BcMeasurementSet set = bc_set(n_param);
  double sum = 0.0;
  for (const BcPair& pair : set.pairs) {
    double gamma = std::abs(2.0 * (pair.alice.theta_plane - pair.bob.theta_plane));
    if (gamma > M_PI) gamma = 2.0 * M_PI - gamma;
    sum += pair.sign * model.pair_correlation(gamma);
  }
  return sum / static_cast<double>(set.pairs.size());
}

}  // namespace singlet
