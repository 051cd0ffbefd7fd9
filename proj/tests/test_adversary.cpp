#include "singlet/adversary.hpp"

#include "helpers.hpp"
#include "singlet/hypotest.hpp"
#include "singlet/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace singlet;
using singlet::testing::four_sigma;

TEST_CASE("intercept_resend_state always has singlet fidelity 1/2") {
  std::mt19937_64 rng(5511);
  for (int i = 0; i < 100; ++i) {
    const double psi = uniform(rng, 0.0, M_PI);
    const double beta = uniform(rng, 0.0, 2.0 * M_PI);
    const TwoQubitState rho = intercept_resend_state(psi, beta);
    CHECK(fidelity(rho, BellLabel::PsiMinus) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("computational-basis attack leaves a diagonal mixture") {
  const TwoQubitState rho = intercept_resend_state(0.0, 0.0);
  Mat4c expected = Mat4c::Zero();
  expected(1, 1) = 0.5;  // |01><01|
  expected(2, 2) = 0.5;  // |10><10|
  CHECK((rho.rho() - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(bc_expectation(rho, 2) == doctest::Approx(-std::cos(M_PI / 4.0) / 2.0).epsilon(1e-13));
}

TEST_CASE("intercept-resend reduces the RM expectation to one third") {
  std::mt19937_64 rng(8181);
  for (int i = 0; i < 25; ++i) {
    const double psi = uniform(rng, 0.0, M_PI);
    const double beta = uniform(rng, 0.0, 2.0 * M_PI);
    const double theta = uniform(rng, 0.0, M_PI / 2.0);
    CHECK(rm_expectation(intercept_resend_state(psi, beta), theta) ==
          doctest::Approx(-std::cos(theta) / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("Breidbart attack is caught better by the random-measurement test") {
  const TwoQubitState rho = intercept_resend_state(M_PI / 8.0, 0.0);
  const double e_bc = bc_expectation(rho, 2);
  const double e_rm = rm_expectation(rho, M_PI / 4.0);
  CHECK(e_rm > e_bc);  // larger expectation = farther from the singlet value
}

TEST_CASE("intercept-resend Monte Carlo means at N=2") {
  std::mt19937_64 rng(112233);
  const TwoQubitState rho = intercept_resend_state(0.0, 0.0);
  const long draws = 100000;

  const BcMeasurementSet set = bc_set(2);
  double sum_bc = 0.0;
  for (long i = 0; i < draws; ++i) sum_bc += bc_draw(rng, rho, set);
  const double target_bc = -std::cos(M_PI / 4.0) / 2.0;  // -0.3536
  CHECK(std::abs(sum_bc / draws - target_bc) <= four_sigma(target_bc, draws));

  double sum_rm = 0.0;
  for (long i = 0; i < draws; ++i) sum_rm += rm_draw(rng, rho, M_PI / 4.0);
  const double target_rm = -std::cos(M_PI / 4.0) / 3.0;  // -0.2357
  CHECK(std::abs(sum_rm / draws - target_rm) <= four_sigma(target_rm, draws));
}

TEST_CASE("transformed_state realizes the requested Bell fidelities") {
  std::mt19937_64 rng(7447);
  for (int i = 0; i < 50; ++i) {
    const double eps = uniform(rng, 0.0, 1.0);
    const double f = uniform(rng, 0.0, eps);
    const TwoQubitState rho = transformed_state(eps, f);
    CHECK(fidelity(rho, BellLabel::PsiMinus) == doctest::Approx(1.0 - eps).epsilon(1e-12));
    CHECK(std::abs(fidelity(rho, BellLabel::PhiPlus) - f) < 1e-12);
  }

  const TwoQubitState singlet = transformed_state(0.0, 0.0);
  CHECK((singlet.rho() - bell_state(BellLabel::PsiMinus).rho()).cwiseAbs().maxCoeff() <
        1e-14);

  CHECK_THROWS_AS(transformed_state(0.1, 0.2), std::domain_error);
  CHECK_THROWS_AS(transformed_state(1.2, 0.0), std::domain_error);
  CHECK_THROWS_AS(transformed_state(0.5, -0.1), std::domain_error);
}

TEST_CASE("transformed_state expectation values") {
  const TwoQubitState rho = transformed_state(0.1, 0.0);
  CHECK(bc_expectation(rho, 2) == doctest::Approx(-0.9 * std::cos(M_PI / 4.0)).epsilon(1e-12));
  CHECK(rm_expectation(rho, M_PI / 4.0) ==
        doctest::Approx((-1.0 + 0.4 / 3.0) * std::cos(M_PI / 4.0)).epsilon(1e-12));

  // At phi_plus_weight = epsilon/3 the two schemes coincide.
  for (double eps : {0.06, 0.3, 0.9}) {
    const TwoQubitState balanced = transformed_state(eps, eps / 3.0);
    CHECK(bc_expectation(balanced, 2) ==
          doctest::Approx(rm_expectation(balanced, M_PI / 4.0)).epsilon(1e-12));
  }
}

TEST_CASE("Bell hemisphere model matches -1 + 2 theta / pi") {
  const LhvModel model = bell_hemisphere_model();
  std::mt19937_64 rng(13579);
  const long draws = 100000;

  SUBCASE("theta = 0 gives perfect anti-correlation") {
    for (int i = 0; i < 2000; ++i) CHECK(lhv_rm_draw(rng, model, 0.0) == -1);
  }

  SUBCASE("theta grid") {
    for (int k = 0; k < 10; ++k) {
      const double theta = (M_PI / 2.0) * k / 9.0;
      double sum = 0.0;
      for (long i = 0; i < draws; ++i) sum += lhv_rm_draw(rng, model, theta);
      const double target = -1.0 + 2.0 * theta / M_PI;
      CHECK(std::abs(sum / draws - target) <= four_sigma(target, draws));
    }
  }
}

TEST_CASE("Bell hemisphere model saturates the BC bound at N=2") {
  const LhvModel model = bell_hemisphere_model();
  std::mt19937_64 rng(8642);
  const long draws = 100000;
  const BcMeasurementSet set = bc_set(2);
  double sum = 0.0;
  for (long i = 0; i < draws; ++i) sum += lhv_bc_draw(rng, model, set);
  const double mean = sum / draws;
  CHECK(std::abs(mean + 0.5) <= four_sigma(-0.5, draws));
  CHECK(std::abs(mean) <= 0.5 + four_sigma(mean, draws));
}

TEST_CASE("analytic LHV expectations from the pair-correlation hook") {
  const LhvModel model = bell_hemisphere_model();
  CHECK(lhv_rm_expectation(model, M_PI / 4.0) == doctest::Approx(-0.5).epsilon(1e-13));
  for (int n : {2, 3, 5}) {
    CHECK(lhv_bc_expectation(model, n) == doctest::Approx(-(1.0 - 1.0 / n)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(lhv_rm_expectation(random_response_model(1), 0.3), std::logic_error);
}

TEST_CASE("random deterministic models respect the LHV correlation bounds") {
  // Scaled-down version of the acceptance run (10 of 50 models here).
  const long draws = 100000;
  for (std::uint64_t model_seed = 1; model_seed <= 10; ++model_seed) {
    const LhvModel model = random_response_model(model_seed);
    std::mt19937_64 rng(derive_seed(4040, model_seed));

    const BcMeasurementSet set = bc_set(2);
    double sum_bc = 0.0;
    for (long i = 0; i < draws; ++i) sum_bc += lhv_bc_draw(rng, model, set);
    const double mean_bc = sum_bc / draws;
    CHECK(std::abs(mean_bc) <= 0.5 + four_sigma(mean_bc, draws));

    double sum_rm = 0.0;
    for (long i = 0; i < draws; ++i) sum_rm += lhv_rm_draw(rng, model, M_PI / 4.0);
    const double mean_rm = sum_rm / draws;
    CHECK(std::abs(mean_rm) <= 0.5 + four_sigma(mean_rm, draws));
  }
}

TEST_CASE("a direction-only model cannot exceed the BC bound") {
  // Responses ignore lambda entirely; the chained-inequality bound 1 - 1/N
  // still applies because it is algebraic in the +-1 assignments.
  LhvModel model;
  model.sample_lambda = [](std::mt19937_64& rng) { return uniform_sphere(rng); };
  model.respond_alice = [](const Eigen::Vector3d&, const Eigen::Vector3d& d) {
    return d.z() >= 0.0 ? +1 : -1;
  };
  model.respond_bob = model.respond_alice;
  std::mt19937_64 rng(5005);
  for (int n : {2, 3, 4}) {
    const BcMeasurementSet set = bc_set(n);
    const long draws = 50000;
    double sum = 0.0;
    for (long i = 0; i < draws; ++i) sum += lhv_bc_draw(rng, model, set);
    const double mean = sum / draws;
    CHECK(std::abs(mean) <= 1.0 - 1.0 / n + four_sigma(mean, draws));
  }
}

TEST_CASE("random model responses are odd under direction reversal") {
  const LhvModel model = random_response_model(99);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Eigen::Vector3d lambda = uniform_sphere(rng);
    const Eigen::Vector3d d = uniform_sphere(rng);
    CHECK(model.respond_alice(lambda, d) == -model.respond_alice(lambda, -d));
    CHECK(model.respond_bob(lambda, d) == -model.respond_bob(lambda, -d));
  }
}
