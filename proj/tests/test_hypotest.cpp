#include "singlet/hypotest.hpp"

#include "helpers.hpp"
#include "singlet/adversary.hpp"
#include "singlet/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace singlet;
using singlet::testing::binom_tail_recurrence;
using singlet::testing::golden_section_max;

TEST_CASE("bernoulli_params reference values") {
  const TwoQubitState singlet = bell_state(BellLabel::PsiMinus);
  const BernoulliParams at_singlet = bernoulli_params(singlet, 2);
  CHECK(at_singlet.p == doctest::Approx(0.5 - std::cos(M_PI / 4.0) / 2.0).epsilon(1e-13));
  CHECK(at_singlet.p == doctest::Approx(0.146447).epsilon(1e-5));
  CHECK(at_singlet.q == doctest::Approx(at_singlet.p).epsilon(1e-13));

  const TwoQubitState mixed = TwoQubitState::from_matrix(Mat4c::Identity() / 4.0);
  for (int n : {2, 5, 9}) {
    const BernoulliParams params = bernoulli_params(mixed, n);
    CHECK(params.p == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(params.q == doctest::Approx(0.5).epsilon(1e-13));
  }

  const BernoulliParams attack = bernoulli_params(intercept_resend_state(0.0, 0.0), 2);
  CHECK(attack.p == doctest::Approx(0.323223).epsilon(1e-5));
  CHECK(attack.q == doctest::Approx(0.382149).epsilon(1e-5));
}

TEST_CASE("bernoulli_params tie to the sample expectations") {
  std::mt19937_64 rng(24601);
  for (int i = 0; i < 50; ++i) {
    const TwoQubitState rho = random_density(rng);
    for (int n : {2, 3, 6}) {
      const BernoulliParams params = bernoulli_params(rho, n);
      CHECK(params.p ==
            doctest::Approx((1.0 + bc_expectation(rho, n)) / 2.0).epsilon(1e-12));
      CHECK(params.q ==
            doctest::Approx((1.0 + rm_expectation(rho, M_PI / (2.0 * n))) / 2.0)
                .epsilon(1e-12));
      const double c = std::cos(M_PI / (2.0 * n));
      CHECK(params.p >= (1.0 - c) / 2.0 - 1e-12);
      CHECK(params.p <= (1.0 + c) / 2.0 + 1e-12);
      CHECK(params.q >= (1.0 - c) / 2.0 - 1e-12);
      CHECK(params.q <= (1.0 + c) / 2.0 + 1e-12);
    }
  }
}

TEST_CASE("binom_upper_quantile basics") {
  const Quantile q = binom_upper_quantile(0.5, 1, 0.5);
  CHECK(q.z == 0);
  CHECK(q.achieved_size == doctest::Approx(0.5).epsilon(1e-12));

  // Against the recurrence-based tail oracle.
  const double p0 = bc_null_p0(2);
  const Quantile quantile = binom_upper_quantile(0.01, 100, p0);
  CHECK(binom_tail_recurrence(quantile.z, 100, p0) <= 0.01);
  CHECK(binom_tail_recurrence(quantile.z - 1, 100, p0) > 0.01);
  CHECK(quantile.achieved_size ==
        doctest::Approx(binom_tail_recurrence(quantile.z, 100, p0)).epsilon(1e-10));
}

TEST_CASE("quantile is monotone in n and size never exceeds alpha") {
  long prev = -1;
  for (long n = 10; n <= 500; n += 10) {
    const Quantile q = binom_upper_quantile(0.05, n, 0.3);
    CHECK(q.z >= prev);
    CHECK(q.achieved_size <= 0.05);
    prev = q.z;
  }
  for (double alpha : {0.001, 0.01, 0.1, 0.5}) {
    for (long n : {1L, 7L, 64L, 1000L}) {
      for (double p0 : {0.1, 0.146447, 0.5, 0.9}) {
        CHECK(binom_upper_quantile(alpha, n, p0).achieved_size <= alpha);
      }
    }
  }
}

TEST_CASE("binomial tail matches the recurrence oracle") {
  std::mt19937_64 rng(135);
  for (int i = 0; i < 40; ++i) {
    const long n = 1 + static_cast<long>(canonical(rng) * 2000);
    const double p = uniform(rng, 0.01, 0.99);
    const long z = static_cast<long>(canonical(rng) * (n + 1));
    const double mine = binom_tail_above(z, n, p);
    const double oracle = binom_tail_recurrence(z, n, p);
    CHECK(mine == doctest::Approx(oracle).epsilon(1e-10));
  }
  // Large-n log-space path stays finite and normalized.
  const double big = binom_tail_above(14450, 100000, 0.146447);
  CHECK(big > 0.0);
  CHECK(big < 1.0);
}

TEST_CASE("exact_power behaviour") {
  const double p0 = bc_null_p0(2);

  SUBCASE("null case returns the achieved size") {
    const Quantile q = binom_upper_quantile(0.01, 250, p0);
    CHECK(exact_power(250, 0.01, 2, p0) == doctest::Approx(q.achieved_size).epsilon(1e-12));
    CHECK(exact_power(250, 0.01, 2, p0) <= 0.01);
  }

  SUBCASE("degenerate alternatives") {
    CHECK(exact_power(50, 0.01, 2, 1.0) == 1.0);
    CHECK(exact_power(50, 0.01, 2, 0.0) == 0.0);
  }

  SUBCASE("RM beats BC for the computational-basis intercept attack") {
    const double power_rm = exact_power(200, 0.01, 2, 0.382149);
    const double power_bc = exact_power(200, 0.01, 2, 0.323223);
    CHECK(power_rm > power_bc);
  }

  SUBCASE("power ordering follows the Bernoulli parameter") {
    std::mt19937_64 rng(777);
    for (int i = 0; i < 50; ++i) {
      const double a = uniform(rng, 0.05, 0.95);
      const double b = uniform(rng, 0.05, 0.95);
      const long n = 20 + static_cast<long>(canonical(rng) * 500);
      const double pa = exact_power(n, 0.05, 2, a);
      const double pb = exact_power(n, 0.05, 2, b);
      if (a > b) {
        CHECK(pa >= pb - 1e-12);
      } else if (b > a) {
        CHECK(pb >= pa - 1e-12);
      }
    }
  }
}

TEST_CASE("asymptotic_power approaches the exact power") {
  // Intercept-resend scenario at N = 2.
  for (long n : {500L, 1000L, 2000L, 5000L}) {
    for (double p_alt : {0.323223, 0.382149}) {
      const double exact = exact_power(n, 0.01, 2, p_alt);
      const double asym = asymptotic_power(n, 0.01, 2, p_alt);
      CHECK(std::abs(asym - exact) <= 0.02);
    }
  }

  // At the null the asymptotic power settles near alpha.
  const double p0 = bc_null_p0(2);
  CHECK(asymptotic_power(5000, 0.01, 2, p0) == doctest::Approx(0.01).epsilon(0.5));

  // Consistency: power grows with n for a true alternative.
  double prev = 0.0;
  for (long n : {100L, 300L, 900L, 2700L}) {
    const double power = exact_power(n, 0.01, 2, 0.25);
    CHECK(power >= prev - 1e-9);
    prev = power;
  }

  CHECK(asymptotic_power(50, 0.01, 2, 1.0) == 1.0);
}

TEST_CASE("normal_cdf sanity") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-9));
  CHECK(normal_cdf(-8.0) < 1e-14);
}

TEST_CASE("LHV gap values") {
  CHECK(std::abs(lhv_gap_D(2) - 0.2071) < 5e-5);
  CHECK(std::abs(lhv_gap_D(3) - 0.1994) < 5e-5);
  int argmax = 2;
  for (int n = 3; n <= 100; ++n) {
    if (lhv_gap_D(n) > lhv_gap_D(argmax)) argmax = n;
  }
  CHECK(argmax == 2);
  for (int n = 2; n <= 1000; ++n) CHECK(lhv_gap_D(n) > 0.0);
  CHECK_THROWS_AS(lhv_gap_D(1), std::domain_error);
}

TEST_CASE("Bell-model gap and its maximizer") {
  CHECK(std::abs(bell_model_gap(std::asin(2.0 / M_PI)) - 0.2105) < 5e-5);
  CHECK(std::abs(bell_model_gap(M_PI / 4.0) - 0.2071) < 5e-5);
  CHECK(bell_model_gap(0.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(bell_model_gap(M_PI / 2.0) == doctest::Approx(0.0).epsilon(1e-13));
  for (int i = 1; i < 1000; ++i) {
    CHECK(bell_model_gap((M_PI / 2.0) * i / 1000.0) > 0.0);
  }

  CHECK(optimal_bell_theta() == doctest::Approx(0.690107).epsilon(1e-6));
  const double numeric = golden_section_max(bell_model_gap, 0.0, M_PI / 2.0);
  CHECK(std::abs(numeric - optimal_bell_theta()) < 1e-6);
  CHECK(bell_model_gap(optimal_bell_theta()) > bell_model_gap(M_PI / 4.0));
}

TEST_CASE("calibration-error gaps reduce to D(N) at delta = 0") {
  for (int n = 2; n <= 20; ++n) {
    CHECK(std::abs(rm_error_gap(n, 0.0) - lhv_gap_D(n)) < 1e-12);
    CHECK(std::abs(bc_error_gap(n, 0.0) - lhv_gap_D(n)) < 1e-12);
  }
  CHECK(rm_error_gap(2, 0.05) ==
        doctest::Approx(std::cos(M_PI / 4.0 + 0.2) - 0.5).epsilon(1e-13));
  CHECK(bc_error_gap(2, 0.05) ==
        doctest::Approx(std::cos(M_PI / 4.0) * std::cos(0.2) - 0.5).epsilon(1e-13));
}

TEST_CASE("delta_threshold values and the RM sign change") {
  const DeltaThreshold t2 = delta_threshold(2);
  CHECK(t2.threshold == doctest::Approx(M_PI / 48.0).epsilon(1e-13));
  CHECK(t2.rm_validity_cap == doctest::Approx(M_PI / 16.0).epsilon(1e-13));

  for (int n = 2; n <= 10; ++n) {
    const double t = delta_threshold(n).threshold;
    // The RM gap crosses zero exactly at the threshold.
    CHECK(std::abs(rm_error_gap(n, t)) < 1e-9);
    CHECK(rm_error_gap(n, t - 1e-6) > 0.0);
    CHECK(rm_error_gap(n, t + 1e-6) < 0.0);
    // The BC gap is positive on the whole guaranteed range [0, threshold];
    // its own zero sits strictly above it.
    CHECK(bc_error_gap(n, t) > 0.0);
    const double n_real = n;
    const double bc_zero =
        std::acos((1.0 - 1.0 / n_real) / std::cos(M_PI / (2.0 * n_real))) / 4.0;
    CHECK(bc_error_gap(n, bc_zero - 1e-6) > 0.0);
    CHECK(bc_error_gap(n, bc_zero + 1e-6) < 0.0);
    CHECK(bc_zero > t);
  }

  // The effective tolerance min(threshold, validity cap) decreases from N=3 on.
  double prev = std::min(delta_threshold(3).threshold, delta_threshold(3).rm_validity_cap);
  for (int n = 4; n <= 50; ++n) {
    const DeltaThreshold t = delta_threshold(n);
    const double eff = std::min(t.threshold, t.rm_validity_cap);
    CHECK(eff < prev);
    prev = eff;
  }
}

TEST_CASE("BC calibration-error expectation matches the shifted-set average") {
  CHECK(bc_singlet_with_calibration_error(2, 0.1, 0.1) ==
        doctest::Approx(-std::cos(M_PI / 4.0)).epsilon(1e-13));
  CHECK(bc_singlet_with_calibration_error(2, 0.1, 0.0) ==
        doctest::Approx(-std::cos(M_PI / 4.0) * std::cos(0.2)).epsilon(1e-13));

  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + static_cast<int>(canonical(rng) * 9);
    const double ea = uniform(rng, -0.3, 0.3);
    const double eb = uniform(rng, -0.3, 0.3);
    CHECK(std::abs(bc_singlet_with_calibration_error(n, ea, eb) -
                   bc_singlet_shifted_summation(n, ea, eb)) < 1e-10);
  }
}
