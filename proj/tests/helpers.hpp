#pragma once

#include "singlet/correlations.hpp"
#include "singlet/qstate.hpp"

#include <cmath>
#include <random>

namespace singlet::testing {

// Independent oracle for the expected outcome correlation of two projective
// measurements: build the four product projectors and take
// P(same) - P(differ) from the Born probabilities directly.
inline double projector_correlation(const TwoQubitState& rho, const QubitPure& alice,
                                    const QubitPure& bob) {
  auto prob = [&](const Vec2c& a, const Vec2c& b) {
    Vec4c v;
    v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    return v.dot(rho.rho() * v).real();
  };
  const double same = prob(alice.amp, bob.amp) + prob(alice.perp, bob.perp);
  const double differ = prob(alice.amp, bob.perp) + prob(alice.perp, bob.amp);
  return same - differ;
}

// P(X > z) for X ~ B(n, p) via the pmf ratio recurrence, normalized at the
// mode so no term underflows; oracle for the log-space implementation.
inline double binom_tail_recurrence(long z, long n, double p) {
  if (z < 0) return 1.0;
  if (z >= n) return 0.0;
  const long mode = static_cast<long>((n + 1) * p);
  std::vector<double> weight(n + 1, 0.0);
  weight[mode] = 1.0;
  for (long k = mode + 1; k <= n; ++k) {
    weight[k] = weight[k - 1] * (static_cast<double>(n - k + 1) / k) * (p / (1.0 - p));
  }
  for (long k = mode - 1; k >= 0; --k) {
    weight[k] = weight[k + 1] * (static_cast<double>(k + 1) / (n - k)) * ((1.0 - p) / p);
  }
  double total = 0.0;
  double tail = 0.0;
  for (long k = 0; k <= n; ++k) {
    total += weight[k];
    if (k > z) tail += weight[k];
  }
  return tail / total;
}

// Golden-section maximizer on [lo, hi] for smooth unimodal f.
template <typename F>
double golden_section_max(F f, double lo, double hi, double tol = 1e-10) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  while (std::abs(b - a) > tol) {
    if (f(c) > f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - inv_phi * (b - a);
    d = a + inv_phi * (b - a);
  }
  return (a + b) / 2.0;
}

// 4-sigma binomial band around an empirical mean of `draws` +-1 samples.
inline double four_sigma(double mean, long draws) {
  const double var = std::max(0.0, 1.0 - mean * mean);
  return 4.0 * std::sqrt(var / static_cast<double>(draws));
}

}  // namespace singlet::testing
