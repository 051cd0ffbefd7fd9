#include "singlet/correlations.hpp"

#include "singlet/rng.hpp"

#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

namespace singlet {

namespace {

Vec4c kron2(const Vec2c& a, const Vec2c& b) {
  Vec4c v;
  v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return v;
}

// <u|rho|v>
cd form(const Mat4c& rho, const Vec4c& u, const Vec4c& v) { return u.dot(rho * v); }

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

}  // namespace

BcMeasurementSet bc_set(int n_param) {
  if (n_param < 2) throw std::domain_error("bc_set: N must be >= 2");
  const double n = static_cast<double>(n_param);
  auto alice = [&](int k) { return PlanarBasis{k * M_PI / (2.0 * n)}; };
  auto bob = [&](int k) { return PlanarBasis{(2.0 * k + 1.0) * M_PI / (4.0 * n)}; };

  BcMeasurementSet set;
  set.n_param = n_param;
  set.pairs.reserve(2 * n_param);
  for (int k = 0; k < n_param; ++k) set.pairs.push_back({alice(k), bob(k), +1});
  for (int k = 0; k + 1 < n_param; ++k) set.pairs.push_back({alice(k + 1), bob(k), +1});
  set.pairs.push_back({alice(0), bob(n_param - 1), -1});
  return set;
}

double planar_correlation(const TwoQubitState& rho, double theta, double phi) {
  const double c2t = std::cos(2.0 * theta);
  const double s2t = std::sin(2.0 * theta);
  const double c2p = std::cos(2.0 * phi);
  const double s2p = std::sin(2.0 * phi);
  auto a = [&](int i, int j, int p, int q) { return rho.entry(i, j, p, q); };
  double e = c2t * c2p *
             (a(0, 0, 0, 0).real() + a(1, 1, 1, 1).real() - a(0, 1, 0, 1).real() -
              a(1, 0, 1, 0).real());
  e += 2.0 * c2t * s2p * (a(0, 0, 0, 1) - a(1, 0, 1, 1)).real();
  e += 2.0 * s2t * c2p * (a(0, 0, 1, 0) - a(0, 1, 1, 1)).real();
  e += 2.0 * s2t * s2p * (a(0, 0, 1, 1) + a(0, 1, 1, 0)).real();
  return e;
}

double bc_expectation(const TwoQubitState& rho, int n_param) {
  if (n_param < 2) throw std::domain_error("bc_expectation: N must be >= 2");
  return std::cos(M_PI / (2.0 * n_param)) *
         (fidelity(rho, BellLabel::PhiPlus) - fidelity(rho, BellLabel::PsiMinus));
}

double bc_expectation_summed(const TwoQubitState& rho, int n_param) {
  const BcMeasurementSet set = bc_set(n_param);
  double sum = 0.0;
  for (const BcPair& pair : set.pairs) {
    sum += pair.sign * planar_correlation(rho, pair.alice.theta_plane, pair.bob.theta_plane);
  }
  return sum / static_cast<double>(set.pairs.size());
}

RmPair rm_pair_from(const QubitPure& alice, double alpha, double theta_sep) {
  if (theta_sep < 0.0 || theta_sep > M_PI / 2.0 + 1e-12) {
    throw std::domain_error("rm_pair_from: theta_sep outside [0, pi/2]");
  }
  const double c = std::cos(theta_sep / 2.0);
  const double s = std::sin(theta_sep / 2.0);
  const cd phase = std::polar(1.0, alpha);
  const Vec2c amp_b = c * alice.amp + phase * s * alice.perp;
  RmPair pair;
  pair.alice = alice;
  pair.bob = pure_from_amplitudes(amp_b);
  pair.theta_sep = theta_sep;
  pair.alpha = alpha;
  return pair;
}

RmPair sample_rm_pair(std::mt19937_64& rng, double theta_sep) {
  const double u = 1.0 - 2.0 * canonical(rng);  // cos(omega) uniform on (-1, 1]
  const double omega = std::acos(u);
  const double beta = uniform(rng, 0.0, 2.0 * M_PI);
  const double alpha = uniform(rng, 0.0, 2.0 * M_PI);
  return rm_pair_from(pure_from_angles(omega, beta), alpha, theta_sep);
}

double rm_pair_expectation(const TwoQubitState& rho, const QubitPure& alice,
                           double alpha, double theta_sep) {
  const Mat4c& m = rho.rho();
  const Vec4c v_aa = kron2(alice.amp, alice.amp);
  const Vec4c v_ap = kron2(alice.amp, alice.perp);
  const Vec4c v_pa = kron2(alice.perp, alice.amp);
  const Vec4c v_pp = kron2(alice.perp, alice.perp);

  const Vec4c r_aa = m * v_aa;
  const Vec4c r_ap = m * v_ap;
  const Vec4c r_pa = m * v_pa;
  const Vec4c r_pp = m * v_pp;

  const double c = std::cos(theta_sep / 2.0);
  const double s = std::sin(theta_sep / 2.0);
  const double c2 = c * c;
  const double s2 = s * s;
  const double st = 2.0 * s * c;
  const cd phase = std::polar(1.0, alpha);

  double e = 2.0 * c2 * v_aa.dot(r_aa).real();
  e += 2.0 * s2 * v_ap.dot(r_ap).real();
  e += 2.0 * (phase * st * v_aa.dot(r_ap)).real();
  e += 2.0 * c2 * v_pp.dot(r_pp).real();
  e += 2.0 * s2 * v_pa.dot(r_pa).real();
  // Cross term of |psi_B_perp> = -s|psi_A> + c e^{i alpha}|psi_A_perp>:
  // the matrix element is <perp,A| rho |perp,perp>.
  e -= 2.0 * (phase * st * v_pa.dot(r_pp)).real();
  return e - 1.0;
}

double rm_expectation(const TwoQubitState& rho, double theta_sep) {
  if (theta_sep < 0.0 || theta_sep > M_PI / 2.0 + 1e-12) {
    throw std::domain_error("rm_expectation: theta_sep outside [0, pi/2]");
  }
  const double f = fidelity(rho, BellLabel::PsiMinus);
  return std::cos(theta_sep) * (1.0 / 3.0 - 4.0 / 3.0 * f);
}

double rm_expectation_numeric(const TwoQubitState& rho, double theta_sep,
                              int resolution, int threads) {
  if (resolution < 8) {
    throw std::invalid_argument("rm_expectation_numeric: resolution must be >= 8");
  }
  const int r = resolution;
  const int workers = resolve_threads(threads);

  // Midpoint rule per axis: u = cos(omega) over [-1, 1] absorbs the
  // sin(omega) sphere Jacobian; beta and alpha are full periods.
  auto slice_sum = [&](int u_begin, int u_end) {
    double sum = 0.0;
    for (int iu = u_begin; iu < u_end; ++iu) {
      const double u = -1.0 + (iu + 0.5) * 2.0 / r;
      const double omega = std::acos(u);
      for (int ib = 0; ib < r; ++ib) {
        const double beta = (ib + 0.5) * 2.0 * M_PI / r;
        const QubitPure alice = pure_from_angles(omega, beta);
        double inner = 0.0;
        for (int ia = 0; ia < r; ++ia) {
          const double alpha = (ia + 0.5) * 2.0 * M_PI / r;
          inner += rm_pair_expectation(rho, alice, alpha, theta_sep);
        }
        sum += inner;
      }
    }
    return sum;
  };

  std::vector<std::future<double>> jobs;
  const int chunk = (r + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(r, lo + chunk);
    if (lo >= hi) break;
    jobs.push_back(std::async(std::launch::async, slice_sum, lo, hi));
  }
  double total = 0.0;
  for (auto& job : jobs) total += job.get();
  return total / (static_cast<double>(r) * r * r);
}

Outcomes born_sample(std::mt19937_64& rng, const TwoQubitState& rho,
                     const QubitPure& alice_basis, const QubitPure& bob_basis) {
  const Mat4c& m = rho.rho();
  const Vec2c* av[2] = {&alice_basis.amp, &alice_basis.perp};
  const Vec2c* bv[2] = {&bob_basis.amp, &bob_basis.perp};
  double prob[4];
  double total = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Vec4c v = kron2(*av[i], *bv[j]);
      double p = form(m, v, v).real();
      if (p < -1e-10) {
        throw std::runtime_error("born_sample: negative outcome probability");
      }
      p = std::max(p, 0.0);
      prob[2 * i + j] = p;
      total += p;
    }
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::runtime_error("born_sample: outcome probabilities do not sum to 1");
  }
  const double u = canonical(rng) * total;
  double acc = 0.0;
  int idx = 3;
  for (int k = 0; k < 4; ++k) {
    acc += prob[k];
    if (u < acc) {
      idx = k;
      break;
    }
  }
  return {idx < 2 ? +1 : -1, (idx % 2 == 0) ? +1 : -1};
}

int bc_draw(std::mt19937_64& rng, const TwoQubitState& rho, const BcMeasurementSet& set) {
  const auto n_pairs = set.pairs.size();
  auto idx = static_cast<std::size_t>(canonical(rng) * static_cast<double>(n_pairs));
  if (idx >= n_pairs) idx = n_pairs - 1;
  const BcPair& pair = set.pairs[idx];
  const Outcomes o = born_sample(rng, rho, pair.alice.to_pure(), pair.bob.to_pure());
  return pair.sign * o.alice * o.bob;
}

int bc_draw(std::mt19937_64& rng, const TwoQubitState& rho, int n_param) {
  return bc_draw(rng, rho, bc_set(n_param));
}

int rm_draw(std::mt19937_64& rng, const TwoQubitState& rho, double theta_sep) {
  const RmPair pair = sample_rm_pair(rng, theta_sep);
  const Outcomes o = born_sample(rng, rho, pair.alice, pair.bob);
  return o.alice * o.bob;
}

}  // namespace singlet
