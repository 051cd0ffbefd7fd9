#include "singlet/qstate.hpp"

#include "singlet/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace singlet {

namespace {

double wrap_two_pi(double x) {
  x = std::fmod(x, 2.0 * M_PI);
  if (x < 0.0) x += 2.0 * M_PI;
  return x;
}

}  // namespace

QubitPure pure_from_angles(double omega, double beta) {
  double w = wrap_two_pi(omega);
  double b = wrap_two_pi(beta);
  if (w > M_PI) {  // southern chart: same point at (2pi - w, b + pi)
    w = 2.0 * M_PI - w;
    b = wrap_two_pi(b + M_PI);
  }
  QubitPure state;
  state.omega = w;
  state.beta = b;
  const double c = std::cos(w / 2.0);
  const double s = std::sin(w / 2.0);
  const cd phase = std::polar(1.0, b);
  state.amp << c, phase * s;
  state.perp << s, -phase * c;
  return state;
}

QubitPure pure_from_amplitudes(const Vec2c& amplitudes) {
  const double n = amplitudes.norm();
  if (std::abs(n - 1.0) > 1e-9) {
    throw std::invalid_argument("pure_from_amplitudes: vector not normalized");
  }
  const double omega = 2.0 * std::atan2(std::abs(amplitudes(1)), std::abs(amplitudes(0)));
  double beta = 0.0;
  if (std::abs(amplitudes(1)) > 0.0) {
    beta = std::arg(amplitudes(1)) - std::arg(amplitudes(0));
  }
  return pure_from_angles(omega, beta);
}

Vec4c bell_vector(BellLabel label) {
  const double r = 1.0 / std::sqrt(2.0);
  Vec4c v = Vec4c::Zero();
  switch (label) {
    case BellLabel::PhiPlus:
      v(0) = r;
      v(3) = r;
      break;
    case BellLabel::PhiMinus:
      v(0) = r;
      v(3) = -r;
      break;
    case BellLabel::PsiPlus:
      v(1) = r;
      v(2) = r;
      break;
    case BellLabel::PsiMinus:
      v(1) = r;
      v(2) = -r;
      break;
  }
  return v;
}

TwoQubitState TwoQubitState::from_matrix(const Mat4c& rho) {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    throw std::invalid_argument("TwoQubitState: matrix not Hermitian");
  }
  const cd tr = rho.trace();
  if (std::abs(tr - cd(1.0, 0.0)) > kTraceTol) {
    throw std::invalid_argument("TwoQubitState: trace != 1");
  }
  Eigen::SelfAdjointEigenSolver<Mat4c> solver((rho + rho.adjoint()) / 2.0);
  if (solver.eigenvalues().minCoeff() < kMinEigenvalue) {
    throw std::invalid_argument("TwoQubitState: matrix not positive semidefinite");
  }
  return TwoQubitState(rho);
}

TwoQubitState bell_state(BellLabel label) {
  const Vec4c v = bell_vector(label);
  return TwoQubitState::from_matrix(v * v.adjoint());
}

double fidelity(const TwoQubitState& rho, BellLabel label) {
  const Vec4c v = bell_vector(label);
  const cd f = v.dot(rho.rho() * v);
  if (std::abs(f.imag()) > 1e-12) {
    throw std::runtime_error("fidelity: non-real expectation value");
  }
  return f.real();
}

TwoQubitState werner_state(double delta) {
  if (delta < 0.0 || delta > 1.0) {
    throw std::domain_error("werner_state: delta outside [0,1]");
  }
  const Vec4c s = bell_vector(BellLabel::PsiMinus);
  const Mat4c rho =
      (1.0 - delta) * (s * s.adjoint()) + (delta / 4.0) * Mat4c::Identity();
  return TwoQubitState::from_matrix(rho);
}

TwoQubitState bell_diagonal(double w_psi_minus, double w_phi_plus,
                            double w_phi_minus, double w_psi_plus) {
  const double w[4] = {w_psi_minus, w_phi_plus, w_phi_minus, w_psi_plus};
  const BellLabel labels[4] = {BellLabel::PsiMinus, BellLabel::PhiPlus,
                               BellLabel::PhiMinus, BellLabel::PsiPlus};
  double total = 0.0;
  for (double x : w) {
    if (x < -1e-15) throw std::domain_error("bell_diagonal: negative weight");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::domain_error("bell_diagonal: weights must sum to 1");
  }
  Mat4c rho = Mat4c::Zero();
  for (int i = 0; i < 4; ++i) {
    const Vec4c v = bell_vector(labels[i]);
    rho += w[i] * (v * v.adjoint());
  }
  return TwoQubitState::from_matrix(rho);
}

Mat2c haar_su2(std::mt19937_64& rng) {
  cd a, b;
  double n2 = 0.0;
  do {
    const auto [g0, g1] = gauss_pair(rng);
    const auto [g2, g3] = gauss_pair(rng);
    a = cd(g0, g1);
    b = cd(g2, g3);
    n2 = std::norm(a) + std::norm(b);
  } while (n2 < 1e-12);
  const double inv = 1.0 / std::sqrt(n2);
  a *= inv;
  b *= inv;
  const cd phase = std::polar(1.0, uniform(rng, 0.0, 2.0 * M_PI));
  Mat2c u;
  u << a, -phase * std::conj(b), b, phase * std::conj(a);
  return u;
}

TwoQubitState twirl_analytic(const TwoQubitState& rho) {
  const double f = fidelity(rho, BellLabel::PsiMinus);
  const double eps = 1.0 - f;
  const Vec4c s = bell_vector(BellLabel::PsiMinus);
  const Mat4c proj = s * s.adjoint();
  const Mat4c out = f * proj + (eps / 3.0) * (Mat4c::Identity() - proj);
  return TwoQubitState::from_matrix(out);
}

TwoQubitState apply_local(const TwoQubitState& rho, const Mat2c& u_alice,
                          const Mat2c& u_bob) {
  const double dev_a = (u_alice.adjoint() * u_alice - Mat2c::Identity()).cwiseAbs().maxCoeff();
  const double dev_b = (u_bob.adjoint() * u_bob - Mat2c::Identity()).cwiseAbs().maxCoeff();
  if (dev_a > 1e-10 || dev_b > 1e-10) {
    throw std::invalid_argument("apply_local: factor is not unitary");
  }
  Mat4c u = Mat4c::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) u(2 * i + j, 2 * p + q) = u_alice(i, p) * u_bob(j, q);
  Mat4c out = u * rho.rho() * u.adjoint();
  out = (out + out.adjoint()) / 2.0;  // scrub rounding asymmetry
  return TwoQubitState::from_matrix(out);
}

TwoQubitState random_density(std::mt19937_64& rng) {
  Mat4c g;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const auto [re, im] = gauss_pair(rng);
      g(i, j) = cd(re, im);
    }
  }
  Mat4c rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) / 2.0;
  return TwoQubitState::from_matrix(rho);
}

}  // namespace singlet
