#pragma once

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace singlet {

using cd = std::complex<double>;
using Vec2c = Eigen::Vector2cd;
using Vec4c = Eigen::Vector4cd;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;

// Density-matrix validation tolerances.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kMinEigenvalue = -1e-10;

/// A projective qubit measurement basis, stored as the Bloch angles of its
/// +1 outcome state together with the derived amplitude vectors:
///   |psi>  = cos(omega/2)|0> + e^{i beta} sin(omega/2)|1>
///   |perp> = sin(omega/2)|0> - e^{i beta} cos(omega/2)|1>
struct QubitPure {
  double omega = 0.0;  // polar angle, canonical range [0, pi]
  double beta = 0.0;   // azimuthal phase, canonical range [0, 2pi)
  Vec2c amp = Vec2c::Zero();
  Vec2c perp = Vec2c::Zero();

  /// Bloch vector of the +1 outcome state.
  Eigen::Vector3d bloch() const {
    const double s = std::sin(omega);
    return {s * std::cos(beta), s * std::sin(beta), std::cos(omega)};
  }
};

/// Builds a qubit state from Bloch angles; out-of-range angles are wrapped
/// onto the canonical (omega, beta) chart of the sphere.
QubitPure pure_from_angles(double omega, double beta);

/// Recovers canonical angles from an amplitude vector (global phase dropped).
QubitPure pure_from_amplitudes(const Vec2c& amplitudes);

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// State vector of the labelled Bell state in the |00>,|01>,|10>,|11> basis.
Vec4c bell_vector(BellLabel label);

/// A two-qubit density matrix in the computational product basis
/// |00>,|01>,|10>,|11>. Instances are validated on construction (Hermitian,
/// unit trace, positive semidefinite) and immutable afterwards, so they are
/// safe to share across threads.
class TwoQubitState {
 public:
  /// Validates and wraps a 4x4 matrix; throws std::invalid_argument if it is
  /// not a density matrix within the module tolerances.
  static TwoQubitState from_matrix(const Mat4c& rho);

  const Mat4c& rho() const { return rho_; }

  /// Entry a_{ijpq} = <ij|rho|pq>, i,j,p,q in {0,1}.
  cd entry(int i, int j, int p, int q) const { return rho_(2 * i + j, 2 * p + q); }

 private:
  explicit TwoQubitState(Mat4c m) : rho_(std::move(m)) {}
  Mat4c rho_;
};

/// Rank-1 projector onto the labelled Bell state.
TwoQubitState bell_state(BellLabel label);

/// <bell|rho|bell>; real in [0,1].
double fidelity(const TwoQubitState& rho, BellLabel label);

/// Werner state (1-delta)|PsiMinus><PsiMinus| + (delta/4) I for delta in
/// [0,1]. Singlet fidelity is 1 - 3 delta / 4.
TwoQubitState werner_state(double delta);

/// Convex mixture of the four Bell projectors with the given weights
/// (order: PsiMinus, PhiPlus, PhiMinus, PsiPlus). Weights must be
/// nonnegative and sum to 1.
TwoQubitState bell_diagonal(double w_psi_minus, double w_phi_plus,
                            double w_phi_minus, double w_psi_plus);

/// Haar-random 2x2 unitary: first column uniform on the unit sphere of C^2,
/// second column its orthogonal completion with a uniform phase.
Mat2c haar_su2(std::mt19937_64& rng);

/// Isotropic twirl: with singlet fidelity 1 - eps, returns
/// (1-eps)|PsiMinus><PsiMinus| + (eps/3)(I - |PsiMinus><PsiMinus|).
TwoQubitState twirl_analytic(const TwoQubitState& rho);

/// (U_A (x) U_B) rho (U_A (x) U_B)^dagger. Rejects non-unitary factors.
TwoQubitState apply_local(const TwoQubitState& rho, const Mat2c& u_alice,
                          const Mat2c& u_bob);

/// Random density matrix from the Hilbert-Schmidt ensemble (G G^dagger
/// normalized, G complex Gaussian). Used by the verification suites.
TwoQubitState random_density(std::mt19937_64& rng);

}  // namespace singlet
