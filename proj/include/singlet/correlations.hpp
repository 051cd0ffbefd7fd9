#pragma once

#include "singlet/qstate.hpp"

#include <random>
#include <vector>

namespace singlet {

/// Real-plane projective measurement {|m_theta>, |m_{theta+pi/2}>} with
/// |m_theta> = cos(theta)|0> + sin(theta)|1>.
struct PlanarBasis {
  double theta_plane = 0.0;

  /// The same measurement as a QubitPure basis (Bloch polar angle is twice
  /// the plane angle, in the x-z plane).
  QubitPure to_pure() const { return pure_from_angles(2.0 * theta_plane, 0.0); }

  /// Bloch direction of the +1 outcome.
  Eigen::Vector3d bloch() const {
    return {std::sin(2.0 * theta_plane), 0.0, std::cos(2.0 * theta_plane)};
  }
};

struct BcPair {
  PlanarBasis alice;
  PlanarBasis bob;
  int sign = +1;  // -1 only on the wrap-around pair (a_0, b_{N-1})
};

/// The 2N Braunstein-Caves measurement pairs for parameter N:
/// {(a_k,b_k)}, {(a_{k+1},b_k)} and the sign-flipped (a_0,b_{N-1}), with
/// Alice angles k pi/2N and Bob angles (2k+1) pi/4N.
struct BcMeasurementSet {
  int n_param = 0;
  std::vector<BcPair> pairs;
};

BcMeasurementSet bc_set(int n_param);

/// Expected outcome correlation when Alice measures the plane basis at angle
/// theta and Bob at angle phi (closed form in the entries a_{ijpq}).
double planar_correlation(const TwoQubitState& rho, double theta, double phi);

/// E[C-hat]: closed form cos(pi/2N)(<PhiPlus> - <PsiMinus>).
double bc_expectation(const TwoQubitState& rho, int n_param);

/// E[C-hat] by direct signed average of planar_correlation over bc_set(N).
/// Cross-check route for bc_expectation; the two agree to 1e-10.
double bc_expectation_summed(const TwoQubitState& rho, int n_param);

/// A sampled pair of random-measurement bases. theta_sep is the separation
/// angle between the two Bloch vectors, so the state overlap is
/// |<psi_A|psi_B>| = cos(theta_sep / 2).
struct RmPair {
  QubitPure alice;
  QubitPure bob;
  double theta_sep = 0.0;
  double alpha = 0.0;
};

/// Bob's basis for a given Alice basis, relative phase alpha and separation
/// theta_sep: |psi_B> = cos(theta/2)|psi_A> + e^{i alpha} sin(theta/2)|psi_A_perp>.
RmPair rm_pair_from(const QubitPure& alice, double alpha, double theta_sep);

/// Alice uniform on the Bloch sphere, alpha uniform on [0, 2pi).
RmPair sample_rm_pair(std::mt19937_64& rng, double theta_sep);

/// Expected correlation for a fixed (alice, alpha, theta_sep) choice,
/// evaluated term by term from the product-state matrix elements.
double rm_pair_expectation(const TwoQubitState& rho, const QubitPure& alice,
                           double alpha, double theta_sep);

/// E[O-hat]: closed form cos(theta)(1/3 - (4/3)<PsiMinus|rho|PsiMinus>).
double rm_expectation(const TwoQubitState& rho, double theta_sep);

/// Brute-force check of rm_expectation: averages rm_pair_expectation over a
/// (cos omega, beta, alpha) midpoint grid with `resolution` nodes per axis.
/// Agrees with the closed form to 1e-3 at the default resolution of 200.
double rm_expectation_numeric(const TwoQubitState& rho, double theta_sep,
                              int resolution = 200, int threads = 0);

struct Outcomes {
  int alice = 0;  // +1 or -1
  int bob = 0;
};

/// Samples the joint four-outcome Born distribution of the two projective
/// measurements.
Outcomes born_sample(std::mt19937_64& rng, const TwoQubitState& rho,
                     const QubitPure& alice_basis, const QubitPure& bob_basis);

/// One Braunstein-Caves sample: uniform pair from the set, Born sample,
/// sign flag applied.
int bc_draw(std::mt19937_64& rng, const TwoQubitState& rho, const BcMeasurementSet& set);
int bc_draw(std::mt19937_64& rng, const TwoQubitState& rho, int n_param);

/// One random-measurement sample: fresh pair, Born sample, outcome product.
int rm_draw(std::mt19937_64& rng, const TwoQubitState& rho, double theta_sep);

}  // namespace singlet
