#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace singlet {

// All random sampling in this library goes through the helpers below so that
// a given seed reproduces the same stream on every standard library.

/// Uniform double in [0, 1) with 53 random bits.
inline double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * canonical(rng);
}

/// One pair of independent standard normals (Box-Muller).
inline std::pair<double, double> gauss_pair(std::mt19937_64& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double u2 = canonical(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

/// Uniform point on the unit sphere (area measure: cos of polar angle uniform).
inline Eigen::Vector3d uniform_sphere(std::mt19937_64& rng) {
  const double z = 1.0 - 2.0 * canonical(rng);
  const double phi = 2.0 * M_PI * canonical(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

/// SplitMix64 finalizer; full-avalanche mix of a 64-bit word.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a master seed and up to three
/// stream coordinates. Used to give every Monte Carlo trial its own engine so
/// results do not depend on scheduling or thread count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ (a + 0xA0761D6478BD642FULL));
  s = splitmix64(s ^ (b + 0xE7037ED1A0B428DBULL));
  s = splitmix64(s ^ (c + 0x8EBC6AF09C88C6E3ULL));
  return s;
}

}  // namespace singlet
