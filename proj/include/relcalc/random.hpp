#pragma once

#include <cstdint>

#include "relcalc/subspace.hpp"

namespace relcalc {

/// SplitMix64 stream with Box-Muller normals.
///
/// Every draw is specified bit-for-bit (no std:: distributions), so a seed
/// yields the same corpus on any platform or in any language that follows
/// the same recipe:
///   state += 0x9E3779B97F4A7C15; z = state;
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
///   out = z ^ (z >> 31)
/// uniform() = (out >> 11) * 2^-53, normal() = sqrt(-2 ln(1 - u1)) cos(2 pi u2).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Standard complex Gaussian: (N + iN) / sqrt(2).
  Complex complex_normal();

 private:
  std::uint64_t state_;
};

/// Independent child seed for sub-stream `stream` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

Matrix gaussian_matrix(Index rows, Index cols, Rng& rng);
/// Haar-distributed unitary (QR of a Gaussian matrix with phase-corrected R).
Matrix random_unitary(Index n, Rng& rng);
/// Uniformly distributed unit vector of the subspace F (zero vector if F = {0}).
Vector random_unit_in(const Frame& f, Rng& rng);

}  // namespace relcalc
