#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace fpsqrt {

/// Seedable randomness stream. Every probabilistic routine takes one of these
/// by reference; there is no ambient generator anywhere in the library.
///
/// A stream is single-owner. Independent streams for parallel work are obtained
/// with derive(seed, index), which gives the same sequence on every platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  static RandomStream derive(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  mpz_class uniform_below(const mpz_class& bound);

  /// Uniform integer in [lo, hi]. Requires lo <= hi.
  mpz_class uniform_range(const mpz_class& lo, const mpz_class& hi);

  /// Uniform integer with exactly `bits` random low bits (top bit not forced).
  mpz_class uniform_bits(std::size_t bits);

 private:
  std::mt19937_64 engine_;
};

}  // namespace fpsqrt
