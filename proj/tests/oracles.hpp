#pragma once

// Test-only oracles, written with plain machine integers so that they share
// no code path with the library.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace fpsqrt::testing {

/// Sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

inline unsigned two_adic_valuation(std::uint64_t n) {
  unsigned e = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++e;
  }
  return e;
}

/// Exhaustive scan: canonical root of every a mod p, or nullopt for
/// non-residues.
class SquareTable {
 public:
  explicit SquareTable(std::uint64_t p) : p_(p), roots_(p) {
    for (std::uint64_t x = 0; x < p; ++x) {
      auto& slot = roots_[x * x % p];
      const std::uint64_t c = std::min(x, (p - x) % p);
      if (!slot || c < *slot) slot = c;
    }
  }
  std::uint64_t p() const { return p_; }
  const std::optional<std::uint64_t>& root(std::uint64_t a) const { return roots_[a % p_]; }
  bool is_residue(std::uint64_t a) const { return roots_[a % p_].has_value(); }

 private:
  std::uint64_t p_;
  std::vector<std::optional<std::uint64_t>> roots_;
};

/// |observed - expected| within k binomial standard deviations.
inline bool within_sigma(double observed, double expected, std::size_t n, double k) {
  const double sigma = std::sqrt(expected * (1 - expected) / static_cast<double>(n));
  return std::abs(observed - expected) <= k * sigma;
}

}  // namespace fpsqrt::testing
