#include "fpsqrt/random.hpp"

#include <vector>

#include "fpsqrt/error.hpp"

namespace fpsqrt {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

RandomStream RandomStream::derive(std::uint64_t seed, std::uint64_t index) {
  return RandomStream(splitmix64(seed) ^ splitmix64(~index));
}

mpz_class RandomStream::uniform_bits(std::size_t bits) {
  if (bits == 0) return 0;
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  for (auto& w : buf) w = engine_();
  if (bits % 64 != 0) buf.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
  mpz_class out;
  // least significant word first, native endianness within words
  mpz_import(out.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
  return out;
}

mpz_class RandomStream::uniform_below(const mpz_class& bound) {
  if (bound <= 0) throw Error(ErrorKind::kBadParameter, "uniform_below needs a positive bound");
  if (bound == 1) return 0;
  const mpz_class top = bound - 1;
  const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
  for (;;) {
    mpz_class candidate = uniform_bits(bits);
    if (candidate < bound) return candidate;
  }
}

mpz_class RandomStream::uniform_range(const mpz_class& lo, const mpz_class& hi) {
  if (lo > hi) throw Error(ErrorKind::kBadParameter, "uniform_range with lo > hi");
  return lo + uniform_below(hi - lo + 1);
}

}  // namespace fpsqrt
