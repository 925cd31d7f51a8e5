#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fpsqrt/error.hpp"
#include "fpsqrt/random.hpp"

namespace fpsqrt {

/// An odd prime p together with p - 1 = 2^e * m, m odd.
///
/// Instances are immutable and shared through PrimeContextPtr; every
/// FieldElement keeps its context alive.
class PrimeContext {
 public:
  const mpz_class& p() const noexcept { return p_; }
  /// 2-adic valuation of p - 1.
  unsigned e() const noexcept { return e_; }
  /// Odd part of p - 1.
  const mpz_class& m() const noexcept { return m_; }
  std::size_t bits() const noexcept { return mpz_sizeinbase(p_.get_mpz_t(), 2); }

  bool operator==(const PrimeContext& other) const { return p_ == other.p_; }

 private:
  friend std::shared_ptr<const PrimeContext> decompose_two_adic(const mpz_class&);
  PrimeContext(mpz_class p, unsigned e, mpz_class m)
      : p_(std::move(p)), e_(e), m_(std::move(m)) {}

  mpz_class p_;
  unsigned e_;
  mpz_class m_;
};

using PrimeContextPtr = std::shared_ptr<const PrimeContext>;

/// Validates p as an odd prime (error < 2^-80) and splits p - 1 = 2^e * m.
/// Throws Error{kCompositeModulus} for anything else.
PrimeContextPtr decompose_two_adic(const mpz_class& p);

/// Residue modulo the context prime, always held in [0, p).
class FieldElement {
 public:
  FieldElement(PrimeContextPtr ctx, const mpz_class& value);
  FieldElement(PrimeContextPtr ctx, long value);

  static FieldElement zero(PrimeContextPtr ctx) { return {std::move(ctx), 0L}; }
  static FieldElement one(PrimeContextPtr ctx) { return {std::move(ctx), 1L}; }

  const mpz_class& value() const noexcept { return value_; }
  const PrimeContextPtr& context() const noexcept { return ctx_; }
  const mpz_class& modulus() const noexcept { return ctx_->p(); }

  bool is_zero() const noexcept { return value_ == 0; }
  bool is_one() const noexcept { return value_ == 1; }

  FieldElement operator+(const FieldElement& rhs) const;
  FieldElement operator-(const FieldElement& rhs) const;
  FieldElement operator*(const FieldElement& rhs) const;
  FieldElement operator-() const;
  FieldElement square() const { return *this * *this; }

  /// Multiplicative inverse; throws Error{kNotInvertible} on zero.
  FieldElement inverse() const;
  FieldElement operator/(const FieldElement& rhs) const { return *this * rhs.inverse(); }

  bool operator==(const FieldElement& rhs) const;
  bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }

  /// Lowercase, no leading zeros. base is 10 or 16.
  std::string to_string(int base = 10) const;

 private:
  struct Reduced {};
  FieldElement(PrimeContextPtr ctx, mpz_class value, Reduced)
      : ctx_(std::move(ctx)), value_(std::move(value)) {}

  void require_same_field(const FieldElement& rhs) const;

  PrimeContextPtr ctx_;
  mpz_class value_;
};

/// Parses decimal, or hexadecimal with a 0x prefix. Throws Error{kParseError}.
mpz_class parse_integer(const std::string& text);

enum class Algorithm {
  kAuto,
  kDirect,
  kTonelli,
  kTonelliQr,
  kCipolla,
  kPeraltaOne,
  kPeraltaTwo,
  kCurveBasic,
  kCurveEnhanced,
  kCurveTonelli,
  kCurveCipolla,
};

std::string to_string(Algorithm algorithm);
/// Accepts the CLI tags ("tonelli-qr", "curve-basic", ...). Throws kParseError.
Algorithm parse_algorithm(const std::string& tag);

/// Result of every square-root routine. root is canonical: root <= p - root.
struct SqrtOutcome {
  FieldElement root;
  unsigned retries = 0;
  Algorithm algorithm = Algorithm::kAuto;
};

/// Probabilistic loops give up after this many unsuccessful trials.
inline constexpr unsigned kRetryCap = 128;

/// base^exponent by left-to-right square-and-multiply.
FieldElement mod_pow(const FieldElement& base, const mpz_class& exponent);

/// Legendre symbol through Euler's criterion: 0, +1 or -1.
int legendre(const FieldElement& a);

/// Jacobi symbol (a/n) for odd n >= 3 by the binary reciprocity algorithm.
int jacobi(const mpz_class& a, const mpz_class& n);

/// min(x, p - x).
FieldElement canonical(const FieldElement& x);

/// Closed-form roots for p = 3 (mod 4) and p = 5 (mod 8).
/// Throws kNonResidue, or kWrongValuation when e >= 3.
SqrtOutcome sqrt_direct(const FieldElement& a);

enum class NonResidueStrategy {
  kRandom,      // uniform draws from [2, p - 1], Euler criterion
  kSequential,  // 2, 3, 5, 7, ... tested with the Jacobi symbol
};

struct NonResidueSearch {
  FieldElement n;
  /// Candidates that turned out to be residues before n was found.
  unsigned retries = 0;
};

/// Throws kRetryLimitExceeded after kRetryCap residues (random strategy only).
NonResidueSearch find_nonresidue(const PrimeContextPtr& ctx, NonResidueStrategy strategy,
                                 RandomStream& rng);

/// Upper bound on p accepted by brute_force_sqrt.
inline constexpr std::uint64_t kBruteForceLimit = std::uint64_t{1} << 20;

/// All x in [0, p) with x^2 = a, ascending, by exhaustive scan.
/// Throws kModulusTooLarge when p > 2^20.
std::vector<FieldElement> brute_force_sqrt(const FieldElement& a);

/// Uniform over [0, p), or [1, p) when nonzero is set.
FieldElement sample_field_element(const PrimeContextPtr& ctx, RandomStream& rng, bool nonzero);

/// Throws kNonResidue unless legendre(a) != -1. Shared by all solvers.
void require_residue(const FieldElement& a);

}  // namespace fpsqrt
