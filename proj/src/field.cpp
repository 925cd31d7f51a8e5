#include "fpsqrt/field.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace fpsqrt {
namespace {

// GMP's combined BPSW + Miller-Rabin; 40 rounds keeps the error below 4^-40.
constexpr int kPrimalityReps = 40;

void reduce(mpz_class& v, const mpz_class& p) {
  mpz_mod(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
}

bool is_small_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

PrimeContextPtr decompose_two_adic(const mpz_class& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()) ||
      mpz_probab_prime_p(p.get_mpz_t(), kPrimalityReps) == 0) {
    throw Error(ErrorKind::kCompositeModulus, p.get_str() + " is not an odd prime");
  }
  mpz_class m = p - 1;
  const auto e = static_cast<unsigned>(mpz_scan1(m.get_mpz_t(), 0));
  mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), e);
  return PrimeContextPtr(new PrimeContext(p, e, std::move(m)));
}

FieldElement::FieldElement(PrimeContextPtr ctx, const mpz_class& value)
    : ctx_(std::move(ctx)), value_(value) {
  reduce(value_, ctx_->p());
}

FieldElement::FieldElement(PrimeContextPtr ctx, long value)
    : FieldElement(std::move(ctx), mpz_class(value)) {}

void FieldElement::require_same_field(const FieldElement& rhs) const {
  if (ctx_ != rhs.ctx_ && !(*ctx_ == *rhs.ctx_)) {
    throw Error(ErrorKind::kContextMismatch, "operands belong to different prime fields");
  }
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
  require_same_field(rhs);
  mpz_class v = value_ + rhs.value_;
  if (v >= ctx_->p()) v -= ctx_->p();
  return {ctx_, std::move(v), Reduced{}};
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
  require_same_field(rhs);
  mpz_class v = value_ - rhs.value_;
  if (v < 0) v += ctx_->p();
  return {ctx_, std::move(v), Reduced{}};
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
  require_same_field(rhs);
  mpz_class v;
  mpz_mul(v.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
  mpz_tdiv_r(v.get_mpz_t(), v.get_mpz_t(), ctx_->p().get_mpz_t());
  return {ctx_, std::move(v), Reduced{}};
}

FieldElement FieldElement::operator-() const {
  if (value_ == 0) return *this;
  return {ctx_, ctx_->p() - value_, Reduced{}};
}

FieldElement FieldElement::inverse() const {
  mpz_class v;
  if (value_ == 0 || mpz_invert(v.get_mpz_t(), value_.get_mpz_t(), ctx_->p().get_mpz_t()) == 0) {
    throw Error(ErrorKind::kNotInvertible, "zero has no inverse mod " + ctx_->p().get_str());
  }
  return {ctx_, std::move(v), Reduced{}};
}

bool FieldElement::operator==(const FieldElement& rhs) const {
  return value_ == rhs.value_ && (ctx_ == rhs.ctx_ || *ctx_ == *rhs.ctx_);
}

std::string FieldElement::to_string(int base) const { return value_.get_str(base); }

mpz_class parse_integer(const std::string& text) {
  std::string digits = text;
  int base = 10;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    digits = digits.substr(2);
    base = 16;
  }
  const bool ok = !digits.empty() && std::all_of(digits.begin(), digits.end(), [base](char c) {
    return base == 16 ? std::isxdigit(static_cast<unsigned char>(c)) != 0
                      : std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
  mpz_class out;
  if (!ok || out.set_str(digits, base) != 0) {
    throw Error(ErrorKind::kParseError, "not a nonnegative integer: '" + text + "'");
  }
  return out;
}

namespace {

constexpr std::array<std::pair<Algorithm, const char*>, 11> kAlgorithmTags{{
    {Algorithm::kAuto, "auto"},
    {Algorithm::kDirect, "direct"},
    {Algorithm::kTonelli, "tonelli"},
    {Algorithm::kTonelliQr, "tonelli-qr"},
    {Algorithm::kCipolla, "cipolla"},
    {Algorithm::kPeraltaOne, "peralta1"},
    {Algorithm::kPeraltaTwo, "peralta2"},
    {Algorithm::kCurveBasic, "curve-basic"},
    {Algorithm::kCurveEnhanced, "curve-enhanced"},
    {Algorithm::kCurveTonelli, "curve-tonelli"},
    {Algorithm::kCurveCipolla, "curve-cipolla"},
}};

}  // namespace

std::string to_string(Algorithm algorithm) {
  for (const auto& [alg, tag] : kAlgorithmTags) {
    if (alg == algorithm) return tag;
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& tag) {
  for (const auto& [alg, name] : kAlgorithmTags) {
    if (tag == name) return alg;
  }
  throw Error(ErrorKind::kParseError, "unknown algorithm tag '" + tag + "'");
}

FieldElement mod_pow(const FieldElement& base, const mpz_class& exponent) {
  if (exponent < 0) throw Error(ErrorKind::kBadParameter, "negative exponent");
  const mpz_class& p = base.modulus();
  mpz_class acc = 1;
  const std::size_t bits = exponent == 0 ? 0 : mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    mpz_mul(acc.get_mpz_t(), acc.get_mpz_t(), acc.get_mpz_t());
    mpz_tdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), p.get_mpz_t());
    if (mpz_tstbit(exponent.get_mpz_t(), i) != 0) {
      mpz_mul(acc.get_mpz_t(), acc.get_mpz_t(), base.value().get_mpz_t());
      mpz_tdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), p.get_mpz_t());
    }
  }
  return {base.context(), acc};
}

int legendre(const FieldElement& a) {
  if (a.is_zero()) return 0;
  const mpz_class& p = a.modulus();
  const FieldElement euler = mod_pow(a, (p - 1) / 2);
  if (euler.is_one()) return 1;
  if (euler.value() == p - 1) return -1;
  throw Error(ErrorKind::kInternalInvariantViolation,
              "Euler criterion gave neither 1 nor -1; modulus is not prime");
}

int jacobi(const mpz_class& a_in, const mpz_class& n_in) {
  if (n_in < 3 || mpz_even_p(n_in.get_mpz_t())) {
    throw Error(ErrorKind::kBadParameter, "Jacobi symbol needs an odd modulus >= 3");
  }
  mpz_class a;
  mpz_class n = n_in;
  mpz_mod(a.get_mpz_t(), a_in.get_mpz_t(), n.get_mpz_t());
  int t = 1;
  while (a != 0) {
    const auto twos = mpz_scan1(a.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), twos);
    const unsigned long n8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
    if ((twos & 1) != 0 && (n8 == 3 || n8 == 5)) t = -t;
    std::swap(a, n);
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) t = -t;
    mpz_mod(a.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  }
  return n == 1 ? t : 0;
}

FieldElement canonical(const FieldElement& x) {
  const FieldElement neg = -x;
  return neg.value() < x.value() ? neg : x;
}

void require_residue(const FieldElement& a) {
  if (legendre(a) == -1) {
    throw Error(ErrorKind::kNonResidue,
                a.to_string() + " is not a square mod " + a.modulus().get_str());
  }
}

SqrtOutcome sqrt_direct(const FieldElement& a) {
  require_residue(a);
  const auto& ctx = a.context();
  const mpz_class& p = ctx->p();
  if (a.is_zero()) return {a, 0, Algorithm::kDirect};
  if (ctx->e() == 1) {
    return {canonical(mod_pow(a, (p + 1) / 4)), 0, Algorithm::kDirect};
  }
  if (ctx->e() == 2) {
    if (mod_pow(a, (p - 1) / 4).is_one()) {
      return {canonical(mod_pow(a, (p + 3) / 8)), 0, Algorithm::kDirect};
    }
    const FieldElement two(ctx, 2L);
    const FieldElement four(ctx, 4L);
    const FieldElement x = two * a * mod_pow(four * a, (p - 5) / 8);
    return {canonical(x), 0, Algorithm::kDirect};
  }
  throw Error(ErrorKind::kWrongValuation, "closed-form root needs p = 3 mod 4 or p = 5 mod 8");
}

NonResidueSearch find_nonresidue(const PrimeContextPtr& ctx, NonResidueStrategy strategy,
                                 RandomStream& rng) {
  const mpz_class& p = ctx->p();
  unsigned misses = 0;
  if (strategy == NonResidueStrategy::kSequential) {
    for (unsigned long n = 2;; ++n) {
      if (!is_small_prime(n)) continue;
      if (jacobi(mpz_class(n), p) == -1) return {FieldElement(ctx, static_cast<long>(n)), misses};
      ++misses;
    }
  }
  while (misses < kRetryCap) {
    FieldElement n(ctx, rng.uniform_range(2, p - 1));
    if (legendre(n) == -1) return {std::move(n), misses};
    ++misses;
  }
  throw Error(ErrorKind::kRetryLimitExceeded, "no non-residue found");
}

std::vector<FieldElement> brute_force_sqrt(const FieldElement& a) {
  const mpz_class& p = a.modulus();
  if (p > kBruteForceLimit) {
    throw Error(ErrorKind::kModulusTooLarge, "exhaustive scan limited to p <= 2^20");
  }
  const std::uint64_t q = p.get_ui();
  const std::uint64_t target = a.value().get_ui();
  std::vector<FieldElement> roots;
  for (std::uint64_t x = 0; x < q; ++x) {
    if (x * x % q == target) roots.emplace_back(a.context(), static_cast<long>(x));
  }
  return roots;
}

FieldElement sample_field_element(const PrimeContextPtr& ctx, RandomStream& rng, bool nonzero) {
  if (nonzero) return {ctx, rng.uniform_range(1, ctx->p() - 1)};
  return {ctx, rng.uniform_below(ctx->p())};
}

}  // namespace fpsqrt
