#include "fpsqrt/classical.hpp"

#include "fpsqrt/quad_ring.hpp"

namespace fpsqrt {
namespace {

FieldElement checked_root(const FieldElement& root, const FieldElement& a) {
  if (root.square() != a) {
    throw Error(ErrorKind::kInternalInvariantViolation,
                root.to_string() + " does not square to " + a.to_string());
  }
  return canonical(root);
}

void require_sylow_generator(const FieldElement& z) {
  const auto& ctx = z.context();
  FieldElement t = z;
  for (unsigned i = 1; i < ctx->e(); ++i) t = t.square();
  if (t != -FieldElement::one(ctx)) {
    throw Error(ErrorKind::kBadParameter, z.to_string() + " does not have order 2^e");
  }
}

}  // namespace

mpz_class sylow_dlog(const FieldElement& b, const FieldElement& z) {
  require_sylow_generator(z);
  const auto& ctx = z.context();
  const unsigned e = ctx->e();
  const FieldElement minus_one = -FieldElement::one(ctx);

  // Invariant: quotient = b * z^(-r) for the bits of r fixed so far.
  FieldElement quotient = b;
  FieldElement step = z.inverse();  // z^(-2^i)
  mpz_class r = 0;
  for (unsigned i = 0; i < e; ++i) {
    FieldElement probe = quotient;
    for (unsigned k = i + 1; k < e; ++k) probe = probe.square();
    if (probe == minus_one) {
      quotient = quotient * step;
      mpz_setbit(r.get_mpz_t(), i);
    } else if (!probe.is_one()) {
      throw Error(ErrorKind::kNotInSubgroup, b.to_string() + " is outside <z>");
    }
    step = step.square();
  }
  if (!quotient.is_one()) {
    throw Error(ErrorKind::kNotInSubgroup, b.to_string() + " is outside <z>");
  }
  return r;
}

mpz_class sylow_dlog_naive(const FieldElement& b, const FieldElement& z) {
  const auto& ctx = z.context();
  if (ctx->e() > 20) throw Error(ErrorKind::kBadParameter, "enumeration limited to e <= 20");
  const unsigned long order = 1UL << ctx->e();
  FieldElement power = FieldElement::one(ctx);
  for (unsigned long r = 0; r < order; ++r) {
    if (power == b) return r;
    power = power * z;
  }
  throw Error(ErrorKind::kNotInSubgroup, b.to_string() + " is outside <z>");
}

FieldElement tonelli_shanks_with(const FieldElement& a, const FieldElement& n) {
  const auto& ctx = a.context();
  const mpz_class& m = ctx->m();
  const FieldElement z = mod_pow(n, m);
  const FieldElement b = mod_pow(a, m);
  const mpz_class r = sylow_dlog(b, z);
  if (mpz_odd_p(r.get_mpz_t()) != 0) {
    throw Error(ErrorKind::kInternalInvariantViolation, "odd discrete log for a residue");
  }
  const FieldElement x = mod_pow(a, (m + 1) / 2) * mod_pow(z.inverse(), r / 2);
  return checked_root(x, a);
}

SqrtOutcome tonelli_shanks(const FieldElement& a, RandomStream& rng, NonResidueStrategy strategy) {
  require_residue(a);
  const Algorithm tag =
      strategy == NonResidueStrategy::kRandom ? Algorithm::kTonelli : Algorithm::kTonelliQr;
  if (a.is_zero()) return {a, 0, tag};
  const NonResidueSearch search = find_nonresidue(a.context(), strategy, rng);
  return {tonelli_shanks_with(a, search.n), search.retries, tag};
}

FieldElement cipolla_with(const FieldElement& a, const FieldElement& t) {
  const FieldElement d = t.square() - a;
  if (legendre(d) != -1) {
    throw Error(ErrorKind::kBadParameter, "t^2 - a must be a non-residue");
  }
  const auto ring = RingDescriptor::create(d);
  const RingElement base(ring, t, FieldElement::one(a.context()));
  const RingElement x = ring_pow(base, (a.modulus() + 1) / 2);
  if (!x.c1().is_zero()) {
    throw Error(ErrorKind::kInternalInvariantViolation, "Cipolla power left F_p: " + x.to_string());
  }
  return checked_root(x.c0(), a);
}

SqrtOutcome cipolla(const FieldElement& a, RandomStream& rng) {
  require_residue(a);
  if (a.is_zero()) return {a, 0, Algorithm::kCipolla};
  for (unsigned retries = 0; retries < kRetryCap; ++retries) {
    const FieldElement t = sample_field_element(a.context(), rng, false);
    if (legendre(t.square() - a) == -1) return {cipolla_with(a, t), retries, Algorithm::kCipolla};
  }
  throw Error(ErrorKind::kRetryLimitExceeded, "Cipolla: no t with t^2 - a a non-residue");
}

std::optional<FieldElement> peralta_one_trial(const FieldElement& a, const FieldElement& r) {
  if (r.square() == a) return checked_root(r, a);
  const auto ring = RingDescriptor::create(a);
  const RingElement base(ring, r, FieldElement::one(a.context()));
  const RingElement x = ring_pow(base, (a.modulus() - 1) / 2);
  if (!x.c0().is_zero() || x.c1().is_zero()) return std::nullopt;
  return checked_root(x.c1().inverse(), a);
}

SqrtOutcome peralta_one(const FieldElement& a, RandomStream& rng) {
  require_residue(a);
  if (a.is_zero()) return {a, 0, Algorithm::kPeraltaOne};
  for (unsigned retries = 0; retries < kRetryCap; ++retries) {
    const FieldElement r = sample_field_element(a.context(), rng, true);
    if (auto root = peralta_one_trial(a, r)) return {*root, retries, Algorithm::kPeraltaOne};
  }
  throw Error(ErrorKind::kRetryLimitExceeded, "Peralta I: every trial failed");
}

std::optional<FieldElement> peralta_two_trial(const FieldElement& a, const FieldElement& r) {
  const auto& ctx = a.context();
  const FieldElement d = -a;
  if (r.is_zero() || r.square() == d) return std::nullopt;
  const auto ring = RingDescriptor::create(d);
  RingElement x = ring_pow(RingElement(ring, r, FieldElement::one(ctx)), ctx->m());
  if (x.c0().is_zero() || x.c1().is_zero()) return std::nullopt;
  for (unsigned i = 1; i <= ctx->e(); ++i) {
    RingElement next = ring_square(x);
    // (k + l w)^2 = (k^2 - l^2 a) + 2kl w, so a vanishing c0 gives (k/l)^2 = a.
    if (next.c0().is_zero()) return checked_root(x.c0() / x.c1(), a);
    x = std::move(next);
  }
  return std::nullopt;
}

SqrtOutcome peralta_two(const FieldElement& a, RandomStream& rng) {
  require_residue(a);
  if (a.is_zero()) return {a, 0, Algorithm::kPeraltaTwo};
  if (a.context()->e() < 2) {
    throw Error(ErrorKind::kWrongValuation, "Peralta II needs p = 1 mod 4");
  }
  for (unsigned retries = 0; retries < kRetryCap; ++retries) {
    const FieldElement r = sample_field_element(a.context(), rng, true);
    if (auto root = peralta_two_trial(a, r)) return {*root, retries, Algorithm::kPeraltaTwo};
  }
  throw Error(ErrorKind::kRetryLimitExceeded, "Peralta II: every trial failed");
}

}  // namespace fpsqrt
