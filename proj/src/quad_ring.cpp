#include "fpsqrt/quad_ring.hpp"

namespace fpsqrt {
namespace {

void require_same_ring(const RingElement& x, const RingElement& y) {
  if (x.ring() != y.ring() && !(*x.ring() == *y.ring())) {
    throw Error(ErrorKind::kRingMismatch, x.to_string() + " and " + y.to_string());
  }
}

}  // namespace

std::shared_ptr<const RingDescriptor> RingDescriptor::create(const FieldElement& d) {
  if (d.is_zero()) throw Error(ErrorKind::kBadParameter, "w^2 = 0 is not supported");
  return std::shared_ptr<const RingDescriptor>(new RingDescriptor(d));
}

RingElement::RingElement(RingPtr ring, FieldElement c0, FieldElement c1)
    : ring_(std::move(ring)), c0_(std::move(c0)), c1_(std::move(c1)) {
  if (!(*c0_.context() == *ring_->context()) || !(*c1_.context() == *ring_->context())) {
    throw Error(ErrorKind::kContextMismatch, "ring coefficients from another field");
  }
}

RingElement RingElement::one(const RingPtr& ring) {
  return {ring, FieldElement::one(ring->context()), FieldElement::zero(ring->context())};
}

bool RingElement::operator==(const RingElement& rhs) const {
  return c0_ == rhs.c0_ && c1_ == rhs.c1_ && *ring_ == *rhs.ring_;
}

std::string RingElement::to_string() const {
  return c0_.to_string() + "+" + c1_.to_string() + "*w mod " + c0_.modulus().get_str() +
         " (w^2=" + ring_->d().to_string() + ")";
}

RingElement ring_mul(const RingElement& x, const RingElement& y) {
  require_same_ring(x, y);
  const FieldElement& d = x.ring()->d();
  return {x.ring(), x.c0() * y.c0() + x.c1() * y.c1() * d, x.c0() * y.c1() + x.c1() * y.c0()};
}

RingElement ring_square(const RingElement& x) {
  const FieldElement& d = x.ring()->d();
  const FieldElement cross = x.c0() * x.c1();
  return {x.ring(), x.c0().square() + x.c1().square() * d, cross + cross};
}

RingElement ring_pow(const RingElement& x, const mpz_class& exponent) {
  if (exponent < 0) throw Error(ErrorKind::kBadParameter, "negative exponent");
  RingElement acc = RingElement::one(x.ring());
  const std::size_t bits = exponent == 0 ? 0 : mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = ring_square(acc);
    if (mpz_tstbit(exponent.get_mpz_t(), i) != 0) acc = ring_mul(acc, x);
  }
  return acc;
}

RingElement conjugate(const RingElement& x) { return {x.ring(), x.c0(), -x.c1()}; }

FieldElement norm(const RingElement& x) {
  return x.c0().square() - x.c1().square() * x.ring()->d();
}

RingElement ring_inverse(const RingElement& x) {
  const FieldElement n = norm(x);
  if (n.is_zero()) throw Error(ErrorKind::kNotInvertible, x.to_string() + " is a zero divisor");
  const FieldElement scale = n.inverse();
  const RingElement bar = conjugate(x);
  return {x.ring(), bar.c0() * scale, bar.c1() * scale};
}

}  // namespace fpsqrt
