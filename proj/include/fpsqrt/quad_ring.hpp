#pragma once

#include <memory>
#include <string>

#include "fpsqrt/field.hpp"

namespace fpsqrt {

/// The quotient ring F_p[w]/(w^2 - d), d != 0.
///
/// With d a non-residue this is the field with p^2 elements (Cipolla); with d a
/// residue it splits as F_p x F_p and has zero divisors (Peralta). The
/// descriptor does not check which case applies.
class RingDescriptor {
 public:
  /// Throws kBadParameter when d == 0.
  static std::shared_ptr<const RingDescriptor> create(const FieldElement& d);

  const PrimeContextPtr& context() const noexcept { return d_.context(); }
  const FieldElement& d() const noexcept { return d_; }

  bool operator==(const RingDescriptor& other) const { return d_ == other.d_; }

 private:
  explicit RingDescriptor(FieldElement d) : d_(std::move(d)) {}
  FieldElement d_;
};

using RingPtr = std::shared_ptr<const RingDescriptor>;

/// c0 + c1*w.
class RingElement {
 public:
  RingElement(RingPtr ring, FieldElement c0, FieldElement c1);

  static RingElement one(const RingPtr& ring);

  const FieldElement& c0() const noexcept { return c0_; }
  const FieldElement& c1() const noexcept { return c1_; }
  const RingPtr& ring() const noexcept { return ring_; }

  bool operator==(const RingElement& rhs) const;
  bool operator!=(const RingElement& rhs) const { return !(*this == rhs); }

  /// "c0+c1*w mod p (w^2=d)"
  std::string to_string() const;

 private:
  RingPtr ring_;
  FieldElement c0_;
  FieldElement c1_;
};

/// Throws kRingMismatch when the operands live in different rings.
RingElement ring_mul(const RingElement& x, const RingElement& y);
RingElement ring_square(const RingElement& x);
RingElement ring_pow(const RingElement& x, const mpz_class& exponent);

/// c0 - c1*w. Equals the p-th power when d is a non-residue.
RingElement conjugate(const RingElement& x);

/// c0^2 - c1^2*d; zero exactly on zero divisors and zero.
FieldElement norm(const RingElement& x);

/// conjugate(x) / norm(x). Throws kNotInvertible on norm zero.
RingElement ring_inverse(const RingElement& x);

}  // namespace fpsqrt
