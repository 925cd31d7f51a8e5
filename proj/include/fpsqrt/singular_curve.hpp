#pragma once

#include <optional>
#include <string>
#include <variant>

#include "fpsqrt/field.hpp"

namespace fpsqrt {

/// The nodal cubic E: y^2 = x (x + a)^2 over F_p, a a nonzero square.
///
/// Its non-singular points form a cyclic group of order p - 1 when p = 1 mod 4.
/// The node sits at (-a, 0); (0, 0) is the unique point of order 2 and the
/// points of order 4 are (a, +-2a*sqrt(a)).
///
/// Substituting x = x1 - 2a/3 gives the short Weierstrass form
/// y^2 = x1^3 + A x1 + B with A = -a^2/3, B = -2a^3/27, which is where the
/// inversion-free projective formulas run.
class CurveParams {
 public:
  const PrimeContextPtr& context() const noexcept { return a_.context(); }
  const FieldElement& a() const noexcept { return a_; }
  const FieldElement& A() const noexcept { return A_; }
  const FieldElement& B() const noexcept { return B_; }
  /// 2a/3: x1 = x + shift().
  const FieldElement& shift() const noexcept { return shift_; }

 private:
  friend CurveParams make_curve(const FieldElement& a);
  CurveParams(FieldElement a, FieldElement A, FieldElement B, FieldElement shift)
      : a_(std::move(a)), A_(std::move(A)), B_(std::move(B)), shift_(std::move(shift)) {}

  FieldElement a_;
  FieldElement A_;
  FieldElement B_;
  FieldElement shift_;
};

/// Throws kBadCharacteristic for p = 3, kNonResidue unless legendre(a) = +1,
/// kBadParameter for a = 0.
CurveParams make_curve(const FieldElement& a);

struct AffineCoords {
  FieldElement x;
  FieldElement y;
};

/// Homogeneous coordinates of the direct model: (X:Y:Z) ~ (X/Z, Y/Z).
struct ProjectiveCoords {
  FieldElement X;
  FieldElement Y;
  FieldElement Z;
};

class CurvePoint {
 public:
  static CurvePoint infinity() { return CurvePoint(Infinity{}); }
  static CurvePoint affine(FieldElement x, FieldElement y) {
    return CurvePoint(AffineCoords{std::move(x), std::move(y)});
  }
  /// Z = 0 is accepted only as (0:1:0), i.e. infinity.
  static CurvePoint projective(FieldElement X, FieldElement Y, FieldElement Z);

  bool is_infinity() const;
  bool is_affine() const { return std::holds_alternative<AffineCoords>(repr_); }
  bool is_projective() const { return std::holds_alternative<ProjectiveCoords>(repr_); }

  const AffineCoords& as_affine() const { return std::get<AffineCoords>(repr_); }
  const ProjectiveCoords& as_projective() const { return std::get<ProjectiveCoords>(repr_); }

  /// Compares after normalization.
  bool operator==(const CurvePoint& rhs) const;
  bool operator!=(const CurvePoint& rhs) const { return !(*this == rhs); }

  /// "(x, y) mod p" or "infinity".
  std::string to_string() const;

 private:
  struct Infinity {};
  explicit CurvePoint(std::variant<Infinity, AffineCoords, ProjectiveCoords> repr)
      : repr_(std::move(repr)) {}

  std::variant<Infinity, AffineCoords, ProjectiveCoords> repr_;
};

/// Affine form (one inversion) or infinity.
CurvePoint normalize(const CurvePoint& pt);

bool is_on_curve(const CurvePoint& pt, const CurveParams& curve);

CurvePoint negate(const CurvePoint& pt);

/// Chord-and-tangent law on y^2 = x(x+a)^2 itself.
CurvePoint add_affine(const CurvePoint& P, const CurvePoint& Q, const CurveParams& curve);

/// Inversion-free addition on the shifted model; the result is projective.
CurvePoint add_projective(const CurvePoint& P, const CurvePoint& Q, const CurveParams& curve);

enum class Coordinates { kAffine, kProjective };

/// Left-to-right double-and-add.
CurvePoint scalar_mul(const mpz_class& k, const CurvePoint& P, const CurveParams& curve,
                      Coordinates coords = Coordinates::kProjective);

/// (t^2, t(t^2 + a)). Throws kBadParameter for t = 0 or t^2 = -a.
CurvePoint point_from_parameter(const FieldElement& t, const CurveParams& curve);

/// Closed form of 2 * point_from_parameter(t):
/// ((a - t^2)^2 / 4t^2, (t^2 + a)^2 (t^2 - a) / 8t^3).
CurvePoint double_via_parameter(const FieldElement& t, const CurveParams& curve);

/// For T = (a, w) of order 4 returns canonical w / 2a. Throws kNotFourTorsion.
FieldElement extract_root(const CurvePoint& T, const CurveParams& curve);

/// One trial of each curve method for a fixed point R. nullopt means the
/// trial failed and a new R is needed.
std::optional<FieldElement> basic_trial(const CurvePoint& R, const CurveParams& curve,
                                        Coordinates coords = Coordinates::kProjective);
std::optional<FieldElement> enhanced_trial(const CurvePoint& R, const CurveParams& curve,
                                           Coordinates coords = Coordinates::kProjective);
std::optional<FieldElement> tonelli_trial(const CurvePoint& R, const CurveParams& curve,
                                          Coordinates coords = Coordinates::kProjective);

/// All four need e >= 2 (kWrongValuation otherwise) and a residue a.
SqrtOutcome sqrt_singular_basic(const FieldElement& a, RandomStream& rng,
                                Coordinates coords = Coordinates::kProjective);
SqrtOutcome sqrt_singular_enhanced(const FieldElement& a, RandomStream& rng,
                                   Coordinates coords = Coordinates::kProjective);
SqrtOutcome sqrt_singular_tonelli(const FieldElement& a, RandomStream& rng,
                                  Coordinates coords = Coordinates::kProjective);
/// Retries count only the search for t with t^2 + a a non-residue; after
/// that the extraction cannot fail (kInternalInvariantViolation if it does).
SqrtOutcome sqrt_singular_cipolla(const FieldElement& a, RandomStream& rng,
                                  Coordinates coords = Coordinates::kProjective);

}  // namespace fpsqrt
