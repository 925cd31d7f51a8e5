#include "fpsqrt/singular_curve.hpp"

namespace fpsqrt {
namespace {

// A point of y^2 = x^3 + A x z^2 + B z^3 (the shifted model) in homogeneous
// coordinates. Z = 0 is the point at infinity.
struct Shifted {
  FieldElement X;
  FieldElement Y;
  FieldElement Z;

  bool is_infinity() const { return Z.is_zero(); }
};

Shifted shifted_infinity(const PrimeContextPtr& ctx) {
  return {FieldElement::zero(ctx), FieldElement::one(ctx), FieldElement::zero(ctx)};
}

Shifted to_shifted(const CurvePoint& pt, const CurveParams& curve) {
  const auto& ctx = curve.context();
  if (pt.is_infinity()) return shifted_infinity(ctx);
  if (pt.is_affine()) {
    const auto& [x, y] = pt.as_affine();
    return {x + curve.shift(), y, FieldElement::one(ctx)};
  }
  const auto& [X, Y, Z] = pt.as_projective();
  return {X + curve.shift() * Z, Y, Z};
}

CurvePoint from_shifted(const Shifted& s, const CurveParams& curve) {
  const auto& ctx = curve.context();
  if (s.is_infinity()) {
    return CurvePoint::projective(FieldElement::zero(ctx), FieldElement::one(ctx),
                                  FieldElement::zero(ctx));
  }
  return CurvePoint::projective(s.X - curve.shift() * s.Z, s.Y, s.Z);
}

Shifted shifted_double(const Shifted& P, const CurveParams& curve) {
  if (P.is_infinity() || P.Y.is_zero()) return shifted_infinity(curve.context());
  const FieldElement XX = P.X.square();
  const FieldElement w = curve.A() * P.Z.square() + XX + XX + XX;
  const FieldElement s = P.Y * P.Z;
  const FieldElement B = P.X * P.Y * s;
  const FieldElement B4 = B + B + B + B;
  const FieldElement h = w.square() - (B4 + B4);
  const FieldElement ss = s.square();
  const FieldElement YYss = P.Y.square() * ss;
  const FieldElement YYss8 = [&] {
    FieldElement t = YYss + YYss;
    t = t + t;
    return t + t;
  }();
  const FieldElement hs = h * s;
  FieldElement Z3 = ss * s;
  Z3 = Z3 + Z3;
  Z3 = Z3 + Z3;
  Z3 = Z3 + Z3;
  return {hs + hs, w * (B4 - h) - YYss8, std::move(Z3)};
}

Shifted shifted_add(const Shifted& P, const Shifted& Q, const CurveParams& curve) {
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  const FieldElement u = Q.Y * P.Z - P.Y * Q.Z;
  const FieldElement v = Q.X * P.Z - P.X * Q.Z;
  if (v.is_zero()) {
    if (u.is_zero()) return shifted_double(P, curve);
    return shifted_infinity(curve.context());
  }
  const FieldElement ZZ = P.Z * Q.Z;
  const FieldElement vv = v.square();
  const FieldElement vvv = vv * v;
  const FieldElement R = vv * P.X * Q.Z;
  const FieldElement M = u.square() * ZZ - vvv - (R + R);
  return {v * M, u * (R - M) - vvv * P.Y * Q.Z, vvv * ZZ};
}

bool is_singular_shifted(const Shifted& s, const CurveParams& curve) {
  // (-a/3 : 0 : 1) in the shifted model.
  return !s.is_infinity() && s.Y.is_zero() && s.X == (curve.shift() - curve.a()) * s.Z;
}

// Tests for (0, 0) without normalizing.
bool is_origin(const CurvePoint& pt) {
  if (pt.is_infinity()) return false;
  if (pt.is_affine()) return pt.as_affine().x.is_zero() && pt.as_affine().y.is_zero();
  return pt.as_projective().X.is_zero() && pt.as_projective().Y.is_zero();
}

CurvePoint twice(const CurvePoint& pt, const CurveParams& curve, Coordinates coords) {
  return coords == Coordinates::kAffine ? add_affine(pt, pt, curve)
                                        : add_projective(pt, pt, curve);
}

// Doubles Q until it reaches (0, 0) and returns the root carried by the last
// point before it. Q has 2-power order >= 4 here, so at most e - 1 doublings.
FieldElement root_from_chain(CurvePoint Q, const CurveParams& curve, Coordinates coords) {
  const unsigned e = curve.context()->e();
  for (unsigned i = 0; i < e; ++i) {
    CurvePoint next = twice(Q, curve, coords);
    if (is_origin(next)) return extract_root(Q, curve);
    if (next.is_infinity()) break;
    Q = std::move(next);
  }
  throw Error(ErrorKind::kInternalInvariantViolation, "doubling chain missed (0, 0)");
}

void require_curve_valuation(const FieldElement& a) {
  if (a.context()->e() < 2) {
    throw Error(ErrorKind::kWrongValuation,
                "curve methods need p = 1 mod 4 (the group order is p + 1 otherwise)");
  }
}

// Draws t with t != 0 and t^2 != -a. Each call burns one unit of budget.
FieldElement sample_parameter(const CurveParams& curve, RandomStream& rng, unsigned& budget) {
  const FieldElement minus_a = -curve.a();
  while (budget > 0) {
    --budget;
    FieldElement t = sample_field_element(curve.context(), rng, true);
    if (t.square() != minus_a) return t;
  }
  throw Error(ErrorKind::kRetryLimitExceeded, "no admissible curve parameter");
}

using Trial = std::optional<FieldElement> (*)(const CurvePoint&, const CurveParams&, Coordinates);

SqrtOutcome run_curve_solver(const FieldElement& a, RandomStream& rng, Coordinates coords,
                             Trial trial, Algorithm tag) {
  require_residue(a);
  if (a.is_zero()) return {a, 0, tag};
  require_curve_valuation(a);
  const CurveParams curve = make_curve(a);
  unsigned budget = kRetryCap;
  for (unsigned retries = 0; budget > 0; ++retries) {
    const FieldElement t = sample_parameter(curve, rng, budget);
    if (auto root = trial(point_from_parameter(t, curve), curve, coords)) {
      return {*root, retries, tag};
    }
  }
  throw Error(ErrorKind::kRetryLimitExceeded, to_string(tag) + ": every trial failed");
}

}  // namespace

CurveParams make_curve(const FieldElement& a) {
  const auto& ctx = a.context();
  if (ctx->p() == 3) throw Error(ErrorKind::kBadCharacteristic, "curve shift needs p > 3");
  if (a.is_zero()) throw Error(ErrorKind::kBadParameter, "a = 0 gives a cusp, not a node");
  if (legendre(a) != 1) throw Error(ErrorKind::kNonResidue, a.to_string() + " is not a square");
  const FieldElement three(ctx, 3L);
  const FieldElement third = three.inverse();
  const FieldElement aa = a.square();
  const FieldElement A = -(aa * third);
  const FieldElement B = -((aa * a + aa * a) * third * third * third);
  return CurveParams(a, A, B, (a + a) * third);
}

CurvePoint CurvePoint::projective(FieldElement X, FieldElement Y, FieldElement Z) {
  if (Z.is_zero() && !(X.is_zero() && !Y.is_zero())) {
    throw Error(ErrorKind::kBadParameter, "Z = 0 is only allowed for (0:1:0)");
  }
  return CurvePoint(ProjectiveCoords{std::move(X), std::move(Y), std::move(Z)});
}

bool CurvePoint::is_infinity() const {
  if (std::holds_alternative<Infinity>(repr_)) return true;
  return is_projective() && as_projective().Z.is_zero();
}

CurvePoint normalize(const CurvePoint& pt) {
  if (pt.is_infinity()) return CurvePoint::infinity();
  if (pt.is_affine()) return pt;
  const auto& [X, Y, Z] = pt.as_projective();
  const FieldElement zinv = Z.inverse();
  return CurvePoint::affine(X * zinv, Y * zinv);
}

bool CurvePoint::operator==(const CurvePoint& rhs) const {
  const CurvePoint l = normalize(*this);
  const CurvePoint r = normalize(rhs);
  if (l.is_infinity() || r.is_infinity()) return l.is_infinity() && r.is_infinity();
  return l.as_affine().x == r.as_affine().x && l.as_affine().y == r.as_affine().y;
}

std::string CurvePoint::to_string() const {
  const CurvePoint n = normalize(*this);
  if (n.is_infinity()) return "infinity";
  const auto& [x, y] = n.as_affine();
  return "(" + x.to_string() + ", " + y.to_string() + ") mod " + x.modulus().get_str();
}

bool is_on_curve(const CurvePoint& pt, const CurveParams& curve) {
  const CurvePoint n = normalize(pt);
  if (n.is_infinity()) return true;
  const auto& [x, y] = n.as_affine();
  const FieldElement xa = x + curve.a();
  if (xa.is_zero() && y.is_zero()) return false;
  return y.square() == x * xa.square();
}

CurvePoint negate(const CurvePoint& pt) {
  if (pt.is_infinity()) return pt;
  if (pt.is_affine()) return CurvePoint::affine(pt.as_affine().x, -pt.as_affine().y);
  const auto& [X, Y, Z] = pt.as_projective();
  return CurvePoint::projective(X, -Y, Z);
}

CurvePoint add_affine(const CurvePoint& P_in, const CurvePoint& Q_in, const CurveParams& curve) {
  const CurvePoint P = normalize(P_in);
  const CurvePoint Q = normalize(Q_in);
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  const auto& [x1, y1] = P.as_affine();
  const auto& [x2, y2] = Q.as_affine();
  const FieldElement& a = curve.a();

  FieldElement k = x1;
  FieldElement x3 = x1;
  if (x1 == x2) {
    if ((y1 + y2).is_zero()) return CurvePoint::infinity();
    // tangent: 2y y' = (x + a)(3x + a)
    k = (x1 + a) * (x1 + x1 + x1 + a) / (y1 + y1);
    x3 = k.square() - (a + a) - (x1 + x1);
  } else {
    k = (y1 - y2) / (x1 - x2);
    x3 = k.square() - (a + a) - x1 - x2;
  }
  FieldElement y3 = k * (x1 - x3) - y1;
  if ((x3 + a).is_zero() && y3.is_zero()) {
    throw Error(ErrorKind::kSingularPointReached, "sum landed on the node");
  }
  return CurvePoint::affine(std::move(x3), std::move(y3));
}

CurvePoint add_projective(const CurvePoint& P, const CurvePoint& Q, const CurveParams& curve) {
  const Shifted sum = shifted_add(to_shifted(P, curve), to_shifted(Q, curve), curve);
  if (is_singular_shifted(sum, curve)) {
    throw Error(ErrorKind::kSingularPointReached, "sum landed on the node");
  }
  return from_shifted(sum, curve);
}

CurvePoint scalar_mul(const mpz_class& k, const CurvePoint& P, const CurveParams& curve,
                      Coordinates coords) {
  if (k < 0) throw Error(ErrorKind::kBadParameter, "negative scalar");
  const std::size_t bits = k == 0 ? 0 : mpz_sizeinbase(k.get_mpz_t(), 2);
  if (coords == Coordinates::kAffine) {
    CurvePoint acc = CurvePoint::infinity();
    for (std::size_t i = bits; i-- > 0;) {
      acc = add_affine(acc, acc, curve);
      if (mpz_tstbit(k.get_mpz_t(), i) != 0) acc = add_affine(acc, P, curve);
    }
    return acc;
  }
  const Shifted base = to_shifted(P, curve);
  Shifted acc = shifted_infinity(curve.context());
  for (std::size_t i = bits; i-- > 0;) {
    acc = shifted_double(acc, curve);
    if (mpz_tstbit(k.get_mpz_t(), i) != 0) acc = shifted_add(acc, base, curve);
  }
  if (is_singular_shifted(acc, curve)) {
    throw Error(ErrorKind::kSingularPointReached, "multiple landed on the node");
  }
  return from_shifted(acc, curve);
}

CurvePoint point_from_parameter(const FieldElement& t, const CurveParams& curve) {
  const FieldElement tt = t.square();
  if (t.is_zero() || (tt + curve.a()).is_zero()) {
    throw Error(ErrorKind::kBadParameter, "t = 0 and t^2 = -a are excluded");
  }
  return CurvePoint::affine(tt, t * (tt + curve.a()));
}

CurvePoint double_via_parameter(const FieldElement& t, const CurveParams& curve) {
  const FieldElement tt = t.square();
  const FieldElement& a = curve.a();
  if (t.is_zero() || (tt + a).is_zero()) {
    throw Error(ErrorKind::kBadParameter, "t = 0 and t^2 = -a are excluded");
  }
  const auto& ctx = curve.context();
  const FieldElement x = (a - tt).square() / (FieldElement(ctx, 4L) * tt);
  const FieldElement y = (tt + a).square() * (tt - a) / (FieldElement(ctx, 8L) * tt * t);
  return CurvePoint::affine(x, y);
}

FieldElement extract_root(const CurvePoint& T_in, const CurveParams& curve) {
  const CurvePoint T = normalize(T_in);
  const FieldElement& a = curve.a();
  if (T.is_infinity() || T.as_affine().x != a) {
    throw Error(ErrorKind::kNotFourTorsion, T.to_string() + " is not (a, w)");
  }
  if (!is_origin(add_affine(T, T, curve))) {
    throw Error(ErrorKind::kNotFourTorsion, T.to_string() + " doubles away from (0, 0)");
  }
  const FieldElement root = T.as_affine().y / (a + a);
  if (root.square() != a) {
    throw Error(ErrorKind::kInternalInvariantViolation, "4-torsion y / 2a is not a root");
  }
  return canonical(root);
}

std::optional<FieldElement> basic_trial(const CurvePoint& R, const CurveParams& curve,
                                        Coordinates coords) {
  const CurvePoint Q = scalar_mul(curve.context()->m(), R, curve, coords);
  if (Q.is_infinity() || is_origin(Q)) return std::nullopt;
  return root_from_chain(Q, curve, coords);
}

std::optional<FieldElement> enhanced_trial(const CurvePoint& R, const CurveParams& curve,
                                           Coordinates coords) {
  const mpz_class& m = curve.context()->m();
  CurvePoint Q = scalar_mul(m, R, curve, coords);
  if (Q.is_infinity()) return std::nullopt;
  if (is_origin(Q)) {
    // mR = (0, 0): retry from T = m * ((m + 1)/2) R. When R's 2-primary part
    // has order 2, T stays inside <R> and comes out as (0, 0) or infinity.
    const CurvePoint S = scalar_mul((m + 1) / 2, R, curve, coords);
    Q = scalar_mul(m, S, curve, coords);
    if (Q.is_infinity() || is_origin(Q)) return std::nullopt;
  }
  return root_from_chain(Q, curve, coords);
}

std::optional<FieldElement> tonelli_trial(const CurvePoint& R, const CurveParams& curve,
                                          Coordinates coords) {
  const unsigned e = curve.context()->e();
  // mR generates the 2-Sylow subgroup iff 2^(e-1) * mR = ((p-1)/2) R = (0, 0);
  // then 2^(e-2) * mR has order 4.
  CurvePoint four_torsion = scalar_mul(curve.context()->m(), R, curve, coords);
  if (four_torsion.is_infinity()) return std::nullopt;
  for (unsigned i = 0; i + 2 < e; ++i) four_torsion = twice(four_torsion, curve, coords);
  if (four_torsion.is_infinity() || is_origin(four_torsion)) return std::nullopt;
  if (!is_origin(twice(four_torsion, curve, coords))) return std::nullopt;
  return extract_root(four_torsion, curve);
}

SqrtOutcome sqrt_singular_basic(const FieldElement& a, RandomStream& rng, Coordinates coords) {
  return run_curve_solver(a, rng, coords, &basic_trial, Algorithm::kCurveBasic);
}

SqrtOutcome sqrt_singular_enhanced(const FieldElement& a, RandomStream& rng, Coordinates coords) {
  return run_curve_solver(a, rng, coords, &enhanced_trial, Algorithm::kCurveEnhanced);
}

SqrtOutcome sqrt_singular_tonelli(const FieldElement& a, RandomStream& rng, Coordinates coords) {
  return run_curve_solver(a, rng, coords, &tonelli_trial, Algorithm::kCurveTonelli);
}

SqrtOutcome sqrt_singular_cipolla(const FieldElement& a, RandomStream& rng, Coordinates coords) {
  require_residue(a);
  if (a.is_zero()) return {a, 0, Algorithm::kCurveCipolla};
  require_curve_valuation(a);
  const CurveParams curve = make_curve(a);
  for (unsigned retries = 0; retries < kRetryCap; ++retries) {
    const FieldElement t = sample_field_element(curve.context(), rng, true);
    if (legendre(t.square() + a) != -1) continue;
    const auto root = enhanced_trial(point_from_parameter(t, curve), curve, coords);
    if (!root) {
      throw Error(ErrorKind::kInternalInvariantViolation,
                  "non-residue t^2 + a but extraction failed for t = " + t.to_string());
    }
    return {*root, retries, Algorithm::kCurveCipolla};
  }
  throw Error(ErrorKind::kRetryLimitExceeded, "curve-cipolla: no t with t^2 + a a non-residue");
}

}  // namespace fpsqrt
