#pragma once

#include <optional>

#include "fpsqrt/field.hpp"

namespace fpsqrt {

/// Least r >= 0 with z^r = b, where z generates the 2-Sylow subgroup of
/// F_p^* (order 2^e). Recovers r one bit at a time by testing whether the
/// running quotient squares down to 1. Throws kNotInSubgroup.
mpz_class sylow_dlog(const FieldElement& b, const FieldElement& z);

/// The same answer by trying r = 0, 1, ..., 2^e - 1. Only for e <= 20.
mpz_class sylow_dlog_naive(const FieldElement& b, const FieldElement& z);

/// Tonelli-Shanks. retries counts residues hit while looking for n.
SqrtOutcome tonelli_shanks(const FieldElement& a, RandomStream& rng,
                           NonResidueStrategy strategy = NonResidueStrategy::kRandom);

/// Tonelli-Shanks with a fixed non-residue n (no search).
FieldElement tonelli_shanks_with(const FieldElement& a, const FieldElement& n);

/// Cipolla: draw t until t^2 - a is a non-residue, then (t + w)^((p+1)/2)
/// in F_p[w]/(w^2 - (t^2 - a)).
SqrtOutcome cipolla(const FieldElement& a, RandomStream& rng);

/// Cipolla's exponentiation for a given t. Throws kBadParameter unless
/// t^2 - a is a non-residue.
FieldElement cipolla_with(const FieldElement& a, const FieldElement& t);

/// Peralta's first algorithm over F_p[w]/(w^2 - a).
SqrtOutcome peralta_one(const FieldElement& a, RandomStream& rng);

/// One Peralta-I trial for a fixed r; nullopt means "draw another r".
std::optional<FieldElement> peralta_one_trial(const FieldElement& a, const FieldElement& r);

/// Peralta's second algorithm over F_p[w]/(w^2 + a). Needs e >= 2.
SqrtOutcome peralta_two(const FieldElement& a, RandomStream& rng);

std::optional<FieldElement> peralta_two_trial(const FieldElement& a, const FieldElement& r);

}  // namespace fpsqrt
