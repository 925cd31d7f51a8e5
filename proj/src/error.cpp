#include "fpsqrt/error.hpp"

namespace fpsqrt {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCompositeModulus: return "CompositeModulus";
    case ErrorKind::kContextMismatch: return "ContextMismatch";
    case ErrorKind::kNonResidue: return "NonResidue";
    case ErrorKind::kWrongValuation: return "WrongValuation";
    case ErrorKind::kRetryLimitExceeded: return "RetryLimitExceeded";
    case ErrorKind::kModulusTooLarge: return "ModulusTooLarge";
    case ErrorKind::kRingMismatch: return "RingMismatch";
    case ErrorKind::kNotInvertible: return "NotInvertible";
    case ErrorKind::kNotInSubgroup: return "NotInSubgroup";
    case ErrorKind::kInternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorKind::kBadCharacteristic: return "BadCharacteristic";
    case ErrorKind::kBadParameter: return "BadParameter";
    case ErrorKind::kSingularPointReached: return "SingularPointReached";
    case ErrorKind::kNotFourTorsion: return "NotFourTorsion";
    case ErrorKind::kGenerationFailed: return "GenerationFailed";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace fpsqrt
