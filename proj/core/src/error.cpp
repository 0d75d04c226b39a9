#include "parad/error.hpp"

namespace parad {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "syntax";
    case ErrorCode::kUnknownSymbol: return "unknown-symbol";
    case ErrorCode::kArityMismatch: return "arity-mismatch";
    case ErrorCode::kInvalidSignature: return "invalid-signature";
    case ErrorCode::kInvalidSystem: return "invalid-system";
    case ErrorCode::kSystemFile: return "system-file";
    case ErrorCode::kSizeGuard: return "size-guard";
    case ErrorCode::kCapExceeded: return "cap-exceeded";
    case ErrorCode::kOutsideCarrier: return "outside-carrier";
    case ErrorCode::kConstantOneValuation: return "constant-one-valuation";
    case ErrorCode::kValuationFile: return "valuation-file";
    case ErrorCode::kUndecided: return "undecided";
    case ErrorCode::kUnknownPreset: return "unknown-preset";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kWitnessFormat: return "witness-format";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kEmptyTheories: return "empty-theories";
    case ErrorCode::kEmptySetInconsistent: return "empty-set-inconsistent";
    case ErrorCode::kNotComputable: return "not-computable";
  }
  return "?";
}

}  // namespace parad
