#ifndef PARAD_ERROR_HPP
#define PARAD_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace parad {

enum class ErrorCode {
  kSyntax,
  kUnknownSymbol,
  kArityMismatch,
  kInvalidSignature,
  kInvalidSystem,
  kSystemFile,
  kSizeGuard,
  kCapExceeded,
  kOutsideCarrier,
  kConstantOneValuation,
  kValuationFile,
  kUndecided,
  kUnknownPreset,
  kInvalidArgument,
  kWitnessFormat,
  kPrecondition,
  kEmptyTheories,
  kEmptySetInconsistent,
  kNotComputable,
};

const char* to_string(ErrorCode code);

// All input and precondition failures surface as this exception. `position`
// is a 1-based column for formula syntax errors and a 1-based line number for
// file formats; 0 when not applicable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::size_t position = 0)
      : std::runtime_error(what), code_(code), position_(position) {}

  ErrorCode code() const { return code_; }
  std::size_t position() const { return position_; }

 private:
  ErrorCode code_;
  std::size_t position_;
};

}  // namespace parad

#endif  // PARAD_ERROR_HPP
