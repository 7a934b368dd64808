#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fspectra {

enum class ErrorCode {
  kInvalidDimension,
  kInvalidArgument,
  kDegenerateImmersion,
  kNoRoot,
  kInvalidProduct,
  kTopology,
  kParse,
  kAssembly,
  kIllConditionedMass,
  kBracketNotEstablished,
  kCompositionNotApplicable,
  kUnsupported,
  kSchema,
  kInternal,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// command line front end can map it to a report entry.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fspectra
