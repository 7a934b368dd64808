#include "fspectra/error.hpp"

namespace fspectra {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDimension: return "invalid-dimension";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kDegenerateImmersion: return "degenerate-immersion";
    case ErrorCode::kNoRoot: return "no-root";
    case ErrorCode::kInvalidProduct: return "invalid-product";
    case ErrorCode::kTopology: return "topology";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kAssembly: return "assembly";
    case ErrorCode::kIllConditionedMass: return "ill-conditioned-mass";
    case ErrorCode::kBracketNotEstablished: return "bracket-not-established";
    case ErrorCode::kCompositionNotApplicable: return "composition-not-applicable";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace fspectra
