#include "hilproj/error.hpp"

namespace hilproj {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::WeightMismatch: return "WeightMismatch";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotUnitVector: return "NotUnitVector";
    case ErrorCode::NotInSet: return "NotInSet";
    case ErrorCode::NotOnSphere: return "NotOnSphere";
    case ErrorCode::NotInCone: return "NotInCone";
    case ErrorCode::ZeroVertex: return "ZeroVertex";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::NotCovered: return "NotCovered";
    case ErrorCode::UnknownAtom: return "UnknownAtom";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::NoHalfMeasureSubset: return "NoHalfMeasureSubset";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

}  // namespace hilproj
