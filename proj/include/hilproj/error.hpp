#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hilproj {

enum class ErrorCode {
  DimensionMismatch,
  WeightMismatch,
  SpaceMismatch,
  OutOfDomain,
  NotUnitVector,
  NotInSet,
  NotOnSphere,
  NotInCone,
  ZeroVertex,
  ZeroDirection,
  NotCovered,
  UnknownAtom,
  EmptySubset,
  NoHalfMeasureSubset,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every precondition failure in the library is reported as an Error
/// carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace hilproj
