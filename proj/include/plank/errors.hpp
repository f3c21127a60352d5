#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plank {

enum class ErrorCode {
  InvalidDirection,
  InvalidBody,
  UnboundedBody,
  DimensionMismatch,
  RepresentationUnavailable,
  OriginNotInterior,
  EmptyResult,
  DegenerateHull,
  RhoOutOfRange,
  NonBracketing,
  CutMissesRegion,
  TooManyHyperplanes,
  DuplicateSites,
  NotACovering,
  UncertifiedPartition,
  GenerationFailed,
  InvalidArgument,
  ParseError,
};

std::string_view errorName(ErrorCode code);

// Every failure raised by the library carries one of the codes above; the
// CLI prints errorName() so scripts can match on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errorName(code_); }

 private:
  ErrorCode code_;
};

}  // namespace plank
