#include "plank/errors.hpp"

namespace plank {

std::string_view errorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDirection: return "InvalidDirection";
    case ErrorCode::InvalidBody: return "InvalidBody";
    case ErrorCode::UnboundedBody: return "UnboundedBody";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RepresentationUnavailable: return "RepresentationUnavailable";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
    case ErrorCode::RhoOutOfRange: return "RhoOutOfRange";
    case ErrorCode::NonBracketing: return "NonBracketing";
    case ErrorCode::CutMissesRegion: return "CutMissesRegion";
    case ErrorCode::TooManyHyperplanes: return "TooManyHyperplanes";
    case ErrorCode::DuplicateSites: return "DuplicateSites";
    case ErrorCode::NotACovering: return "NotACovering";
    case ErrorCode::UncertifiedPartition: return "UncertifiedPartition";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(errorName(code)) + ": " + message), code_(code) {}

}  // namespace plank
