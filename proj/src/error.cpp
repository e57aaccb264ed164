#include "rotquad/error.hpp"

namespace rotquad {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::DegenerateMobius: return "DegenerateMobius";
    case ErrorKind::InvalidPolyline: return "InvalidPolyline";
    case ErrorKind::PointOnLoop: return "PointOnLoop";
    case ErrorKind::NonIntegerWinding: return "NonIntegerWinding";
    case ErrorKind::DegenerateCrossing: return "DegenerateCrossing";
    case ErrorKind::NotFixed: return "NotFixed";
    case ErrorKind::SamplingFailure: return "SamplingFailure";
    case ErrorKind::TangentCondition: return "TangentCondition";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::RelationViolated: return "RelationViolated";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::PointOnLoop:
    case ErrorKind::NonIntegerWinding:
    case ErrorKind::DegenerateCrossing:
    case ErrorKind::SamplingFailure:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace rotquad
