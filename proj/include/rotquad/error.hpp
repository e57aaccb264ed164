#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rotquad {

enum class ErrorKind {
  CoincidentPoints,
  DegenerateMobius,
  InvalidPolyline,
  PointOnLoop,
  NonIntegerWinding,
  DegenerateCrossing,
  NotFixed,
  SamplingFailure,
  TangentCondition,
  ParseError,
  RelationViolated,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Geometric failures that a deterministic jitter of the input paths may cure.
bool is_numerical(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rotquad
