#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypcone {

/// Every failure the library can raise. The CLI maps these onto exit codes.
enum class ErrorCode {
  // plane geometry
  CoincidentPoints,
  DegenerateVertex,
  TooFewVertices,
  TraceNotHyperbolic,
  NotUltraparallel,
  NotHalfPlanePoint,
  // isometries
  OrientationReversing,
  LengthMismatch,
  DegenerateSegment,
  IdenticalLines,
  // covering group
  EllipticHasNoPreferredLift,
  EllipticBoundary,
  RelatorNotIdentity,
  FixedBasepoint,
  InvariantViolation,
  // character dynamics
  IterationBudgetExceeded,
  ReducibleCharacter,
  NotInVariety,
  EmptyAfterMaxRejects,
  // domain builder
  WrongEulerSide,
  AxesNotDisjoint,
  TraceProductCondition,
  EpsilonUnderflow,
  NotFound,
  // surface glue
  RelatorViolation,
  IdentityCommutator,
  PreconditionFailed,
  SearchExhausted,
  NoCompatibleBasepoint,
  CertificateMissing,
  NonExtremal,
  EllipticDecompositionCurve,
  PieceEulerMismatch,
  // io
  MalformedInput,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hypcone
