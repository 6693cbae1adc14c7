#include "hypcone/errors.hpp"

namespace hypcone {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::DegenerateVertex: return "DegenerateVertex";
    case ErrorCode::TooFewVertices: return "TooFewVertices";
    case ErrorCode::TraceNotHyperbolic: return "TraceNotHyperbolic";
    case ErrorCode::NotUltraparallel: return "NotUltraparallel";
    case ErrorCode::NotHalfPlanePoint: return "NotHalfPlanePoint";
    case ErrorCode::OrientationReversing: return "OrientationReversing";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::IdenticalLines: return "IdenticalLines";
    case ErrorCode::EllipticHasNoPreferredLift: return "EllipticHasNoPreferredLift";
    case ErrorCode::EllipticBoundary: return "EllipticBoundary";
    case ErrorCode::RelatorNotIdentity: return "RelatorNotIdentity";
    case ErrorCode::FixedBasepoint: return "FixedBasepoint";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::IterationBudgetExceeded: return "IterationBudgetExceeded";
    case ErrorCode::ReducibleCharacter: return "ReducibleCharacter";
    case ErrorCode::NotInVariety: return "NotInVariety";
    case ErrorCode::EmptyAfterMaxRejects: return "EmptyAfterMaxRejects";
    case ErrorCode::WrongEulerSide: return "WrongEulerSide";
    case ErrorCode::AxesNotDisjoint: return "AxesNotDisjoint";
    case ErrorCode::TraceProductCondition: return "TraceProductCondition";
    case ErrorCode::EpsilonUnderflow: return "EpsilonUnderflow";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::RelatorViolation: return "RelatorViolation";
    case ErrorCode::IdentityCommutator: return "IdentityCommutator";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::NoCompatibleBasepoint: return "NoCompatibleBasepoint";
    case ErrorCode::CertificateMissing: return "CertificateMissing";
    case ErrorCode::NonExtremal: return "NonExtremal";
    case ErrorCode::EllipticDecompositionCurve: return "EllipticDecompositionCurve";
    case ErrorCode::PieceEulerMismatch: return "PieceEulerMismatch";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

}  // namespace hypcone
