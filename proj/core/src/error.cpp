#include "xxent/error.hpp"

namespace xxent {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParams: return "InvalidParams";
    case ErrorKind::kTableRange: return "TableRange";
    case ErrorKind::kDuplicateSite: return "DuplicateSite";
    case ErrorKind::kNonPositiveSite: return "NonPositiveSite";
    case ErrorKind::kEmptySubsystem: return "EmptySubsystem";
    case ErrorKind::kSpanTooLarge: return "SpanTooLarge";
    case ErrorKind::kSingularCore: return "SingularCore";
    case ErrorKind::kNotSymmetric: return "NotSymmetric";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kNearSingularShift: return "NearSingularShift";
    case ErrorKind::kDomainError: return "DomainError";
    case ErrorKind::kBadAlpha: return "BadAlpha";
    case ErrorKind::kOverlappingParts: return "OverlappingParts";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kBadContour: return "BadContour";
    case ErrorKind::kQuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::kDegenerateGroundState: return "DegenerateGroundState";
    case ErrorKind::kDegenerateFermiLevel: return "DegenerateFermiLevel";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace xxent
