#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xxent {

enum class ErrorKind {
  kInvalidParams,
  kTableRange,
  kDuplicateSite,
  kNonPositiveSite,
  kEmptySubsystem,
  kSpanTooLarge,
  kSingularCore,
  kNotSymmetric,
  kNoConvergence,
  kNearSingularShift,
  kDomainError,
  kBadAlpha,
  kOverlappingParts,
  kTooLarge,
  kBadContour,
  kQuadratureNotConverged,
  kDegenerateGroundState,
  kDegenerateFermiLevel,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace xxent
