#pragma once

#include <stdexcept>
#include <string>

namespace gr2 {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: wrong genus, malformed expression, mismatched spaces.
/// The CLI maps these to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// An algebraic assertion failed. The message carries the witness.
/// The CLI maps these to exit code 1.
class MathFailure : public Error {
 public:
  using Error::Error;
};

#define GR2_DECLARE_ERROR(Name, Base) \
  class Name : public Base {          \
   public:                            \
    using Base::Base;                 \
  };

GR2_DECLARE_ERROR(GenusError, UsageError)
GR2_DECLARE_ERROR(ParseError, UsageError)
GR2_DECLARE_ERROR(AmbientMismatch, UsageError)
GR2_DECLARE_ERROR(ClauseViolation, UsageError)
GR2_DECLARE_ERROR(NonDecomposable, UsageError)

GR2_DECLARE_ERROR(NonSymplectic, MathFailure)
GR2_DECLARE_ERROR(InvalidSubsurfaceBasis, MathFailure)
GR2_DECLARE_ERROR(DegreeOverflow, MathFailure)
GR2_DECLARE_ERROR(MembershipFailure, MathFailure)
GR2_DECLARE_ERROR(GenerationFailure, MathFailure)
GR2_DECLARE_ERROR(DecompositionFailure, MathFailure)
GR2_DECLARE_ERROR(RankMismatch, MathFailure)
GR2_DECLARE_ERROR(InvarianceFailure, MathFailure)
GR2_DECLARE_ERROR(DiscrepancyFailure, MathFailure)
GR2_DECLARE_ERROR(IdentityFailure, MathFailure)
GR2_DECLARE_ERROR(UnclassifiedElement, MathFailure)

#undef GR2_DECLARE_ERROR

inline void require_genus(int g) {
  if (g < 3) throw GenusError("genus must be at least 3, got " + std::to_string(g));
}

}  // namespace gr2
