#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ryd {

// Base for all domain errors. `code` is stable and machine-parsable; the CLI
// prints failures as "ERROR <code>: <message>".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define RYD_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  }

RYD_DEFINE_ERROR(BadInput);             // malformed configuration or file
RYD_DEFINE_ERROR(NoConvergence);        // eigensolver failed to settle
RYD_DEFINE_ERROR(SingularShift);        // shift collides with an eigenvalue
RYD_DEFINE_ERROR(AmbiguousTracking);    // overlap-based state pairing unsafe
RYD_DEFINE_ERROR(DegenerateElimination);// variable elimination denominator vanishes
RYD_DEFINE_ERROR(TrackingJump);         // root tracking lost its branch
RYD_DEFINE_ERROR(ContinuationFailed);   // no usable root at the end of continuation
RYD_DEFINE_ERROR(ZeroOnLoop);           // discriminant vanishes on the sampling loop
RYD_DEFINE_ERROR(NonIntegerWinding);    // winding sum never settled on an integer
RYD_DEFINE_ERROR(BranchAmbiguity);      // square-root branch choice undecidable
RYD_DEFINE_ERROR(InconsistentCertificate); // winding and exchange tests disagree
RYD_DEFINE_ERROR(GaugeMismatch);        // eigenvector phase alignment undefined
RYD_DEFINE_ERROR(Diverged);             // search iteration ran away

#undef RYD_DEFINE_ERROR

}  // namespace ryd
