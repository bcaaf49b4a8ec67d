#pragma once

#include <stdexcept>
#include <string>

namespace heiswhit {

/// Base class of every error raised by the library. Each failure mode named
/// in the public contracts gets its own subclass so callers can dispatch on
/// type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HEISWHIT_DEFINE_ERROR(Name)          \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

// poly_core
HEISWHIT_DEFINE_ERROR(IdenticallyZero);
HEISWHIT_DEFINE_ERROR(NonConvergence);
// heis_core
HEISWHIT_DEFINE_ERROR(ZeroDilation);
HEISWHIT_DEFINE_ERROR(CoincidentNodes);
HEISWHIT_DEFINE_ERROR(LengthMismatch);
HEISWHIT_DEFINE_ERROR(DomainViolation);
// divdiff
HEISWHIT_DEFINE_ERROR(DuplicateNodes);
HEISWHIT_DEFINE_ERROR(QuadratureBudgetExceeded);
HEISWHIT_DEFINE_ERROR(TooFewNodes);
// av_functionals
HEISWHIT_DEFINE_ERROR(NodeNotFound);
HEISWHIT_DEFINE_ERROR(OrderViolation);
HEISWHIT_DEFINE_ERROR(BadSubset);
// horizontal_ext
HEISWHIT_DEFINE_ERROR(OrderMismatch);
HEISWHIT_DEFINE_ERROR(DegenerateGap);
HEISWHIT_DEFINE_ERROR(SynthesisDefect);
// cli
HEISWHIT_DEFINE_ERROR(ParseError);
HEISWHIT_DEFINE_ERROR(NonFinite);
HEISWHIT_DEFINE_ERROR(IoError);
HEISWHIT_DEFINE_ERROR(ConfigError);

#undef HEISWHIT_DEFINE_ERROR

}  // namespace heiswhit
