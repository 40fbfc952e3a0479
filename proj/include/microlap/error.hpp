#pragma once

#include <stdexcept>
#include <string>

namespace microlap {

// Base class for all domain errors surfaced through the CLI (exit code 1).
// `kind()` is a stable machine-readable tag; what() carries the detail.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define MICROLAP_DEFINE_ERROR(Name)                          \
  class Name : public Error {                                \
  public:                                                    \
    explicit Name(const std::string& msg) : Error(#Name, msg) {} \
  }

MICROLAP_DEFINE_ERROR(MixedTermsError);
MICROLAP_DEFINE_ERROR(NonRationalSingularity);
MICROLAP_DEFINE_ERROR(IrregularAtInfinity);
MICROLAP_DEFINE_ERROR(NotRegularSingular);
MICROLAP_DEFINE_ERROR(IrrationalExponent);
MICROLAP_DEFINE_ERROR(TruncationExhausted);
MICROLAP_DEFINE_ERROR(DimensionMismatch);
MICROLAP_DEFINE_ERROR(OrderTooLarge);
MICROLAP_DEFINE_ERROR(PoleAtNonpositiveInteger);
MICROLAP_DEFINE_ERROR(AntiStokesDirection);
MICROLAP_DEFINE_ERROR(IllConditioned);
MICROLAP_DEFINE_ERROR(PathTooCloseToSingularity);
MICROLAP_DEFINE_ERROR(StepLimitExceeded);
MICROLAP_DEFINE_ERROR(TailBoundExceeded);
MICROLAP_DEFINE_ERROR(ParseError);
MICROLAP_DEFINE_ERROR(NonIntegerExponentOnDz);

#undef MICROLAP_DEFINE_ERROR

}  // namespace microlap
