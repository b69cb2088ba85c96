#pragma once

#include <stdexcept>
#include <string>

namespace gaussent {

enum class ErrorKind {
  InvalidParams,
  Domain,
  NonConvergent,
  DegenerateDenominator,
  ComplexRoots,
  DegreeTooLarge,
  ConditionNotMet,
  NegativeZ,
  ResourceLimit,
  EigFailure,
  ImaginarySpectrum,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. The CLI maps kind() to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define GAUSSENT_DEFINE_ERROR(Name, Kind)                               \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

GAUSSENT_DEFINE_ERROR(InvalidParams, InvalidParams)
GAUSSENT_DEFINE_ERROR(DomainError, Domain)
GAUSSENT_DEFINE_ERROR(NonConvergent, NonConvergent)
GAUSSENT_DEFINE_ERROR(DegenerateDenominator, DegenerateDenominator)
GAUSSENT_DEFINE_ERROR(ComplexRoots, ComplexRoots)
GAUSSENT_DEFINE_ERROR(DegreeTooLarge, DegreeTooLarge)
GAUSSENT_DEFINE_ERROR(ConditionNotMet, ConditionNotMet)
GAUSSENT_DEFINE_ERROR(NegativeZ, NegativeZ)
GAUSSENT_DEFINE_ERROR(ResourceLimit, ResourceLimit)
GAUSSENT_DEFINE_ERROR(EigFailure, EigFailure)
GAUSSENT_DEFINE_ERROR(ImaginarySpectrum, ImaginarySpectrum)

#undef GAUSSENT_DEFINE_ERROR

}  // namespace gaussent
