#pragma once

#include <stdexcept>
#include <string>

namespace nonlocal {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define NONLOCAL_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                             \
    using Error::Error;                                               \
    const char* kind() const noexcept override { return #Name; }      \
  };

NONLOCAL_DEFINE_ERROR(NonIntegrableExponent)
NONLOCAL_DEFINE_ERROR(QuadratureFailure)
NONLOCAL_DEFINE_ERROR(DegenerateFirstMoment)
NONLOCAL_DEFINE_ERROR(DegenerateDomain)
NONLOCAL_DEFINE_ERROR(ResolutionTooCoarse)
NONLOCAL_DEFINE_ERROR(IncompatibleHorizon)
NONLOCAL_DEFINE_ERROR(GridMismatch)
NONLOCAL_DEFINE_ERROR(LengthMismatch)
NONLOCAL_DEFINE_ERROR(NotAntisymmetric)
NONLOCAL_DEFINE_ERROR(SingularShapeTensor)
NONLOCAL_DEFINE_ERROR(InvalidArgument)

#undef NONLOCAL_DEFINE_ERROR

}  // namespace nonlocal
