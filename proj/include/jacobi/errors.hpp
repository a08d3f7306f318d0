#pragma once

#include <stdexcept>
#include <string>

namespace jacobi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define JACOBI_DEFINE_ERROR(Name)                                              \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}       \
  }

JACOBI_DEFINE_ERROR(NonFinite);
JACOBI_DEFINE_ERROR(ThreeRealRoots);
JACOBI_DEFINE_ERROR(InvalidElement);
JACOBI_DEFINE_ERROR(DomainViolation);
JACOBI_DEFINE_ERROR(NotInAlgebra);
JACOBI_DEFINE_ERROR(UnknownChart);
JACOBI_DEFINE_ERROR(IncompatibleChart);
JACOBI_DEFINE_ERROR(Unsupported);
JACOBI_DEFINE_ERROR(SingularMetric);
JACOBI_DEFINE_ERROR(LeftDomain);
JACOBI_DEFINE_ERROR(ZeroVector);

#undef JACOBI_DEFINE_ERROR

} // namespace jacobi
