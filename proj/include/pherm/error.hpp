#pragma once

#include <stdexcept>
#include <string>

namespace pherm {

/// How a failure should be reported by front ends.
enum class ErrorClass {
  Validation,  // malformed or structurally invalid input
  Numerical,   // the computation ran but could not meet its guarantees
};

/// Base class of every error raised by the library. `kind()` is a stable,
/// machine-readable name (e.g. "AliasError").
class Error : public std::runtime_error {
 public:
  Error(std::string kind, ErrorClass cls, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)), class_(cls) {}

  const std::string& kind() const noexcept { return kind_; }
  ErrorClass error_class() const noexcept { return class_; }

 private:
  std::string kind_;
  ErrorClass class_;
};

#define PHERM_DEFINE_ERROR(Name, Class)                   \
  class Name : public Error {                             \
   public:                                                \
    explicit Name(const std::string& message)             \
        : Error(#Name, ErrorClass::Class, message) {}     \
  };

PHERM_DEFINE_ERROR(ParseError, Validation)
PHERM_DEFINE_ERROR(ShapeError, Validation)
PHERM_DEFINE_ERROR(RangeError, Validation)
PHERM_DEFINE_ERROR(NotHermitian, Validation)
PHERM_DEFINE_ERROR(NotParaHermitian, Validation)
PHERM_DEFINE_ERROR(NotIsometry, Validation)
PHERM_DEFINE_ERROR(NotPalindromic, Validation)
PHERM_DEFINE_ERROR(NotRegular, Validation)
PHERM_DEFINE_ERROR(NotEigenvector, Validation)
PHERM_DEFINE_ERROR(MinusOneEigenvalue, Validation)

PHERM_DEFINE_ERROR(AliasError, Numerical)
PHERM_DEFINE_ERROR(ContinuationError, Numerical)
PHERM_DEFINE_ERROR(PeriodUndetected, Numerical)
PHERM_DEFINE_ERROR(GaugeError, Numerical)
PHERM_DEFINE_ERROR(ResidualError, Numerical)
PHERM_DEFINE_ERROR(OrbitError, Numerical)
PHERM_DEFINE_ERROR(StructureError, Numerical)
PHERM_DEFINE_ERROR(PairingError, Numerical)
PHERM_DEFINE_ERROR(DegenerateFit, Numerical)
PHERM_DEFINE_ERROR(NearDegenerate, Numerical)

#undef PHERM_DEFINE_ERROR

}  // namespace pherm
