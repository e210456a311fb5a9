#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chabauty {

enum class ErrorKind {
  InvalidPrime,
  DivisionByZero,
  PrimeMismatch,
  NoSquareRoot,
  NotAUnit,
  CompositionDomain,
  PrecisionExhausted,
  NoSuchInvolution,
  NormalizationUnavailable,
  DiskMismatch,
  UnsupportedDisk,
  UnsupportedModel,
  NotChabautyApplicable,
  BoundInapplicable,
  InvalidModel,
  MapsToInfinity,
  InvalidInput,
  FieldMismatch,
  AtInfinity,
  InvalidRatio,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind()` is stable and is what the
/// CLI maps to exit codes; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a computation cannot certify its result at the requested
/// precision. `shortfall()` is how many p-adic digits were missing, or 0
/// when that is not measurable (e.g. an undecidable Strassman index).
class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(const std::string& message, long shortfall = 0)
      : Error(ErrorKind::PrecisionExhausted, message), shortfall_(shortfall) {}

  long shortfall() const noexcept { return shortfall_; }

 private:
  long shortfall_;
};

}  // namespace chabauty
