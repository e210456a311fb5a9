#include "chabauty/errors.hpp"

namespace chabauty {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidPrime: return "InvalidPrime";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PrimeMismatch: return "PrimeMismatch";
    case ErrorKind::NoSquareRoot: return "NoSquareRoot";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::CompositionDomain: return "CompositionDomain";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NoSuchInvolution: return "NoSuchInvolution";
    case ErrorKind::NormalizationUnavailable: return "NormalizationUnavailable";
    case ErrorKind::DiskMismatch: return "DiskMismatch";
    case ErrorKind::UnsupportedDisk: return "UnsupportedDisk";
    case ErrorKind::UnsupportedModel: return "UnsupportedModel";
    case ErrorKind::NotChabautyApplicable: return "NotChabautyApplicable";
    case ErrorKind::BoundInapplicable: return "BoundInapplicable";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::MapsToInfinity: return "MapsToInfinity";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::AtInfinity: return "AtInfinity";
    case ErrorKind::InvalidRatio: return "InvalidRatio";
  }
  return "Unknown";
}

}  // namespace chabauty
