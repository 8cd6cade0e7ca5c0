#include "gaudin/error.hpp"

namespace gaudin {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSizes: return "InvalidSizes";
    case ErrorCode::NonDistinctZ: return "NonDistinctZ";
    case ErrorCode::WindowTooShallow: return "WindowTooShallow";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NonHomogeneous: return "NonHomogeneous";
    case ErrorCode::NotAffine: return "NotAffine";
    case ErrorCode::NotEquivalent: return "NotEquivalent";
    case ErrorCode::OutsideWeightSpace: return "OutsideWeightSpace";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::Arithmetic: return "Arithmetic";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace gaudin
