#ifndef GAUDIN_ERROR_HPP
#define GAUDIN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gaudin {

enum class ErrorCode {
  InvalidSizes,
  NonDistinctZ,
  WindowTooShallow,
  NotInvertible,
  NonHomogeneous,
  NotAffine,
  NotEquivalent,
  OutsideWeightSpace,
  Unbounded,
  Arithmetic,
  Parse,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gaudin

#endif  // GAUDIN_ERROR_HPP
