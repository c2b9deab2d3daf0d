#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace charsumlab {

enum class ErrorCode {
  InvalidArgument,
  NonInvertible,
  NotCoprime,
  NotPrime,
  NotPrimitive,
  RangeTooLarge,
  UnsupportedModulus,
  ModulusTooLarge,
  CoefficientVanishes,
  PoleProximity,
  PoleAtOne,
  QuadratureNotConverged,
  TruncationInsufficient,
  EmptyFamily,
  OverlappingBoxes,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace charsumlab
