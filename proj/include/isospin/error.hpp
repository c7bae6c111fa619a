#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isospin {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  SizeCap,
  NonFinite,
  InvalidBasis,
  DimensionOutOfRange,
  DimensionMismatch,
  NotTracePreserving,
  NormExceeded,
  InvalidState,
  OptimizerStall,
  CovarianceNotVerified,
  OutOfRange,
  NotBipartiteSquare,
  InvalidFormat,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace isospin
