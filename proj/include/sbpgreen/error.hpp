// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace sbpgreen {

enum class ErrorCode {
  InvalidArgument = 1,
  GridTooSmall,
  SingularMatrix,
  NotSymmetric,
  SingularPenalty,
  SingularQbar,
  SingularAbar,
  SingularSigma,
  OddN,
  NonIntegerSequence,
  NotWideStencil,
  NotCentrosymmetric,
  DegenerateBC,
  UnstableStep,
  SingularSystem,
  ParseError,
  IoError,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code. `detail` is code specific;
/// for SingularSigma it holds a SigmaCondition bitmask (see green_second.hpp).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int detail = 0)
      : std::runtime_error(message), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  int detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  int detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message,
                              int detail = 0) {
  throw Error(code, message, detail);
}

}  // namespace sbpgreen
