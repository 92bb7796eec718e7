#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spindyn {

enum class ErrorCode {
  NotHermitian,
  SpectrumNotReal,
  NotPositive,
  OutOfRange,
  NotXState,
  SingularParameterization,
  Unsupported,
  InvariantViolated,
  Config,
};

/// Short stable identifier, used in CSV `error` columns.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spindyn
