#pragma once

#include <stdexcept>
#include <string>

namespace swapfree {

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  infeasible,
  solver_failure,
  io,
  limit_exceeded,
  internal,
};

/// Exception type thrown by every library routine. The code survives the trip
/// through the C API as an sf_status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorCode::invalid_argument, message);
}

}  // namespace swapfree
