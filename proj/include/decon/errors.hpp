#pragma once

#include <stdexcept>
#include <string>

namespace decon {

enum class ErrorCode {
  validation,
  hypothesis_failed,
  not_invertible,
  grid_too_small,
  not_dense,
  not_riesz_basis,
  not_contracting,
  numeric,
  io,
};

const char* error_code_name(ErrorCode c);

// Process exit code contract: 2 hypothesis/validation, 3 numeric, 4 I/O.
int error_exit_code(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& msg);

inline void require(bool ok, ErrorCode code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace decon
