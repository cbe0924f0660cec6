#include "decon/errors.hpp"

namespace decon {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::validation: return "Validation";
    case ErrorCode::hypothesis_failed: return "HypothesisFailed";
    case ErrorCode::not_invertible: return "NotInvertible";
    case ErrorCode::grid_too_small: return "GridTooSmall";
    case ErrorCode::not_dense: return "NotDense";
    case ErrorCode::not_riesz_basis: return "NotRieszBasis";
    case ErrorCode::not_contracting: return "NotContracting";
    case ErrorCode::numeric: return "Numeric";
    case ErrorCode::io: return "IO";
  }
  return "Unknown";
}

int error_exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::validation:
    case ErrorCode::hypothesis_failed:
    case ErrorCode::not_invertible:
    case ErrorCode::not_dense:
    case ErrorCode::not_riesz_basis:
      return 2;
    case ErrorCode::grid_too_small:
    case ErrorCode::not_contracting:
    case ErrorCode::numeric:
      return 3;
    case ErrorCode::io:
      return 4;
  }
  return 1;
}

void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, std::string(error_code_name(code)) + ": " + msg);
}

}  // namespace decon
