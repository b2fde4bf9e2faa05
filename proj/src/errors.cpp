#include "effdemand/errors.hpp"

namespace effdemand {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "E_DOMAIN";
    case ErrorCode::invalid_parameter: return "E_VALIDATION";
    case ErrorCode::rate_floor: return "E_RATE_FLOOR";
    case ErrorCode::insufficient_money: return "E_INSUFFICIENT_MONEY";
    case ErrorCode::no_sign_change: return "E_NO_SIGN_CHANGE";
    case ErrorCode::full_employment: return "E_FULL_EMPLOYMENT";
    case ErrorCode::degenerate: return "E_DEGENERATE";
    case ErrorCode::non_convergence: return "E_NONCONVERGENCE";
    case ErrorCode::parse: return "E_PARSE";
    case ErrorCode::usage: return "E_USAGE";
  }
  return "E_UNKNOWN";
}

}  // namespace effdemand
