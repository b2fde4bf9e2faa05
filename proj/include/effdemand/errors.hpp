#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace effdemand {

/// Machine-readable category carried by every engine error.
enum class ErrorCode {
  domain,             // argument outside an operation's domain
  invalid_parameter,  // a structural invariant fails at construction
  rate_floor,         // interest rate at or below the speculative floor
  insufficient_money, // transactions demand alone absorbs the money supply
  no_sign_change,     // root bracket does not straddle zero
  full_employment,    // quantity undefined at the employment ceiling
  degenerate,         // marginal propensity reached 1
  non_convergence,    // iteration budget exhausted
  parse,              // malformed scenario or CSV text
  usage,              // bad command-line input
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace effdemand
