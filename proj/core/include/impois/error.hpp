#pragma once

#include <stdexcept>
#include <string>

namespace impois {

enum class ErrorCode {
    invalid_parameter,
    unsupported_function,
    dimension_mismatch,
    step_too_large,
    tolerance_unreachable,
    contract_violation,
    oracle_budget,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// front ends can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Raised when the requested tolerance would need more grid steps than the
// configured cap. Carries the best tolerance reachable within the cap.
class ToleranceUnreachable : public Error {
public:
    ToleranceUnreachable(const std::string& what, double achievable_eps)
        : Error(ErrorCode::tolerance_unreachable, what),
          achievable_eps_(achievable_eps) {}

    double achievable_eps() const noexcept { return achievable_eps_; }

private:
    double achievable_eps_;
};

} // namespace impois
