#include "impois/error.hpp"

namespace impois {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::invalid_parameter: return "invalid parameter";
    case ErrorCode::unsupported_function: return "unsupported function";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::step_too_large: return "step too large";
    case ErrorCode::tolerance_unreachable: return "tolerance unreachable";
    case ErrorCode::contract_violation: return "contract violation";
    case ErrorCode::oracle_budget: return "oracle budget exceeded";
    }
    return "unknown error";
}

} // namespace impois
