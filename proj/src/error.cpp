#include "loopchar/error.hpp"

namespace loopchar {

std::string to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ConductorMismatch: return "ConductorMismatch";
        case ErrorKind::ConductorTooSmall: return "ConductorTooSmall";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::OrbitInconsistency: return "OrbitInconsistency";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::NonIntegralResult: return "NonIntegralResult";
    }
    return "UnknownError";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::BudgetExceeded: return kExitBudget;
        case ErrorKind::OrbitInconsistency:
        case ErrorKind::NonIntegralResult: return kExitVerification;
        default: return kExitValidation;
    }
}

}  // namespace loopchar
