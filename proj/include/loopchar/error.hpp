#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace loopchar {

enum class ErrorKind {
    ParseError,
    ConductorMismatch,
    ConductorTooSmall,
    DivisionByZero,
    OrbitInconsistency,
    BudgetExceeded,
    NonIntegralResult,
};

std::string to_string(ErrorKind kind);

/// Every failure raised by the library. `hint()` carries a remediation
/// message suitable for printing next to the error.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::string hint = {})
        : std::runtime_error(message), kind_(kind), hint_(std::move(hint)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& hint() const noexcept { return hint_; }

    // Set for ConductorTooSmall: the minimal conductor that would work.
    std::optional<std::int64_t> suggested_conductor;

private:
    ErrorKind kind_;
    std::string hint_;
};

// CLI exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitVerification = 3;
inline constexpr int kExitBudget = 4;

int exit_code(ErrorKind kind);

}  // namespace loopchar
