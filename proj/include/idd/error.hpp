#pragma once

#include <stdexcept>
#include <string>

namespace idd {

enum class ErrorCode {
    DomainError,
    ToleranceNotMet,
    NonFiniteIntegrand,
    BracketInvalid,
    NoSignChange,
    NonConvergence,
    EnergyOutOfRange,
    StepUnderflow,
    FrequencyOutOfRange,
    DegenerateOrbit,
    ResampleFailure,
    SymmetryViolation,
    SingularSolve,
    EigenFailure,
    LineSearchStall,
    MaxIterations,
    InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

// Single exception type for the library. The code lets callers (and the CLI
// exit status) distinguish failure classes without a class hierarchy.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace idd
