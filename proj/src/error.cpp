#include "idd/error.hpp"

namespace idd {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
        case ErrorCode::NonFiniteIntegrand: return "NonFiniteIntegrand";
        case ErrorCode::BracketInvalid: return "BracketInvalid";
        case ErrorCode::NoSignChange: return "NoSignChange";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::EnergyOutOfRange: return "EnergyOutOfRange";
        case ErrorCode::StepUnderflow: return "StepUnderflow";
        case ErrorCode::FrequencyOutOfRange: return "FrequencyOutOfRange";
        case ErrorCode::DegenerateOrbit: return "DegenerateOrbit";
        case ErrorCode::ResampleFailure: return "ResampleFailure";
        case ErrorCode::SymmetryViolation: return "SymmetryViolation";
        case ErrorCode::SingularSolve: return "SingularSolve";
        case ErrorCode::EigenFailure: return "EigenFailure";
        case ErrorCode::LineSearchStall: return "LineSearchStall";
        case ErrorCode::MaxIterations: return "MaxIterations";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace idd
