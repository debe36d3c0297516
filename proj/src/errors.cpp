#include "flatlab/errors.hpp"

namespace flatlab {

std::string_view code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NonClosingPolygon: return "NonClosingPolygon";
    case ErrorCode::SelfIntersectingBoundary: return "SelfIntersectingBoundary";
    case ErrorCode::ZeroEdge: return "ZeroEdge";
    case ErrorCode::InvalidSurface: return "InvalidSurface";
    case ErrorCode::NonPositiveDeterminant: return "NonPositiveDeterminant";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::InvalidStratum: return "InvalidStratum";
    case ErrorCode::FlowBudgetExceeded: return "FlowBudgetExceeded";
    case ErrorCode::TransversalMissesFlow: return "TransversalMissesFlow";
    case ErrorCode::TieBreak: return "TieBreak";
    case ErrorCode::NonIrreducible: return "NonIrreducible";
    case ErrorCode::NonGenericSurface: return "NonGenericSurface";
    case ErrorCode::DegenerateBase: return "DegenerateBase";
    case ErrorCode::SeparatrixHit: return "SeparatrixHit";
    case ErrorCode::SingularIntersectionForm: return "SingularIntersectionForm";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::BackendMismatch: return "BackendMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OddDegreePresent: return "OddDegreePresent";
    case ErrorCode::NonSmoothableLoop: return "NonSmoothableLoop";
    case ErrorCode::BasisConstructionFailed: return "BasisConstructionFailed";
    case ErrorCode::InconsistentInvariants: return "InconsistentInvariants";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    }
    return "Unknown";
}

int exit_code(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::VersionMismatch:
    case ErrorCode::InvalidStratum:
        return 2;
    case ErrorCode::BackendMismatch:
        return 4;
    default:
        return 3;
    }
}

Error::Error(ErrorCode code, std::string module, const std::string& message)
    : std::runtime_error(std::string(code_name(code)) + ": " + message),
      code_(code),
      module_(std::move(module))
{
}

std::string Error::qualified() const
{
    return module_ + "." + std::string(code_name(code_));
}

}  // namespace flatlab
