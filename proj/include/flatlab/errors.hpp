#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatlab {

enum class ErrorCode {
    NonClosingPolygon,
    SelfIntersectingBoundary,
    ZeroEdge,
    InvalidSurface,
    NonPositiveDeterminant,
    SamplingExhausted,
    InvalidStratum,
    FlowBudgetExceeded,
    TransversalMissesFlow,
    TieBreak,
    NonIrreducible,
    NonGenericSurface,
    DegenerateBase,
    SeparatrixHit,
    SingularIntersectionForm,
    NonConvergence,
    WrongDimension,
    BackendMismatch,
    BudgetExceeded,
    OddDegreePresent,
    NonSmoothableLoop,
    BasisConstructionFailed,
    InconsistentInvariants,
    ConfigError,
    VersionMismatch,
};

std::string_view code_name(ErrorCode code);

// Process exit code used by the command line driver.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string module, const std::string& message);

    ErrorCode code() const noexcept { return code_; }
    const std::string& module() const noexcept { return module_; }
    // "module.Code" form used in structured error output.
    std::string qualified() const;

private:
    ErrorCode code_;
    std::string module_;
};

}  // namespace flatlab
