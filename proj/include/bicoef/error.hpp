#pragma once

#include <stdexcept>
#include <string>

namespace bicoef {

enum class ErrorCode {
    // series
    DivisionByNonUnit,
    NonZeroConstant,
    NotInvertible,
    LogOfZero,
    RootOfZero,
    AmbiguousBranch,
    IndexOutOfOrder,
    NonFinite,
    // expressions
    SyntaxError,
    UnboundVariable,
    EvalPole,
    EvalBranch,
    NotAnalyticAtCenter,
    UnsupportedExact,
    // geometry
    NoConvergence,
    NonSimple,
    DegenerateCenter,
    ChartRadiusExceeded,
    CrossCheckFailed,
    OutOfCone,
    // derived amplitude/phase
    PhaseLinearTermNonzero,
    PhaseDegreeChange,
    AmplitudeIdenticallyZero,
    OrderTooSmall,
    // canonical representation
    DegreeMismatch,
    ResidualTooLarge,
    ContinuationLost,
    NoNearbyRoot,
    BranchAmbiguous,
    // expansion
    BranchFailure,
    SignUndefined,
    NonPositiveArgument,
    NotConstantDegree,
    NotApplicable,
    // oracles
    NotAnalyticAtOrigin,
    PositivityProbeFailed,
    OracleMissing,
    CacheFormat,
    // problem files / CLI
    DuplicateMode,
    ProblemFileError,
};

const char* error_code_name(ErrorCode c);

// Single exception type for the whole library.  The code tells tests and the
// CLI what failed; the message names the stage and the offending values.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace bicoef
