#pragma once

#include <stdexcept>
#include <string>

namespace szeta {

enum class ErrorKind {
    Pole,
    Domain,
    DivergentSeries,
    NoConvergence,
    SingularCoefficient,
    IntegrationFailure,
    Stiffness,
    BracketingFailure,
    Discretization,
    InsufficientLevels,
    PoorFit,
    ZeroEnergy,
    TruncationDominated,
    UnsupportedParity,
    QuadratureFailure,
    ExcludedLambda,
};

const char* to_string(ErrorKind kind) noexcept;

// Numerical failures (as opposed to bad input) map to a distinct CLI exit code.
bool is_numerical(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace szeta
