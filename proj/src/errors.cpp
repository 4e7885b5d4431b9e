#include "spectral_zeta/errors.hpp"

namespace szeta {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Pole: return "PoleError";
        case ErrorKind::Domain: return "DomainError";
        case ErrorKind::DivergentSeries: return "DivergentSeries";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::SingularCoefficient: return "SingularCoefficient";
        case ErrorKind::IntegrationFailure: return "IntegrationFailure";
        case ErrorKind::Stiffness: return "StiffnessError";
        case ErrorKind::BracketingFailure: return "BracketingFailure";
        case ErrorKind::Discretization: return "DiscretizationError";
        case ErrorKind::InsufficientLevels: return "InsufficientLevels";
        case ErrorKind::PoorFit: return "PoorFit";
        case ErrorKind::ZeroEnergy: return "ZeroEnergy";
        case ErrorKind::TruncationDominated: return "TruncationDominated";
        case ErrorKind::UnsupportedParity: return "UnsupportedParity";
        case ErrorKind::QuadratureFailure: return "QuadratureFailure";
        case ErrorKind::ExcludedLambda: return "ExcludedLambda";
    }
    return "Unknown";
}

bool is_numerical(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NoConvergence:
        case ErrorKind::IntegrationFailure:
        case ErrorKind::Stiffness:
        case ErrorKind::BracketingFailure:
        case ErrorKind::Discretization:
        case ErrorKind::PoorFit:
        case ErrorKind::TruncationDominated:
        case ErrorKind::QuadratureFailure:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace szeta
