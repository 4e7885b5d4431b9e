#include "spectral_zeta/problem.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spectral_zeta/errors.hpp"

namespace szeta {

const char* to_string(Branch b) noexcept { return b == Branch::Regular ? "minus" : "plus"; }

const char* to_string(ZetaMethod m) noexcept {
    switch (m) {
        case ZetaMethod::ClosedForm: return "ClosedForm";
        case ZetaMethod::EigSum: return "EigSum";
        case ZetaMethod::SumRule: return "SumRule";
    }
    return "Unknown";
}

double sigma_of(double M) {
    if (!(M > 1.0)) fail(ErrorKind::Domain, "M must exceed 1");
    return 1.0 / (M + 1.0);
}

double M_of_sigma(double sigma) {
    if (!(sigma > 0.0 && sigma < 0.5)) fail(ErrorKind::Domain, "sigma must lie in (0, 1/2)");
    return 1.0 / sigma - 1.0;
}

bool lambda_excluded(double M, double alpha, double lambda, double tol, int m_max) {
    const double a = std::fabs(lambda);
    const double h = M + 1.0;
    for (int m1 = 1; m1 <= m_max; ++m1) {
        const double v = 0.5 * ((2.0 * m1 + 1.0) * h + alpha);
        if (std::fabs(a - std::fabs(v)) <= tol) return true;
    }
    // m3 in steps of 1/2 when alpha vanishes
    const double step = (alpha == 0.0) ? 0.5 : 1.0;
    for (int j = 1; j <= 2 * m_max; ++j) {
        const double m3 = step * j;
        if (m3 > m_max) break;
        const double rest = a - m3 * h / 2.0;
        if (rest < 1.0 - tol) break;
        const double m2 = std::round(rest);
        if (m2 >= 1.0 && m2 <= m_max && std::fabs(rest - m2) <= tol) return true;
    }
    return false;
}

void require_admissible(double M, double alpha, double lambda) {
    if (lambda_excluded(M, alpha, lambda)) {
        std::ostringstream os;
        os << "lambda = " << lambda << " is excluded for M = " << M << ", alpha = " << alpha;
        fail(ErrorKind::ExcludedLambda, os.str());
    }
}

ProblemSpec ProblemSpec::make(double M, double alpha, double lambda, Branch branch) {
    sigma_of(M);
    if (!std::isfinite(alpha) || !std::isfinite(lambda)) fail(ErrorKind::Domain, "non-finite problem parameter");
    require_admissible(M, alpha, lambda);
    return ProblemSpec{M, alpha, lambda, branch};
}

std::string ProblemSpec::describe() const {
    std::ostringstream os;
    os << "M=" << M << " alpha=" << alpha << " lambda=" << lambda << " branch=" << to_string(branch);
    return os.str();
}

PTProblemSpec PTProblemSpec::make(double M, int K, double alpha, double lambda) {
    sigma_of(M);
    if (K < 1) fail(ErrorKind::Domain, "K must be a positive integer");
    if (!std::isfinite(alpha) || !std::isfinite(lambda)) fail(ErrorKind::Domain, "non-finite problem parameter");
    PTProblemSpec p;
    p.M = M;
    p.K = K;
    p.alpha = alpha;
    p.lambda = lambda;
    const double half = std::numbers::pi / 2.0;
    const double open = std::numbers::pi * (K + 1) / (2.0 * M + 2.0);
    p.theta_left = -half - open;
    p.theta_right = -half + open;
    return p;
}

bool PTProblemSpec::directly_solvable() const {
    return theta_left > -std::numbers::pi && theta_right < 0.0;
}

std::string PTProblemSpec::describe() const {
    std::ostringstream os;
    os << "M=" << M << " K=" << K << " alpha=" << alpha << " lambda=" << lambda;
    return os.str();
}

}  // namespace szeta
