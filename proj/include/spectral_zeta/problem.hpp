#pragma once

#include <string>

namespace szeta {

/// Boundary behaviour at the origin: Regular means psi ~ x^{1/2+lambda},
/// Irregular means psi ~ x^{1/2-lambda}. Written Z_- and Z_+ respectively.
enum class Branch { Regular, Irregular };

enum class ZetaMethod { ClosedForm, EigSum, SumRule };

const char* to_string(Branch b) noexcept;
const char* to_string(ZetaMethod m) noexcept;

/// sigma = 1/(M+1); Error(Domain) unless M > 1.
double sigma_of(double M);

/// Inverse of sigma_of.
double M_of_sigma(double sigma);

/// True when lambda belongs to the set where the boundary solutions are
/// linearly dependent or a zero eigenvalue appears:
///   lambda = +-((2 m1 + 1)(M+1) + alpha)/2,  lambda = +-(m2 + m3 (M+1)/2)
/// with m1, m2, m3 in {1, 2, ...}; for alpha = 0, m3 runs over the positive
/// half-integers. Positive matches within `tol`, m up to `m_max`.
bool lambda_excluded(double M, double alpha, double lambda, double tol = 1e-9, int m_max = 1000);

/// Throws Error(ExcludedLambda) when lambda_excluded(...) holds.
void require_admissible(double M, double alpha, double lambda);

/// The radial problem
///   -psi'' + (x^{2M} + alpha x^{M-1} + (lambda^2 - 1/4)/x^2) psi = E psi
/// on the half line with the chosen behaviour at the origin.
struct ProblemSpec {
    double M = 2.0;
    double alpha = 0.0;
    double lambda = 0.5;
    Branch branch = Branch::Regular;

    /// Validated construction (M > 1, admissible lambda).
    static ProblemSpec make(double M, double alpha, double lambda, Branch branch);

    double sigma() const { return 1.0 / (M + 1.0); }
    /// lambda of the equivalent regular problem (lambda for Regular, -lambda for Irregular)
    double lambda_eff() const { return branch == Branch::Regular ? lambda : -lambda; }
    std::string describe() const;
};

/// PT-symmetric problem on a complex contour,
///   -phi'' + ((-1)^K (ix)^{2M} - alpha (ix)^{M-1} + (lambda^2 - 1/4)/x^2) phi = E phi,
/// with phi decaying along the rays arg x = -pi/2 +- pi (K+1)/(2M+2).
struct PTProblemSpec {
    double M = 2.0;
    int K = 1;
    double alpha = 0.0;
    double lambda = 0.5;
    double theta_left = 0.0;
    double theta_right = 0.0;

    /// Validated construction (M > 1, K >= 1); fills the ray angles.
    static PTProblemSpec make(double M, int K, double alpha, double lambda);

    /// Both rays lie strictly in the lower half plane (equivalently K < M),
    /// so the contour can avoid the cut on the positive imaginary axis.
    bool directly_solvable() const;
    std::string describe() const;
};

/// One zeta evaluation Z(n).
struct ZetaValue {
    int order = 1;
    double value = 0.0;
    double err = 0.0;
    ZetaMethod method = ZetaMethod::ClosedForm;
};

}  // namespace szeta
