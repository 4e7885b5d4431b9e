#pragma once

#include <cstddef>
#include <vector>

namespace szeta {

/// Gamma function for real arguments.
///
/// Lanczos approximation (g = 607/128, 15 terms) for x >= 0.5 and the
/// reflection formula below that. Relative error is below 1e-14 for
/// |x| <= 50 away from the poles (checked against the C library).
/// Throws Error(Pole) at x = 0, -1, -2, ...
double gamma(double x);

/// ln Gamma(x) for x > 0. Throws Error(Domain) otherwise.
/// Exact zero at x = 1 and x = 2; a Taylor series about 1 keeps the
/// relative error small near both zeros.
double log_gamma(double x);

/// ln|Gamma(x)| together with the sign of Gamma(x), valid for negative
/// non-integer x as well.
struct SignedLog {
    double log_abs;
    int sign;
};
SignedLog log_abs_gamma(double x);

/// 1/Gamma(x); exactly zero at the poles of Gamma.
double rgamma(double x);

/// Rising factorial (a)_n.
double pochhammer(double a, unsigned n);

/// sin(pi x) and cos(pi x) with exact zeros at the integers / half-integers.
double sin_pi(double x);
double cos_pi(double x);

/// Hurwitz zeta sum_{k>=0} (k+q)^{-s} for s > 1, q > 0 (Euler-Maclaurin).
double hurwitz_zeta(double s, double q);

/// Products and quotients of Gamma functions and powers, accumulated in
/// log space with sign tracking so that large intermediate values do not
/// overflow. A Gamma in the denominator at a pole makes the product zero;
/// one in the numerator throws Error(Pole).
class GammaRatio {
public:
    GammaRatio& num(double x);
    GammaRatio& den(double x);
    GammaRatio& mul(double v);
    GammaRatio& div(double v);
    /// base^exponent for base > 0
    GammaRatio& pow(double base, double exponent);
    double value() const;

private:
    double log_abs_ = 0.0;
    int sign_ = 1;
    bool zero_ = false;
};

/// Declares that denominator `den` equals `slope` times numerator `num`
/// along the parameter path of interest, so that a simultaneous zero of
/// the two Pochhammer factors is resolved by its limit (1/slope).
struct LinkedPair {
    std::size_t num;
    std::size_t den;
    double slope;
};

/// Parameters of a pFq series at unit argument.
struct HypergeomSpec {
    std::vector<double> numerator;
    std::vector<double> denominator;
    std::vector<LinkedPair> links;
    /// sum(denominator) - sum(numerator)
    double s = 0.0;
    bool terminating = false;

    bool convergent() const { return terminating || s > 0.0; }

    /// Validates the parameters: an unlinked denominator may not be a
    /// non-positive integer (Error(Domain)).
    static HypergeomSpec make(std::vector<double> numerator, std::vector<double> denominator,
                              std::vector<LinkedPair> links = {});
};

struct PfqOptions {
    std::size_t max_terms = 1000000;
    std::size_t first_checkpoint = 16;
    /// depth cap for the Richardson table
    int max_extrapolation_order = 10;
};

struct PfqResult {
    double value = 0.0;
    double achieved_err = 0.0;
    std::size_t terms = 0;
    bool accelerated = false;
};

/// Sums the series at z = 1. `tol` is relative to max(1, |value|).
///
/// The remainder after N terms of a convergent pFq(1) has an asymptotic
/// expansion in N^{-s}, N^{-s-1}, ... so partial sums at N = N0 2^j are
/// extrapolated by Richardson's method with those known exponents. The
/// direct sum is accepted when the algebraic tail bound |t_N| N / s is
/// already small enough.
///
/// Throws Error(DivergentSeries) for s <= 0 (non-terminating) and
/// Error(NoConvergence) when tol is not reached within max_terms.
PfqResult pfq_unit(const HypergeomSpec& spec, double tol = 1e-13, const PfqOptions& options = {});

}  // namespace szeta
