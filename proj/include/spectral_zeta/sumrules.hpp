#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "spectral_zeta/problem.hpp"

namespace szeta {

/// Outcome of checking one identity numerically. The relative residual is
/// |lhs - rhs| / scale, where scale is the sum of the magnitudes of the
/// terms (so identities of the form 0 = a + b + c are judged against |a|+|b|+|c|).
struct SumRuleReport {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double lhs_imag = 0.0;
    double rhs_imag = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double scale = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string provenance = "ClosedForm";
    std::vector<std::pair<std::string, double>> inputs;
};

/// D(E) = D(0) exp(-sum_{n<=order} Z(n) E^n / n), the small-E expansion of a
/// spectral determinant.
struct SpectralDeterminant {
    std::vector<double> zetas;  // Z(1), Z(2), ...
    double d0 = 1.0;

    int order() const { return static_cast<int>(zetas.size()); }
    std::complex<double> log_ratio(std::complex<double> E) const;
    std::complex<double> operator()(std::complex<double> E) const;
};

/// Radial sum rule of order 1, 2 or 3 relating Z_-(1..order) and Z_+(1..order).
/// lhs = N_order Z_-(order), rhs = everything else moved across.
SumRuleReport radial_sumrule_residual(int order, const std::vector<double>& zminus, const std::vector<double>& zplus,
                                      double sigma, double lambda, double tol = 1e-7,
                                      const std::string& provenance = "ClosedForm");

/// Z_+(order) implied by Z_-(1..order) (orders 1..3; order 3 also needs Z_-(3)).
double rearranged_sumrules(int order, const std::vector<double>& zminus, double sigma, double lambda);

/// Z_-(order) implied by Z_+(1..order) and Z_-(1..order-1).
double radial_solve_minus(int order, const std::vector<double>& zminus, const std::vector<double>& zplus, double sigma,
                          double lambda);

/// The four-term relation between Z_-(1, +-alpha) and Z_+(1, +-alpha) with the
/// D(0, alpha) prefactors; the common proportionality constant cancels.
SumRuleReport alpha_sumrule_residual(double sigma, double lambda, double alpha, double tol = 1e-7);

/// |omegabar^l D_-(omegabar E) D_+(omega E) - omega^l D_-(omega E) D_+(omegabar E) - 2 lambda / (D_-(0) D_+(0))|
/// divided by |omegabar^l - omega^l|, with both determinants truncated at order 3.
/// Error(TruncationDominated) when halving E does not shrink the residual like E^4.
double qw_smallE_residual(double sigma, double lambda, const std::vector<double>& zminus,
                          const std::vector<double>& zplus, double E);

/// Sign of alpha at which Z_-+ must be supplied to the fused rules: -1 for
/// K = 1 mod 4, +1 for K = 3 mod 4 (and for alpha = 0).
int fused_alpha_sign(int K);

/// Z_K(order) from the fused sum rules (K >= 0; K = 0 gives the radial rule
/// combination, which vanishes). For alpha != 0 only odd K is allowed and the
/// inputs must be taken at alpha * fused_alpha_sign(K).
ZetaValue fused_sumrule_eval(int K, int order, const std::vector<double>& zminus, const std::vector<double>& zplus,
                             double sigma, double lambda, double alpha = 0.0);

/// As above with input errors propagated to first order.
ZetaValue fused_sumrule_eval(int K, int order, const std::vector<ZetaValue>& zminus,
                             const std::vector<ZetaValue>& zplus, double sigma, double lambda, double alpha = 0.0);

/// Z_K(order) at alpha = 0 read off the Taylor coefficients of log C_K(-E),
/// where C_K is built from the fused quantum Wronskian with both radial
/// determinants truncated at the supplied orders. The coefficients come from
/// a discrete Cauchy integral on a small circle, so this route shares none of
/// the algebra of fused_sumrule_eval; the report compares the two.
SumRuleReport fused_contour_residual(int K, int order, const std::vector<double>& zminus,
                                     const std::vector<double>& zplus, double sigma, double lambda, double tol = 1e-7);

/// Functional relation of the 5F4 F(lambda) against F(-lambda).
SumRuleReport f_relation_residual(double sigma, double lambda, double tol = 1e-7);

/// F(2 - m/sigma) by series against its Gamma/trig product.
SumRuleReport f_simplification_residual(double sigma, int m, double tol = 1e-7);

/// calG(alpha, lambda): 3F2 at unit argument over Gamma(1/2 + 2 sigma + sigma alpha/2 + sigma lambda) Gamma(1/2 - sigma alpha/2 - sigma lambda).
double calg(double sigma, double lambda, double alpha);

/// The two four-term relations (sum and difference in alpha) and the three-term relation.
std::array<SumRuleReport, 3> calg_relation_residuals(double sigma, double lambda, double alpha, double tol = 1e-7);

/// calG(2 delta, l) + calG(-2 delta, l) against its Gamma product at l = 1/(2 sigma) - 1, sigma in (1/4, 1/2).
SumRuleReport calg_gauss_reduction_residual(double sigma, double delta, double tol = 1e-7);

}  // namespace szeta
