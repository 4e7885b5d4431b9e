#pragma once

#include <vector>

#include "spectral_zeta/sumrules.hpp"

namespace szeta {

/// Parameters of the integrable field theory attached to the anharmonic
/// oscillator with alpha = 0: beta^2 = sigma, p = sigma lambda / 2 and the
/// scale nu = (sigma/2)^{2 sigma - 2} Gamma(1 - sigma)^2 between s^2 and E.
struct IMParams {
    double beta2 = 0.0;
    double p = 0.0;
    double nu = 0.0;
};

/// Error(Domain) unless sigma lies in (0, 1/2).
IMParams map_params(double sigma, double lambda);

/// T(0) = 2 cos(pi sigma lambda). Exactly zero when sigma lambda is a half-integer,
/// in which case every G_n below vanishes as well.
double t_zero(double sigma, double lambda);

/// G_1 = 4 pi^2 Gamma(1 - 2 beta^2) / (Gamma(1 - beta^2 - 2p) Gamma(1 - beta^2 + 2p)).
/// Error(Pole) when 1 - 2 beta^2 is a pole of Gamma.
double g1_closed(const IMParams& params);

/// G_n for n = 1, 2, 3 from Z_1(1..n), the zeta values of the K = 1 PT problem,
/// by matching T(s) = C_1(-nu s^2) term by term.
double g_from_zetas(int n, const std::vector<double>& z1_values, double sigma, double lambda);

/// G_2 written through Z_-(2) and Z_+(2) directly, the Z(1) parts having been
/// replaced by their Gamma-function closed forms.
/// Error(SingularCoefficient) when sin(2 pi sigma lambda) or sin(pi sigma (1 -+ lambda)) vanishes.
double g2_explicit(double sigma, double lambda, double z2_minus, double z2_plus);

/// G_1 from its defining double integral
///   2 int_0^{2pi} du int_0^u dv cos(2p(pi + v - u)) [2 sin((u - v)/2)]^{-2 beta^2}.
/// The inner variable is replaced by w = u - v, which leaves a single integral
/// over w with weight (2 pi - w); w = 2 pi x^k with k = 1/(1 - 2 beta^2) then
/// cancels the w^{-2 beta^2} singularity exactly and tanh-sinh does the rest.
/// Error(Domain) unless 0 <= beta^2 < 1/2, Error(QuadratureFailure) when the
/// estimated error exceeds tol (scaled by max(1, |G_1|)).
double g1_integral_oracle(const IMParams& params, double tol = 1e-10);

/// Compares T(0) + sum_{n<=3} G_n s^{2n} with T(0) exp(-sum_{n<=3} Z_1(n) (-nu s^2)^n / n)
/// on the grid of s values; they differ at order s^8. The report is taken at
/// the largest s. Consecutive grid points whose residuals are above round-off
/// must show the s^8 scaling (local slope 8 +- 0.5), otherwise
/// Error(TruncationDominated). The slopes are appended to the report inputs.
SumRuleReport t_series_check(double sigma, double lambda, const std::vector<double>& z1_values,
                             const std::vector<double>& s_grid, double tol = 1e-7);

}  // namespace szeta
