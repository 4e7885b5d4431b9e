#pragma once

#include "spectral_zeta/problem.hpp"
#include "spectral_zeta/specfun.hpp"

namespace szeta {

/// N_a = sin(pi sigma (lambda + a)) / sin(pi sigma lambda).
/// Error(SingularCoefficient) when sigma*lambda is an integer.
double n_coeff(int a, double sigma, double lambda);

/// L_a = sin(pi sigma (K+1)(lambda + a)) / sin(pi sigma (K+1) lambda); K = 0 gives N_a.
double l_coeff(int a, double sigma, double lambda, int K);

/// Z_-(1) (Regular) or Z_+(1) (Irregular) of the pure anharmonic oscillator
/// |x|^{2M} on the half line (lambda = 1/2), normalised to the eigenvalues of
/// -psi'' + x^{2M} psi = E psi with Dirichlet (Regular) or Neumann (Irregular)
/// conditions at the origin. This is the classical Voros expression divided
/// by 4; see z1_voros_literal.
ZetaValue z1_voros(double M, Branch branch);

/// The classical expression
///   sigma^{2-2sigma} Gamma(sigma(1 +- 1/2)) Gamma(sigma) Gamma(1/2 - sigma)
///   / (sqrt(pi) Gamma(1 - sigma(1 -+ 1/2)))
/// exactly as usually quoted. It equals 4 * z1_voros(M, branch), so it does
/// not reproduce the eigenvalue sum of the ODE above (the shooting spectra
/// agree with z1_voros).
double z1_voros_literal(double M, Branch branch);

/// Z_-(1) at alpha = 0 in Gamma form. Use -lambda for Z_+(1).
ZetaValue z1_zero_alpha(double sigma, double lambda);

/// Z_-(1) for general alpha: Gamma prefactor times a 3F2 at unit argument
/// (convergent for sigma < 1/2). Rejects excluded lambda.
ZetaValue z1_general_alpha(double sigma, double lambda, double alpha, double tol = 1e-13);

/// Z_-(2) at alpha = 0: Gamma prefactor times the 5F4 F(lambda).
/// The removable 0/0 where 1/2 + sigma*lambda is a non-positive integer is
/// resolved by its limit.
ZetaValue z2_zero_alpha(double sigma, double lambda, double tol = 1e-13);

/// The 5F4 F(lambda) on its own (used by the functional relations).
PfqResult f5f4(double sigma, double lambda, double tol = 1e-13);

/// Branch-dispatching wrappers: the Irregular value is the Regular one at -lambda.
ZetaValue z1_closed(double sigma, double lambda, double alpha, Branch branch);
ZetaValue z2_closed(double sigma, double lambda, Branch branch);

/// Z_+(2) at sigma (lambda + 2) = m, where N_2 vanishes.
ZetaValue z2_plus_simplified(double sigma, int m);

/// Z(2) = Z_+(2) + Z_-(2) at sigma = (2m-1)/(2 lambda).
ZetaValue z_full_2_simplified(double sigma, double lambda, int m);

/// Ztilde(2) = Z_+(2) - Z_-(2) at sigma = 1/4.
ZetaValue z_skew_2_simplified(double lambda);

/// Z_K(2) of the PT problem at alpha = 0 and sigma (lambda + 2) = m.
ZetaValue zk2_simplified(double sigma, int m, int K);

}  // namespace szeta
