#pragma once

#include <complex>
#include <utility>

#include "spectral_zeta/eigensolver.hpp"
#include "spectral_zeta/problem.hpp"

namespace szeta {

struct PTOptions {
    double tol = 1e-12;
    /// decay exponent at which the ray integration starts
    double decay = 40.0;
    /// multiplies the starting radius on both rays
    double rho_scale = 1.0;
    /// scan points per WKB level spacing on the real axis
    int scan_density = 3;
    bool estimate_errors = true;
    int threads = 0;
};

/// Arguments -pi/2 -+ pi (K+1)/(2M+2) of the rays the contour must approach.
std::pair<double, double> anti_stokes_angles(double M, int K);

/// True when one of the rays leaves the open lower half plane (K >= M), so
/// the contour would have to wind around the cut on the positive imaginary axis.
bool crosses_cut(double M, int K);

/// Starting radius of the ray integrations for energy E.
double pt_rho_max(const PTProblemSpec& p, std::complex<double> E, const PTOptions& opt = {});

/// Wronskian of the two solutions that decay along the rays, taken midway
/// between the complex turning points (where both oscillate) and divided by
/// the norms of the two states (phi, phi'/s), so |value| <= 1. Only a real positive
/// factor is removed, hence pt_shoot(conj E) equals conj(pt_shoot(E)) and
/// the value is real for real E.
/// Needs alpha = 0, lambda = 1/2 and K < M.
std::complex<double> pt_shoot(const PTProblemSpec& p, std::complex<double> E, const PTOptions& opt = {});

/// Complex WKB estimate ((k + 1/2) sqrt(pi) Gamma(3/2 + 1/(2M)) / (sin(pi K/(2M)) Gamma(1 + 1/(2M))))^{2M/(M+1)}.
double pt_wkb_estimate(const PTProblemSpec& p, double k);

/// First `count` eigenvalues ordered by real part. Real levels come from a
/// scan of the real axis; any levels still missing are searched for as
/// complex conjugate pairs with a secant iteration from WKB guesses.
Spectrum pt_solve_spectrum(const PTProblemSpec& p, int count, const PTOptions& opt = {});

}  // namespace szeta
