#pragma once

#include <vector>

#include "spectral_zeta/eigensolver.hpp"

namespace szeta {

/// Large-k model of a spectrum. With u = k + delta and p = 2M/(M+1),
///   E_k = A u^p (1 + sum_j c_j u^{-(j+1)})^p,
/// i.e. E_k^{1/p} is linear in k up to inverse powers of u. The offset
/// delta is found by a one-dimensional minimisation, the rest by linear
/// least squares.
struct TailModel {
    double amplitude = 0.0;
    double delta = 0.0;
    double exponent = 0.0;
    std::vector<double> corrections;
    int window_lo = 0;
    int window_hi = 0;
    double residual = 0.0;  // max relative deviation of the model on the window

    double energy(double k) const;
    /// Sum of energy(k)^{-n} for k >= from.
    double tail_sum(int n, int from) const;
};

struct TailOptions {
    int n_corrections = 2;
    int window_lo = -1;         // -1: one third of the way into the spectrum
    double max_residual = 1e-3; // PoorFit above this
    double inflation = 5.0;     // multiplies the spread between model variants
};

/// Sum of E_k^{-n} over the levels of the spectrum (real parts).
double zeta_partial(const Spectrum& s, int n);
double zeta_partial(const std::vector<double>& energies, int n);

/// Growth exponent 2M/(M+1) of the spectrum's problem.
double growth_exponent(const Spectrum& s);

/// Needs at least 20 levels (InsufficientLevels).
TailModel fit_tail(const Spectrum& s, const TailOptions& opt = {});
TailModel fit_tail(const std::vector<double>& energies, double exponent, const TailOptions& opt = {});

/// Partial sum plus the model tail. The error combines the spread of the tail
/// over model variants (number of corrections, fit window) times the
/// inflation factor, the per-level solver errors, and the truncation of the
/// tail expansion.
ZetaValue zeta_with_tail(const Spectrum& s, int n, const TailOptions& opt = {});
ZetaValue zeta_with_tail(const std::vector<double>& energies, const std::vector<double>& errs, double exponent, int n,
                         const TailOptions& opt = {});

}  // namespace szeta
