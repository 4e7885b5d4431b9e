#pragma once

#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

#include "spectral_zeta/problem.hpp"

namespace szeta {

enum class SolverMethod { Shooting, Collocation, PTShooting };

const char* to_string(SolverMethod m) noexcept;

struct Level {
    int k = 0;
    std::complex<double> E;
    double err = 0.0;
};

struct Spectrum {
    std::variant<ProblemSpec, PTProblemSpec> problem;
    std::vector<Level> levels;
    SolverMethod method = SolverMethod::Shooting;

    /// Real parts of the energies in level order.
    std::vector<double> energies() const;
};

struct ShootingOptions {
    double tol = 1e-12;        // local tolerance of the Runge-Kutta-Fehlberg 7(8) stepper
    double decay = 40.0;       // integral of sqrt(V - E) between the turning point and x_max
    double x0_scale = 1.0;     // multiplies the default starting abscissa
    double x_match = 0.0;      // matching abscissa; 0 selects the outer turning point
    bool estimate_errors = true;
    int threads = 0;           // 0: SPECTRAL_ZETA_THREADS or hardware concurrency
};

/// Diagnostic of one shot at energy E.
struct ShotResult {
    double wronskian = 0.0;  // psi_out psi_in' - psi_out' psi_in, normalised by the amplitudes and the Pruefer scale
    double phase = 0.0;      // continuous Pruefer mismatch theta_out - theta_in, equal to k*pi at E_k
    int nodes_out = 0;
    int nodes_in = 0;
    double x0 = 0.0;
    double x_match = 0.0;
    double x_max = 0.0;
};

/// Outer classical turning point of x^{2M} + alpha x^{M-1} + (lambda^2-1/4)/x^2 at energy E.
double turning_point(const ProblemSpec& p, double E);

/// Bohr-Sommerfeld estimate of E_k: integral of sqrt(E - x^{2M} - alpha x^{M-1}) over
/// the allowed region equals pi (k + delta). The default delta = (1 + lambda_eff)/2
/// is exact for the harmonic case.
double wkb_estimate(const ProblemSpec& p, int k, double delta);
double wkb_estimate(const ProblemSpec& p, int k);

/// The phase integral pi^{-1} * integral sqrt(E - W) minus k, i.e. the delta that
/// would make wkb_estimate(p, k, delta) return E.
double wkb_delta(const ProblemSpec& p, int k, double E);

/// Integrate the Frobenius solution outward and the WKB-decaying solution inward,
/// then compare at the matching point.
ShotResult shoot_detail(const ProblemSpec& p, double E, const ShootingOptions& opt = {});

/// Normalised mismatch; zero exactly at eigenvalues.
double shoot(const ProblemSpec& p, double E, const ShootingOptions& opt = {});

/// Number of eigenvalues strictly below E (from the Pruefer phase).
int count_below(const ProblemSpec& p, double E, const ShootingOptions& opt = {});

/// Number of interior zeros of the eigenfunction at energy E (meaningful at an eigenvalue).
int node_count(const ProblemSpec& p, double E, const ShootingOptions& opt = {});

/// Levels k = 0 .. n_levels-1 by phase bracketing and secant polishing.
/// The irregular branch is supported for |lambda| < 1.
Spectrum solve_spectrum(const ProblemSpec& p, int n_levels, const ShootingOptions& opt = {});

/// Single level, bracketed around `guess` (0 picks the WKB estimate).
Level solve_level(const ProblemSpec& p, int k, const ShootingOptions& opt = {}, double guess = 0.0);

struct CollocationOptions {
    int n_points = 0;    // 0 chooses from the number of requested levels
    double x_max = 0.0;  // 0 chooses from the WKB turning point of the highest level
};

/// Independent oracle: Chebyshev collocation after the substitution
/// psi = x^{1/2+lambda_eff} u(xi), x = xi^r, which makes the coefficients
/// polynomial for rational M. Needs lambda_eff >= 0 and M(r) integral
/// for some r <= 4; otherwise Error(Discretization).
Spectrum collocation_spectrum(const ProblemSpec& p, int n_levels, const CollocationOptions& opt = {});

/// Worker count: SPECTRAL_ZETA_THREADS if set and positive, else hardware concurrency.
unsigned worker_threads(int requested = 0);

}  // namespace szeta
