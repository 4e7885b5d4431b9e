#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "spectral_zeta/eigensolver.hpp"
#include "spectral_zeta/errors.hpp"

namespace szeta {

namespace {

bool near_integer(double v) { return std::fabs(v - std::round(v)) < 1e-12; }

// Smallest r with x = xi^r turning every power in the equation into an integer power of xi.
int pick_exponent(const ProblemSpec& p) {
    for (int r = 1; r <= 4; ++r) {
        const bool ok = near_integer(2.0 * p.M * r) && (p.alpha == 0.0 || near_integer((p.M - 1.0) * r));
        if (ok) return r;
    }
    fail(ErrorKind::Discretization, "M is not a rational number with small denominator");
}

// Chebyshev differentiation matrix on cos(j pi / n), j = 0..n.
Eigen::MatrixXd cheb_matrix(int n, Eigen::VectorXd& x) {
    x.resize(n + 1);
    for (int j = 0; j <= n; ++j) x(j) = std::cos(std::numbers::pi * j / n);
    Eigen::VectorXd c(n + 1);
    for (int j = 0; j <= n; ++j) c(j) = ((j == 0 || j == n) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0);
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (i != j) D(i, j) = c(i) / c(j) / (x(i) - x(j));
    for (int i = 0; i <= n; ++i) D(i, i) = -D.row(i).sum();
    return D;
}

std::vector<double> eigenvalues(const ProblemSpec& p, int r, int n, double xi_max) {
    const double nu = 0.5 + p.lambda_eff();
    const double cfirst = 2.0 * nu * r - r + 1.0;
    Eigen::VectorXd t;
    const Eigen::MatrixXd Dt = cheb_matrix(n, t);
    // xi = xi_max (1 - t) / 2 puts xi = 0 at index 0
    const Eigen::MatrixXd D = (-2.0 / xi_max) * Dt;
    const Eigen::MatrixXd D2 = D * D;
    Eigen::VectorXd xi = 0.5 * xi_max * (Eigen::VectorXd::Ones(n + 1) - t);

    // u_0 from the regularity row D[0,:] u = 0, u_n = 0 at the far end
    const int m = n - 1;
    Eigen::MatrixXd A(m, m);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i <= m; ++i) {
        const double z = xi(i);
        const double w = r * r * std::pow(z, 2 * r - 2);
        const double x = std::pow(z, r);
        double pot = std::pow(x, 2.0 * p.M);
        if (p.alpha != 0.0) pot += p.alpha * std::pow(x, p.M - 1.0);
        for (int j = 1; j <= m; ++j) {
            double op = D2(i, j) + cfirst / z * D(i, j);
            // substitute u_0 = -sum_j D(0,j) u_j / D(0,0)
            const double g0 = D2(i, 0) + cfirst / z * D(i, 0);
            op -= g0 * D(0, j) / D(0, 0);
            if (i == j) op -= w * pot;
            A(i - 1, j - 1) = -op;
        }
        B(i - 1, i - 1) = w;
    }
    // keep the weight on the right: dividing by xi^{2r-2} near the origin ruins the conditioning
    Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> es(A, B, false);
    std::vector<double> out;
    for (int i = 0; i < m; ++i) {
        const auto ev = es.eigenvalues()(i);
        if (std::isfinite(ev.real()) && std::fabs(ev.imag()) < 1e-8 * std::max(1.0, std::fabs(ev.real())))
            out.push_back(ev.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Spectrum collocation_spectrum(const ProblemSpec& p, int n_levels, const CollocationOptions& opt) {
    if (n_levels < 1) fail(ErrorKind::Domain, "need at least one level");
    if (p.lambda_eff() < 0.0) fail(ErrorKind::Discretization, "collocation needs psi ~ x^nu with nu >= 1/2");
    const int r = pick_exponent(p);
    if (opt.n_points > 0 && opt.n_points < 4 * n_levels) fail(ErrorKind::Discretization, "basis size must be at least 4 per requested level");

    double x_max = opt.x_max;
    if (x_max <= 0.0) {
        // past the top turning point far enough for exp(-45) decay
        const double Ewkb = wkb_estimate(p, n_levels);
        const double xt = turning_point(p, 1.5 * Ewkb + 10.0);
        x_max = xt;
        double acc = 0.0;
        const double h = 0.005 * xt;
        while (acc < 45.0) {
            double v = std::pow(x_max, 2.0 * p.M) + (p.lambda * p.lambda - 0.25) / (x_max * x_max);
            if (p.alpha != 0.0) v += p.alpha * std::pow(x_max, p.M - 1.0);
            acc += h * std::sqrt(std::max(v - Ewkb, 0.0));
            x_max += h;
        }
    }
    const double xi_max = std::pow(x_max, 1.0 / r);
    const int n = opt.n_points > 0 ? opt.n_points : std::min(360, 60 + 12 * n_levels);

    const std::vector<double> fine = eigenvalues(p, r, n, xi_max);
    const std::vector<double> coarse = eigenvalues(p, r, (4 * n) / 5, xi_max);
    if (static_cast<int>(fine.size()) < n_levels || static_cast<int>(coarse.size()) < n_levels)
        fail(ErrorKind::Discretization, "too few real eigenvalues resolved");

    Spectrum sp;
    sp.problem = p;
    sp.method = SolverMethod::Collocation;
    for (int k = 0; k < n_levels; ++k) sp.levels.push_back(Level{k, {fine[k], 0.0}, std::fabs(fine[k] - coarse[k])});
    return sp;
}

}  // namespace szeta
