#include "spectral_zeta/iom.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "spectral_zeta/errors.hpp"
#include "spectral_zeta/specfun.hpp"

namespace szeta {

namespace {

constexpr double kPi = std::numbers::pi;

void require_sigma(double sigma) {
    if (!(sigma > 0.0 && sigma < 0.5)) fail(ErrorKind::Domain, "sigma must lie in (0, 1/2)");
}

// T(0) exp(-sum Z(n) (-E)^n / n) with E = nu s^2
double t_exact(double t0, const std::vector<double>& z, double E) {
    double e = 0.0, pw = 1.0;
    for (std::size_t n = 1; n <= z.size(); ++n) {
        pw *= -E;
        e -= z[n - 1] * pw / static_cast<double>(n);
    }
    return t0 * std::exp(e);
}

}  // namespace

IMParams map_params(double sigma, double lambda) {
    require_sigma(sigma);
    IMParams r;
    r.beta2 = sigma;
    r.p = 0.5 * sigma * lambda;
    const double g = gamma(1.0 - sigma);
    r.nu = std::pow(0.5 * sigma, 2.0 * sigma - 2.0) * g * g;
    return r;
}

double t_zero(double sigma, double lambda) { return 2.0 * cos_pi(sigma * lambda); }

double g1_closed(const IMParams& params) {
    const double b = params.beta2, p2 = 2.0 * params.p;
    return 4.0 * kPi * kPi * gamma(1.0 - 2.0 * b) * rgamma(1.0 - b - p2) * rgamma(1.0 - b + p2);
}

double g_from_zetas(int n, const std::vector<double>& z1_values, double sigma, double lambda) {
    if (n < 1 || n > 3) fail(ErrorKind::Domain, "G_n is implemented for n = 1, 2, 3");
    if (static_cast<int>(z1_values.size()) < n) fail(ErrorKind::Domain, "G_n needs Z_1(1..n)");
    const IMParams ip = map_params(sigma, lambda);
    const double c = cos_pi(sigma * lambda);
    const double z1 = z1_values[0];
    switch (n) {
        case 1:
            return 2.0 * ip.nu * c * z1;
        case 2:
            return ip.nu * ip.nu * c * (z1 * z1 - z1_values[1]);
        default: {
            const double z2 = z1_values[1], z3 = z1_values[2];
            return std::pow(ip.nu, 3) * c * (z1 * z1 * z1 + 2.0 * z3 - 3.0 * z2 * z1) / 3.0;
        }
    }
}

double g2_explicit(double sigma, double lambda, double z2_minus, double z2_plus) {
    const IMParams ip = map_params(sigma, lambda);
    const double s2l = sin_pi(2.0 * sigma * lambda);
    const double sm = sin_pi(sigma * (1.0 - lambda)), sp = sin_pi(sigma * (1.0 + lambda));
    if (s2l == 0.0 || sm == 0.0 || sp == 0.0 || std::fabs(s2l) < 1e-14)
        fail(ErrorKind::SingularCoefficient, "G_2 coefficients are singular at this sigma, lambda");
    const double c = cos_pi(sigma * lambda);
    const double cs = cos_pi(sigma);
    const double g12 = gamma(1.0 - 2.0 * sigma);
    const double den = rgamma(1.0 - sigma * (1.0 - lambda)) * rgamma(1.0 - sigma * (1.0 + lambda));
    const double trig = 1.0 - std::pow(cs, 4) / (sm * sm * sp * sp);
    const double gamma_block = 4.0 * std::pow(kPi, 4) * g12 * g12 * den * den / c * trig;
    const double zeta_block = ip.nu * ip.nu * c *
                              (sin_pi(2.0 * sigma * (2.0 - lambda)) / s2l * z2_plus -
                               sin_pi(2.0 * sigma * (2.0 + lambda)) / s2l * z2_minus);
    return gamma_block + zeta_block;
}

double g1_integral_oracle(const IMParams& params, double tol) {
    const double b = params.beta2;
    if (!(b >= 0.0 && b < 0.5)) fail(ErrorKind::Domain, "the G_1 integral converges only for 0 <= beta^2 < 1/2");
    const double k = 1.0 / (1.0 - 2.0 * b);
    const double twopi = 2.0 * kPi;
    const double pref = 2.0 * twopi * k * std::pow(twopi, -2.0 * b);
    auto f = [&](double x) {
        if (x <= 0.0) return pref * twopi * std::cos(2.0 * params.p * kPi);
        const double lx = k * std::log(x);
        const double w = twopi * std::exp(lx);
        const double d = -twopi * std::expm1(lx);  // 2 pi - w without cancellation
        if (d <= 0.0) return 0.0;
        // w / (2 sin(w/2)); past w = pi use sin(w/2) = sin(d/2)
        const double ratio = w < 1e-7 ? 1.0 : w / (2.0 * std::sin(0.5 * (w < kPi ? w : d)));
        return pref * d * std::cos(2.0 * params.p * (kPi - w)) * std::pow(ratio, 2.0 * b);
    };
    boost::math::quadrature::tanh_sinh<double> integrator(15);
    double err = 0.0, l1 = 0.0;
    const double v = integrator.integrate(f, 0.0, 1.0, std::max(tol * 1e-2, 1e-15), &err, &l1);
    if (!std::isfinite(v) || err > tol * std::max(1.0, std::fabs(v))) {
        std::ostringstream os;
        os << "G_1 quadrature error estimate " << err << " exceeds tolerance " << tol << " (beta^2 = " << b << ")";
        fail(ErrorKind::QuadratureFailure, os.str());
    }
    return v;
}

SumRuleReport t_series_check(double sigma, double lambda, const std::vector<double>& z1_values,
                             const std::vector<double>& s_grid, double tol) {
    if (z1_values.size() < 3) fail(ErrorKind::Domain, "the T(s) check needs Z_1(1), Z_1(2), Z_1(3)");
    if (s_grid.empty()) fail(ErrorKind::Domain, "empty s grid");
    std::vector<double> grid = s_grid;
    for (double s : grid)
        if (!(std::isfinite(s) && s >= 0.0)) fail(ErrorKind::Domain, "s values must be finite and non-negative");
    std::sort(grid.begin(), grid.end());

    const IMParams ip = map_params(sigma, lambda);
    const std::vector<double> z(z1_values.begin(), z1_values.begin() + 3);
    const double t0 = t_zero(sigma, lambda);
    double g[3];
    for (int n = 1; n <= 3; ++n) g[n - 1] = g_from_zetas(n, z, sigma, lambda);

    struct Point {
        double s, series, exact, scale;
    };
    std::vector<Point> pts;
    for (double s : grid) {
        const double s2 = s * s;
        double series = t0, scale = std::fabs(t0), pw = 1.0;
        for (int n = 0; n < 3; ++n) {
            pw *= s2;
            series += g[n] * pw;
            scale += std::fabs(g[n] * pw);
        }
        pts.push_back({s, series, t_exact(t0, z, ip.nu * s2), scale});
    }

    std::vector<std::pair<std::string, double>> slopes;
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Point &a = pts[i], &b = pts[i + 1];
        if (a.s <= 0.0 || b.s <= a.s) continue;
        const double ra = std::fabs(a.series - a.exact), rb = std::fabs(b.series - b.exact);
        if (ra < 1e3 * eps * a.scale || rb < 1e3 * eps * b.scale) continue;
        const double slope = std::log(rb / ra) / std::log(b.s / a.s);
        slopes.emplace_back("slope", slope);
        if (std::fabs(slope - 8.0) > 0.5) {
            std::ostringstream os;
            os << "T(s) residual scales like s^" << slope << " between s = " << a.s << " and " << b.s
               << ", expected s^8";
            fail(ErrorKind::TruncationDominated, os.str());
        }
    }

    const Point& last = pts.back();
    SumRuleReport r;
    r.id = "T-series";
    r.lhs = last.series;
    r.rhs = last.exact;
    r.abs_residual = std::fabs(last.series - last.exact);
    r.scale = last.scale > 0.0 ? last.scale : 1.0;
    r.rel_residual = r.abs_residual / r.scale;
    r.tolerance = tol;
    r.pass = r.rel_residual <= tol;
    r.provenance = "Series";
    r.inputs = {{"sigma", sigma}, {"lambda", lambda}, {"s", last.s}};
    r.inputs.insert(r.inputs.end(), slopes.begin(), slopes.end());
    return r;
}

}  // namespace szeta
