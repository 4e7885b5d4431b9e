#include "spectral_zeta/zeta_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "spectral_zeta/errors.hpp"
#include "spectral_zeta/specfun.hpp"

namespace szeta {

namespace {

constexpr int kSeriesOrder = 14;

struct LinearFit {
    double a = 0.0;
    std::vector<double> b;
    double rss = 0.0;
};

// y_k = a u + sum_j b_j u^{-j}, u = k + delta, least squares over [lo, hi]
LinearFit linear_fit(const std::vector<double>& y, int lo, int hi, double delta, int J) {
    const int rows = hi - lo + 1;
    const double U = hi + delta;
    Eigen::MatrixXd X(rows, J + 1);
    Eigen::VectorXd rhs(rows);
    for (int i = 0; i < rows; ++i) {
        const double u = lo + i + delta;
        X(i, 0) = u / U;
        double w = 1.0;
        for (int j = 1; j <= J; ++j) {
            w *= U / u;
            X(i, j) = w;
        }
        rhs(i) = y[lo + i] / U;
    }
    const Eigen::VectorXd c = X.colPivHouseholderQr().solve(rhs);
    LinearFit f;
    f.a = c(0);
    for (int j = 1; j <= J; ++j) f.b.push_back(c(j) * std::pow(U, j + 1));
    f.rss = (X * c - rhs).squaredNorm();
    return f;
}

TailModel fit_window(const std::vector<double>& E, double p, int lo, int hi, int J) {
    if (hi - lo + 1 < J + 4) fail(ErrorKind::InsufficientLevels, "fit window too short for the requested corrections");
    std::vector<double> y(E.size());
    for (std::size_t k = 0; k < E.size(); ++k) {
        if (!(E[k] > 0.0)) fail(ErrorKind::PoorFit, "tail model needs positive energies");
        y[k] = std::pow(E[k], 1.0 / p);
    }
    // starting offset from the straight line through the window ends
    const double slope = (y[hi] - y[lo]) / (hi - lo);
    const double d0 = y[hi] / slope - hi;
    const double dmin = std::max(d0 - 1.5, -lo + 0.05);
    const double dmax = std::max(d0 + 1.5, dmin + 0.1);
    auto cost = [&](double d) { return linear_fit(y, lo, hi, d, J).rss; };
    const auto best = boost::math::tools::brent_find_minima(cost, dmin, dmax, std::numeric_limits<double>::digits);
    const double delta = best.first;
    const LinearFit f = linear_fit(y, lo, hi, delta, J);

    TailModel m;
    m.exponent = p;
    m.delta = delta;
    m.amplitude = std::pow(f.a, p);
    for (double b : f.b) m.corrections.push_back(b / f.a);
    m.window_lo = lo;
    m.window_hi = hi;
    double worst = 0.0;
    for (int k = lo; k <= hi; ++k) worst = std::max(worst, std::fabs(m.energy(k) - E[k]) / E[k]);
    m.residual = worst;
    return m;
}

int default_window_lo(int n_levels, const TailOptions& opt) {
    if (opt.window_lo >= 0) return opt.window_lo;
    return std::max(3, n_levels / 3);
}

std::vector<double> real_energies(const Spectrum& s) {
    std::vector<double> out;
    for (const Level& l : s.levels) {
        if (std::fabs(l.E.imag()) > 1e-8 * std::max(1.0, std::abs(l.E)))
            fail(ErrorKind::Domain, "zeta sums here need a real spectrum");
        out.push_back(l.E.real());
    }
    return out;
}

std::vector<double> level_errors(const Spectrum& s) {
    std::vector<double> out;
    for (const Level& l : s.levels) out.push_back(l.err);
    return out;
}

}  // namespace

double TailModel::energy(double k) const {
    const double u = k + delta;
    double g = 1.0, t = 1.0 / u, w = t;
    for (double c : corrections) {
        w *= t;
        g += c * w;
    }
    return amplitude * std::pow(u, exponent) * std::pow(g, exponent);
}

double TailModel::tail_sum(int n, int from) const {
    // (1 + sum_j c_j t^{j+1})^{-n p} as a power series in t = 1/u
    const double gam = -n * exponent;
    std::vector<double> g(kSeriesOrder + 1, 0.0), f(kSeriesOrder + 1, 0.0);
    g[0] = 1.0;
    for (std::size_t j = 0; j < corrections.size() && j + 2 <= kSeriesOrder; ++j) g[j + 2] = corrections[j];
    f[0] = 1.0;
    for (int m = 1; m <= kSeriesOrder; ++m) {
        double acc = 0.0;
        for (int k = 1; k <= m; ++k) acc += (gam * k - (m - k)) * g[k] * f[m - k];
        f[m] = acc / m;
    }
    const double q = from + delta;
    double sum = 0.0;
    for (int m = 0; m <= kSeriesOrder; ++m)
        if (f[m] != 0.0) sum += f[m] * hurwitz_zeta(n * exponent + m, q);
    return sum / std::pow(amplitude, n);
}

double zeta_partial(const std::vector<double>& energies, int n) {
    if (n < 1) fail(ErrorKind::Domain, "zeta order must be a positive integer");
    double s = 0.0;
    // smallest terms first
    for (auto it = energies.rbegin(); it != energies.rend(); ++it) {
        if (*it == 0.0) fail(ErrorKind::ZeroEnergy, "zero eigenvalue in zeta sum");
        s += std::pow(*it, -n);
    }
    return s;
}

double zeta_partial(const Spectrum& s, int n) { return zeta_partial(real_energies(s), n); }

double growth_exponent(const Spectrum& s) {
    const double M = std::visit([](const auto& p) { return p.M; }, s.problem);
    return 2.0 * M / (M + 1.0);
}

TailModel fit_tail(const std::vector<double>& energies, double exponent, const TailOptions& opt) {
    const int n = static_cast<int>(energies.size());
    if (n < 20) fail(ErrorKind::InsufficientLevels, "tail fit needs at least 20 levels");
    const int lo = default_window_lo(n, opt);
    if (lo >= n - 1) fail(ErrorKind::InsufficientLevels, "fit window lies outside the spectrum");
    TailModel m = fit_window(energies, exponent, lo, n - 1, opt.n_corrections);
    if (m.residual > opt.max_residual) fail(ErrorKind::PoorFit, "tail model residual above threshold");
    return m;
}

TailModel fit_tail(const Spectrum& s, const TailOptions& opt) {
    return fit_tail(real_energies(s), growth_exponent(s), opt);
}

ZetaValue zeta_with_tail(const std::vector<double>& energies, const std::vector<double>& errs, double exponent, int n,
                         const TailOptions& opt) {
    const int N = static_cast<int>(energies.size());
    const TailModel main = fit_tail(energies, exponent, opt);
    const double partial = zeta_partial(energies, n);
    const double tail = main.tail_sum(n, N);

    // spread over neighbouring models
    const int lo = main.window_lo, hi = main.window_hi;
    double spread = 0.0;
    auto try_variant = [&](int vlo, int J) {
        if (J < 1 || hi - vlo + 1 < J + 4) return;
        const TailModel v = fit_window(energies, exponent, vlo, hi, J);
        spread = std::max(spread, std::fabs(v.tail_sum(n, N) - tail));
    };
    try_variant(lo, opt.n_corrections - 1);
    try_variant(lo, opt.n_corrections + 1);
    try_variant(lo + (hi - lo) / 2, opt.n_corrections);

    double solver = 0.0;
    for (int k = 0; k < N; ++k) {
        const double e = k < static_cast<int>(errs.size()) ? errs[k] : 0.0;
        solver += n * e * std::pow(energies[k], -n - 1);
    }
    const double value = partial + tail;
    const double err = opt.inflation * spread + solver + 64.0 * std::numeric_limits<double>::epsilon() * std::fabs(value);
    return ZetaValue{n, value, err, ZetaMethod::EigSum};
}

ZetaValue zeta_with_tail(const Spectrum& s, int n, const TailOptions& opt) {
    return zeta_with_tail(real_energies(s), level_errors(s), growth_exponent(s), n, opt);
}

}  // namespace szeta
