#include "spectral_zeta/eigensolver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "spectral_zeta/errors.hpp"

namespace szeta {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

using State = std::array<double, 2>;

double potential(const ProblemSpec& p, double x) {
    double v = std::pow(x, 2.0 * p.M) + (p.lambda * p.lambda - 0.25) / (x * x);
    if (p.alpha != 0.0) v += p.alpha * std::pow(x, p.M - 1.0);
    return v;
}

// potential without the centrifugal term; this is what enters the phase integral
double smooth_part(const ProblemSpec& p, double x) {
    double w = std::pow(x, 2.0 * p.M);
    if (p.alpha != 0.0) w += p.alpha * std::pow(x, p.M - 1.0);
    return w;
}

void require_supported(const ProblemSpec& p) {
    // psi ~ x^{1/2 + lambda_eff} must stay square integrable at the origin
    if (!(p.lambda_eff() > -1.0)) fail(ErrorKind::Domain, "boundary behaviour x^{1/2-|lambda|} needs |lambda| < 1");
}

struct Geometry {
    double x0 = 0.0;
    double x_match = 0.0;
    double x_max = 0.0;
    double scale = 1.0;  // Pruefer scale s: state is (psi, psi'/s)
};

double default_x0(double E, double x0_scale) {
    return std::min(0.25, 0.5 / std::sqrt(std::max(std::fabs(E), 1.0))) * x0_scale;
}

double decay_point(const ProblemSpec& p, double E, double from, double decay) {
    const double h = 0.01 * std::max(from, 0.5);
    double x = from, acc = 0.0;
    double k_prev = std::sqrt(std::max(potential(p, x) - E, 0.0));
    for (int i = 0; i < 200000; ++i) {
        const double k = std::sqrt(std::max(potential(p, x + h) - E, 0.0));
        acc += 0.5 * h * (k + k_prev);
        x += h;
        k_prev = k;
        if (acc >= decay) return x;
    }
    fail(ErrorKind::IntegrationFailure, "could not place the outer boundary");
}

Geometry make_geometry(const ProblemSpec& p, double E, const ShootingOptions& opt, double x0_scale) {
    Geometry g;
    g.scale = std::sqrt(std::max(std::fabs(E), 1.0));
    g.x0 = default_x0(E, x0_scale);
    const double xt = turning_point(p, E);
    g.x_match = opt.x_match > 0.0 ? opt.x_match : std::max(xt, 2.0 * g.x0);
    g.x_max = decay_point(p, E, std::max(xt, g.x_match), opt.decay);
    if (g.x_match >= g.x_max) g.x_max = g.x_match + 1.0;
    return g;
}

// Frobenius data at x0: psi = x^nu sum c(a,b) x^{2a + (M+1) b}; returns (psi, psi') / x0^nu.
State frobenius_start(const ProblemSpec& p, double E, double x0) {
    constexpr int A = 24, B = 16;
    const double nu = 0.5 + p.lambda_eff();
    const double h = p.M + 1.0;
    std::array<std::array<double, B + 1>, A + 1> c{};
    c[0][0] = 1.0;
    double s = 0.0, ds = 0.0;
    for (int a = 0; a <= A; ++a) {
        for (int b = 0; b <= B; ++b) {
            const double e = 2.0 * a + h * b;
            if (a > 0 || b > 0) {
                double rhs = 0.0;
                if (b >= 2) rhs += c[a][b - 2];
                if (b >= 1) rhs += p.alpha * c[a][b - 1];
                if (a >= 1) rhs -= E * c[a - 1][b];
                const double d = e * (e + 2.0 * nu - 1.0);
                if (std::fabs(d) < 1e-10) {
                    if (std::fabs(rhs) > 1e-300) fail(ErrorKind::ExcludedLambda, "resonant Frobenius exponent");
                    c[a][b] = 0.0;
                } else {
                    c[a][b] = rhs / d;
                }
            }
            const double xe = std::pow(x0, e);
            s += c[a][b] * xe;
            ds += c[a][b] * (nu + e) * xe;
        }
    }
    return State{s, ds / x0};
}

State wkb_tail_start(const ProblemSpec& p, double E, double x) {
    const double kappa = std::sqrt(std::max(potential(p, x) - E, kEps));
    const double dx = 1e-6 * x;
    const double dV = (potential(p, x + dx) - potential(p, x - dx)) / (2.0 * dx);
    return State{1.0, -kappa - dV / (4.0 * kappa * kappa)};
}

double reduced_angle(const State& y) {
    double t = std::atan2(y[0], y[1]);
    if (t < 0.0) t += kPi;
    if (t >= kPi) t -= kPi;
    return t;
}

struct LegResult {
    State y;
    int nodes = 0;
};

// Integrate (psi, psi'/s) from a to b, renormalising after each accepted step
// so that a plain absolute tolerance is meaningful throughout.
LegResult integrate_leg(const ProblemSpec& p, double E, State y, double a, double b, double s, double tol) {
    auto sys = [&](const State& u, State& du, double x) {
        du[0] = s * u[1];
        du[1] = (potential(p, x) - E) * u[0] / s;
    };
    auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
    const double dir = b > a ? 1.0 : -1.0;
    const double hmax = 0.5 / s;
    const double span = std::fabs(b - a);
    double x = a;
    double dt = dir * std::min(hmax, span / 16.0);
    LegResult r;
    double n0 = std::hypot(y[0], y[1]);
    y[0] /= n0;
    y[1] /= n0;
    long accepted = 0, rejected = 0;
    while (dir * (b - x) > 1e-14 * std::max(1.0, std::fabs(b))) {
        if (dir * (x + dt - b) > 0.0) dt = b - x;
        if (std::fabs(dt) > hmax) dt = dir * hmax;
        const State prev = y;
        const auto res = stepper.try_step(sys, y, x, dt);
        if (res == odeint::fail) {
            if (std::fabs(dt) < 1e-13 * std::max(1.0, std::fabs(x))) fail(ErrorKind::Stiffness, "step size underflow");
            if (++rejected > 2000000) fail(ErrorKind::IntegrationFailure, "too many rejected steps");
            continue;
        }
        if (prev[0] != 0.0 && ((prev[0] > 0.0) != (y[0] > 0.0))) ++r.nodes;
        const double n = std::hypot(y[0], y[1]);
        if (!std::isfinite(n) || n == 0.0) fail(ErrorKind::IntegrationFailure, "non-finite state");
        y[0] /= n;
        y[1] /= n;
        if (++accepted > 5000000) fail(ErrorKind::IntegrationFailure, "too many steps");
    }
    r.y = y;
    return r;
}

ShotResult shoot_with(const ProblemSpec& p, double E, const Geometry& g, double tol) {
    State y0 = frobenius_start(p, E, g.x0);
    y0[1] /= g.scale;
    const LegResult out = integrate_leg(p, E, y0, g.x0, g.x_match, g.scale, tol);
    State y1 = wkb_tail_start(p, E, g.x_max);
    y1[1] /= g.scale;
    const LegResult in = integrate_leg(p, E, y1, g.x_max, g.x_match, g.scale, tol);

    ShotResult s;
    s.wronskian = out.y[0] * in.y[1] - out.y[1] * in.y[0];
    s.phase = reduced_angle(out.y) - reduced_angle(in.y) + kPi * (out.nodes + in.nodes);
    s.nodes_out = out.nodes;
    s.nodes_in = in.nodes;
    s.x0 = g.x0;
    s.x_match = g.x_match;
    s.x_max = g.x_max;
    return s;
}

int count_from_phase(double phase) {
    if (phase <= 0.0) return 0;
    return static_cast<int>(std::ceil(phase / kPi));
}

// Illinois regula falsi on the phase mismatch inside a bracket holding one level.
double polish(const ProblemSpec& p, int k, double lo, double hi, const Geometry& g, double tol) {
    auto f = [&](double E) { return shoot_with(p, E, g, tol).phase - kPi * k; };
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa > 0.0 || fb < 0.0) {
        // geometry differs slightly from the bracketing shots; widen once
        const double w = hi - lo;
        a = lo - 0.25 * w;
        b = hi + 0.25 * w;
        fa = f(a);
        fb = f(b);
        if (fa > 0.0 || fb < 0.0) fail(ErrorKind::BracketingFailure, "phase mismatch does not change sign across the bracket");
    }
    int side = 0;
    double c = a;
    for (int it = 0; it < 200; ++it) {
        c = (a * fb - b * fa) / (fb - fa);
        if (!(c > a && c < b)) c = 0.5 * (a + b);
        const double fc = f(c);
        if (fc == 0.0) return c;
        if (fc < 0.0) {
            a = c;
            fa = fc;
            if (side == -1) fb *= 0.5;
            side = -1;
        } else {
            b = c;
            fb = fc;
            if (side == 1) fa *= 0.5;
            side = 1;
        }
        if (b - a <= 4.0 * kEps * std::max(1.0, std::fabs(c))) break;
        if (std::fabs(fc) < 1e-15 * std::max(1.0, static_cast<double>(k))) break;
    }
    return c;
}

}  // namespace

const char* to_string(SolverMethod m) noexcept {
    switch (m) {
        case SolverMethod::Shooting: return "shooting";
        case SolverMethod::Collocation: return "collocation";
        case SolverMethod::PTShooting: return "pt-shooting";
    }
    return "unknown";
}

std::vector<double> Spectrum::energies() const {
    std::vector<double> out;
    out.reserve(levels.size());
    for (const auto& l : levels) out.push_back(l.E.real());
    return out;
}

unsigned worker_threads(int requested) {
    if (requested > 0) return static_cast<unsigned>(requested);
    if (const char* env = std::getenv("SPECTRAL_ZETA_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Largest root of f(x) = E for a function that is eventually increasing; when
// f stays above E the abscissa of the smallest sampled value is returned and
// `found` is cleared.
template <class F>
double outer_root(const F& f, double E, double start, bool& found) {
    double hi = start;
    while (f(hi) <= E) hi *= 2.0;
    double x = hi, best = hi, vbest = f(hi);
    while (x > 1e-4) {
        const double nx = 0.97 * x;
        const double v = f(nx);
        if (v < E) {
            double a = nx, b = x;
            for (int i = 0; i < 200 && b - a > 1e-15 * b; ++i) {
                const double m = 0.5 * (a + b);
                (f(m) < E ? a : b) = m;
            }
            found = true;
            return 0.5 * (a + b);
        }
        if (v < vbest) {
            vbest = v;
            best = nx;
        }
        x = nx;
    }
    found = false;
    return best;
}

double start_abscissa(const ProblemSpec& p, double E) {
    return std::max(1.0, std::pow(std::fabs(E) + std::fabs(p.alpha) + 1.0, 1.0 / (2.0 * p.M)));
}

double phase_integral(const ProblemSpec& p, double E) {
    bool found = false;
    const double xw = outer_root([&](double x) { return smooth_part(p, x); }, E, start_abscissa(p, E), found);
    if (!found) return 0.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate([&](double x) { return std::sqrt(std::max(E - smooth_part(p, x), 0.0)); }, 0.0, xw);
}

}  // namespace

double turning_point(const ProblemSpec& p, double E) {
    bool found = false;
    return outer_root([&](double x) { return potential(p, x); }, E, start_abscissa(p, E), found);
}

double wkb_delta(const ProblemSpec& p, int k, double E) {
    return phase_integral(p, E) / kPi - k;
}

double wkb_estimate(const ProblemSpec& p, int k) {
    return wkb_estimate(p, k, 0.5 * (1.0 + p.lambda_eff()));
}

double wkb_estimate(const ProblemSpec& p, int k, double delta) {
    const double target = kPi * (k + delta);
    if (!(target > 0.0)) fail(ErrorKind::Domain, "WKB target phase must be positive");
    // for alpha = 0 the phase integral is exactly c E^{(M+1)/(2M)}
    const double c1 = phase_integral(p, 1.0);
    double guess = std::pow(target / std::max(c1, 1e-3), 2.0 * p.M / (p.M + 1.0));
    if (p.alpha == 0.0) return guess;
    guess = std::max(guess, 1e-3);
    auto f = [&](double E) { return phase_integral(p, E) - target; };
    boost::math::tools::eps_tolerance<double> tol(40);
    std::uintmax_t it = 200;
    // the integral is increasing in E; allow negative energies for strongly negative alpha
    double lo = guess, hi = guess;
    double step = std::max(1.0, 0.5 * guess);
    while (f(lo) > 0.0) {
        lo -= step;
        step *= 2.0;
        if (step > 1e12) fail(ErrorKind::NoConvergence, "WKB bracket");
    }
    step = std::max(1.0, 0.5 * guess);
    while (f(hi) < 0.0) {
        hi += step;
        step *= 2.0;
        if (step > 1e12) fail(ErrorKind::NoConvergence, "WKB bracket");
    }
    if (lo == hi) return lo;
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, it);
    return 0.5 * (r.first + r.second);
}

ShotResult shoot_detail(const ProblemSpec& p, double E, const ShootingOptions& opt) {
    require_supported(p);
    return shoot_with(p, E, make_geometry(p, E, opt, opt.x0_scale), opt.tol);
}

double shoot(const ProblemSpec& p, double E, const ShootingOptions& opt) {
    return shoot_detail(p, E, opt).wronskian;
}

int count_below(const ProblemSpec& p, double E, const ShootingOptions& opt) {
    return count_from_phase(shoot_detail(p, E, opt).phase);
}

int node_count(const ProblemSpec& p, double E, const ShootingOptions& opt) {
    const ShotResult s = shoot_detail(p, E, opt);
    return s.nodes_out + s.nodes_in;
}

Level solve_level(const ProblemSpec& p, int k, const ShootingOptions& opt, double guess) {
    require_supported(p);
    if (k < 0) fail(ErrorKind::Domain, "level index must be non-negative");
    const double g = guess != 0.0 ? guess : wkb_estimate(p, k);
    const double spacing = std::max(wkb_estimate(p, k + 1) - wkb_estimate(p, k), 1e-3);
    auto count = [&](double E) { return count_below(p, E, opt); };

    double lo = g - 0.5 * spacing, hi = g + 0.5 * spacing;
    int clo = count(lo), chi = count(hi);
    double step = spacing;
    for (int i = 0; clo > k; ++i) {
        if (i > 60) fail(ErrorKind::BracketingFailure, "could not bracket level from below");
        hi = lo;
        chi = clo;
        lo -= step;
        step *= 2.0;
        clo = count(lo);
    }
    step = spacing;
    for (int i = 0; chi < k + 1; ++i) {
        if (i > 60) fail(ErrorKind::BracketingFailure, "could not bracket level from above");
        lo = hi;
        clo = chi;
        hi += step;
        step *= 2.0;
        chi = count(hi);
    }
    for (int i = 0; !(clo == k && chi == k + 1); ++i) {
        if (i > 200) fail(ErrorKind::BracketingFailure, "levels too close to separate");
        const double mid = 0.5 * (lo + hi);
        const int c = count(mid);
        if (c <= k) {
            lo = mid;
            clo = c;
        } else {
            hi = mid;
            chi = c;
        }
    }

    const Geometry geo = make_geometry(p, hi, opt, opt.x0_scale);
    const double E = polish(p, k, lo, hi, geo, opt.tol);
    double err = 4.0 * kEps * std::fabs(E);
    if (opt.estimate_errors) {
        ShootingOptions fine = opt;
        fine.decay = opt.decay + 5.0;
        const Geometry g2 = make_geometry(p, hi, fine, 0.5 * opt.x0_scale);
        const double E2 = polish(p, k, lo, hi, g2, 0.1 * opt.tol);
        err = std::max(err, std::fabs(E2 - E));
    }
    return Level{k, {E, 0.0}, err};
}

Spectrum solve_spectrum(const ProblemSpec& p, int n_levels, const ShootingOptions& opt) {
    require_supported(p);
    if (n_levels < 1) fail(ErrorKind::Domain, "need at least one level");
    Spectrum sp;
    sp.problem = p;
    sp.method = SolverMethod::Shooting;
    sp.levels.resize(n_levels);

    // low levels in sequence; their phase offsets sharpen the guesses for the rest
    const int head = std::min(n_levels, 5);
    double delta = 0.5 * (1.0 + p.lambda_eff());
    for (int k = 0; k < head; ++k) {
        const double guess = k == 0 ? 0.0 : wkb_estimate(p, k, delta);
        sp.levels[k] = solve_level(p, k, opt, guess);
        delta = wkb_delta(p, k, sp.levels[k].E.real());
    }

    const unsigned workers = std::min<unsigned>(worker_threads(opt.threads), std::max(1, n_levels - head));
    std::atomic<int> next{head};
    std::exception_ptr failure;
    std::mutex mu;
    auto run = [&] {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= n_levels) return;
            try {
                sp.levels[k] = solve_level(p, k, opt, wkb_estimate(p, k, delta));
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
                next.store(n_levels);
                return;
            }
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (int k = 1; k < n_levels; ++k) {
        if (!(sp.levels[k].E.real() > sp.levels[k - 1].E.real()))
            fail(ErrorKind::BracketingFailure, "spectrum is not strictly increasing");
    }
    return sp;
}

}  // namespace szeta
