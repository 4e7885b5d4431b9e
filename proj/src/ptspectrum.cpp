#include "spectral_zeta/ptspectrum.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "spectral_zeta/errors.hpp"
#include "spectral_zeta/specfun.hpp"

namespace szeta {

namespace {

namespace odeint = boost::numeric::odeint;
using cplx = std::complex<double>;
using State = std::array<cplx, 2>;
constexpr double kPi = std::numbers::pi;

void require_direct(const PTProblemSpec& p) {
    if (p.alpha != 0.0 || p.lambda != 0.5)
        fail(ErrorKind::Domain, "direct PT shooting needs alpha = 0 and lambda = 1/2");
    if (!p.directly_solvable()) fail(ErrorKind::Domain, "a ray crosses the branch cut (K >= M)");
}

// (-1)^K (ix)^{2M} with the principal logarithm (cut on the positive imaginary x axis)
cplx pt_potential(double M, int K, cplx x) {
    const cplx v = std::exp(2.0 * M * std::log(cplx(0.0, 1.0) * x));
    return (K % 2 == 0) ? v : -v;
}

struct Leg {
    State y;          // (phi, phi_x / s), up to exp(log_scale)
    cplx log_scale;
};

// Integrate -phi'' + (V - E) phi = 0 along the straight segment a -> b with
// state (phi, phi_x / s), renormalising by a complex factor after every
// accepted step.
template <class Pot>
Leg integrate_segment(const Pot& V, cplx E, double s, cplx a, cplx b, State y, cplx log_scale, double tol) {
    const cplx d = b - a;
    auto sys = [&](const State& u, State& du, double t) {
        du[0] = d * s * u[1];
        du[1] = d * (V(a + t * d) - E) * u[0] / s;
    };
    auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
    const double hmax = 0.5 / (s * std::abs(d));
    double t = 0.0;
    double dt = std::min(hmax, 1.0 / 16.0);
    long accepted = 0, rejected = 0;
    while (t < 1.0) {
        if (t + dt > 1.0) dt = 1.0 - t;
        if (dt > hmax) dt = hmax;
        const auto res = stepper.try_step(sys, y, t, dt);
        if (res == odeint::fail) {
            if (dt < 1e-15) fail(ErrorKind::Stiffness, "step size underflow on the contour");
            if (++rejected > 2000000) fail(ErrorKind::IntegrationFailure, "too many rejected steps on the contour");
            continue;
        }
        if (t > 1.0 - 1e-14) t = 1.0;
        const cplx c = std::abs(y[0]) >= std::abs(y[1]) ? y[0] : y[1];
        if (!std::isfinite(std::abs(c)) || c == 0.0) fail(ErrorKind::IntegrationFailure, "non-finite state on the contour");
        y[0] /= c;
        y[1] /= c;
        log_scale += std::log(c);
        if (++accepted > 5000000) fail(ErrorKind::IntegrationFailure, "too many steps on the contour");
    }
    return Leg{y, log_scale};
}

// Im of the WKB action int sqrt(1 - v(z)) dz in scaled units z = x / E^{1/(2M)},
// from the right turning point to -i y along a straight line (t = u^2 removes
// the square-root endpoint behaviour; the branch is followed continuously).
double scaled_action_imag(double M, int K, double y) {
    const cplx zt = std::polar(1.0, -kPi / 2.0 + kPi * K / (2.0 * M));
    const cplx d = cplx(0.0, -y) - zt;
    constexpr int n = 2000;
    cplx sum = 0.0, prev = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = (i + 0.5) / n;
        cplx w = std::sqrt(1.0 - pt_potential(M, K, zt + u * u * d));
        if (i > 0 && std::abs(w - prev) > std::abs(w + prev)) w = -w;
        prev = w;
        sum += w * (2.0 * u / n);
    }
    return (sum * d).imag();
}

// The anti-Stokes line joining the right turning point to the negative
// imaginary axis, in scaled units z = x / E^{1/(2M)}. Along it the WKB waves
// keep equal weight, so integration errors are not amplified there. Points
// run from near the turning point to the axis crossing.
struct ScaledPath {
    cplx turning;
    std::vector<cplx> points;
};

ScaledPath trace_anti_stokes(double M, int K) {
    ScaledPath path;
    path.turning = std::polar(1.0, -kPi / 2.0 + kPi * K / (2.0 * M));
    const double mid = cos_pi(K / (2.0 * M));
    auto f = [&](double y) { return scaled_action_imag(M, K, y); };
    double y = mid;
    double lo = 0.02 * mid, flo = f(lo);
    for (int i = 1; i <= 60; ++i) {
        const double hi = lo + 0.05 * mid;
        const double fhi = f(hi);
        if ((flo > 0.0) != (fhi > 0.0)) {
            boost::uintmax_t iters = 100;
            const auto r = boost::math::tools::toms748_solve(
                f, lo, hi, flo, fhi, [](double a, double b) { return std::fabs(b - a) < 1e-12; }, iters);
            y = 0.5 * (r.first + r.second);
            break;
        }
        lo = hi;
        flo = fhi;
    }

    // follow dz ~ conj(w), w = sqrt(1 - v(z)), on which w dz stays real
    cplx z(0.0, -y);
    cplx w = std::sqrt(1.0 - pt_potential(M, K, z));
    const double sign = std::conj(w).real() >= 0.0 ? 1.0 : -1.0;
    auto dir = [&](cplx zz, cplx& wprev) {
        cplx ww = std::sqrt(1.0 - pt_potential(M, K, zz));
        if (std::abs(ww - wprev) > std::abs(ww + wprev)) ww = -ww;
        wprev = ww;
        return sign * std::conj(ww) / std::abs(ww);
    };
    std::vector<cplx> pts{z};
    const double h = 2e-3;
    double best = std::abs(z - path.turning);
    for (int i = 0; i < 20000; ++i) {
        cplx wk = w;
        const cplx k1 = dir(z, wk);
        cplx w2 = wk;
        const cplx k2 = dir(z + 0.5 * h * k1, w2);
        cplx w3 = wk;
        const cplx k3 = dir(z + 0.5 * h * k2, w3);
        cplx w4 = wk;
        const cplx k4 = dir(z + h * k3, w4);
        z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        w = wk;
        const double dist = std::abs(z - path.turning);
        if (dist > best || dist < 0.04) break;
        best = dist;
        if (i % 20 == 19) pts.push_back(z);
    }
    pts.push_back(z);
    std::reverse(pts.begin(), pts.end());
    path.points = std::move(pts);
    return path;
}

const ScaledPath& anti_stokes_path(double M, int K) {
    static std::mutex mu;
    static std::map<std::pair<double, int>, ScaledPath> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({M, K});
    if (it == cache.end()) it = cache.emplace(std::make_pair(M, K), trace_anti_stokes(M, K)).first;
    return it->second;
}

// Solution decaying along the ray of argument theta, carried down the ray to
// the turning-point radius and then along the anti-Stokes line to the
// negative imaginary axis. The path is fixed by E_geom so that the result is
// holomorphic in E. The left solution uses the mirror image x -> -conj(x).
Leg contour_solution(const PTProblemSpec& p, double theta, bool left, cplx E, cplx E_geom, double rho_max, double tol) {
    const cplx rot = E * std::polar(1.0, 2.0 * theta);
    const cplx Q = std::pow(rho_max, 2.0 * p.M) - rot;
    const double dQ = 2.0 * p.M * std::pow(rho_max, 2.0 * p.M - 1.0);
    // WKB log-derivative in rho, then d/dx = exp(-i theta) d/drho
    const cplx dlog = (-std::sqrt(Q) - dQ / (4.0 * Q)) * std::polar(1.0, -theta);
    const double s = std::sqrt(std::max(std::abs(E_geom), 1.0));
    const State y0{1.0, dlog / s};
    const double rho_t = std::pow(std::max(std::abs(E_geom), 1.0), 1.0 / (2.0 * p.M));
    const cplx far = std::polar(rho_max, theta), near = std::polar(std::min(rho_t, rho_max), theta);
    // on the ray the potential is rho^{2M} exp(-2 i theta)
    const cplx ray_phase = std::polar(1.0, -2.0 * theta);
    const double twoM = 2.0 * p.M;
    const auto on_ray = [&](cplx x) { return std::pow(std::abs(x), twoM) * ray_phase; };
    const auto general = [&](cplx x) { return pt_potential(p.M, p.K, x); };
    Leg leg = integrate_segment(on_ray, E, s, far, near, y0, 0.0, tol);
    cplx at = near;
    for (cplx z : anti_stokes_path(p.M, p.K).points) {
        const cplx next = rho_t * (left ? -std::conj(z) : z);
        leg = integrate_segment(general, E, s, at, next, leg.y, leg.log_scale, tol);
        at = next;
    }
    return leg;
}

struct RawWronskian {
    cplx t1, t2;
    double norm;  // product of the state norms of the two solutions
    cplx log_scale;
};

RawWronskian raw_wronskian(const PTProblemSpec& p, cplx E, cplx E_geom, const PTOptions& opt) {
    const double rho_max = pt_rho_max(p, E_geom, opt);
    const Leg L = contour_solution(p, p.theta_left, true, E, E_geom, rho_max, opt.tol);
    const Leg R = contour_solution(p, p.theta_right, false, E, E_geom, rho_max, opt.tol);
    const double norm = std::hypot(std::abs(L.y[0]), std::abs(L.y[1])) * std::hypot(std::abs(R.y[0]), std::abs(R.y[1]));
    return RawWronskian{L.y[0] * R.y[1], L.y[1] * R.y[0], norm, L.log_scale + R.log_scale};
}

double real_shoot(const PTProblemSpec& p, double E, const PTOptions& opt) { return pt_shoot(p, E, opt).real(); }

template <class F>
void parallel_for(int n, int threads, F&& body) {
    const unsigned workers = std::min<unsigned>(worker_threads(threads), std::max(1, n));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    auto run = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
                next.store(n);
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
}

double bracket_root(const PTProblemSpec& p, double lo, double hi, double flo, double fhi, const PTOptions& opt) {
    boost::uintmax_t iters = 200;
    auto f = [&](double E) { return real_shoot(p, E, opt); };
    // the Wronskian carries integration noise of order tol, so a tighter stop only wanders
    const double rel = std::max(4e-15, 0.1 * opt.tol);
    auto stop = [rel](double a, double b) { return std::fabs(b - a) <= rel * std::max(1.0, std::fabs(a)); };
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, iters);
    if (iters >= 200) fail(ErrorKind::NoConvergence, "PT level did not converge");
    return 0.5 * (r.first + r.second);
}

// Re-solve a real level with a tighter tolerance and a doubled starting radius.
double refine_real(const PTProblemSpec& p, double E, const PTOptions& opt) {
    PTOptions fine = opt;
    fine.tol = opt.tol / 10.0;
    fine.rho_scale = 2.0 * opt.rho_scale;
    double d = 1e-8 * std::max(1.0, E);
    for (int i = 0; i < 40; ++i, d *= 4.0) {
        const double a = E - d, b = E + d;
        const double fa = real_shoot(p, a, fine), fb = real_shoot(p, b, fine);
        if (fa == 0.0) return a;
        if (fb == 0.0) return b;
        if ((fa > 0.0) != (fb > 0.0)) return bracket_root(p, a, b, fa, fb, fine);
    }
    fail(ErrorKind::BracketingFailure, "could not re-bracket a PT level");
}

// Secant iteration on the holomorphic Wronskian, scaled by a fixed reference.
bool complex_secant(const PTProblemSpec& p, cplx E0, cplx E1, const PTOptions& opt, cplx& root) {
    const cplx geom = E0;
    const cplx ref = raw_wronskian(p, E0, geom, opt).log_scale;
    auto f = [&](cplx E) {
        const RawWronskian w = raw_wronskian(p, E, geom, opt);
        return (w.t1 - w.t2) * std::exp(w.log_scale - ref);
    };
    cplx f0 = f(E0), f1 = f(E1);
    for (int it = 0; it < 80; ++it) {
        if (f1 == f0) break;
        const cplx E2 = E1 - f1 * (E1 - E0) / (f1 - f0);
        if (!std::isfinite(E2.real()) || !std::isfinite(E2.imag())) return false;
        E0 = E1;
        f0 = f1;
        E1 = E2;
        f1 = f(E1);
        if (std::abs(E1 - E0) <= 1e-13 * std::max(1.0, std::abs(E1))) {
            root = E1;
            return true;
        }
    }
    return false;
}

}  // namespace

std::pair<double, double> anti_stokes_angles(double M, int K) {
    const double open = kPi * (K + 1) / (2.0 * M + 2.0);
    return {-kPi / 2.0 - open, -kPi / 2.0 + open};
}

bool crosses_cut(double M, int K) {
    const auto [l, r] = anti_stokes_angles(M, K);
    return !(l > -kPi && r < 0.0);
}

double pt_rho_max(const PTProblemSpec& p, cplx E, const PTOptions& opt) {
    // beyond rho_t the action grows like rho^{M+1}/(M+1)
    const double rho_t = std::pow(std::max(std::abs(E), 1.0), 1.0 / (2.0 * p.M));
    const double rho = std::pow(std::pow(rho_t, p.M + 1.0) + (p.M + 1.0) * opt.decay, 1.0 / (p.M + 1.0));
    return std::max(rho, 2.0 * rho_t) * opt.rho_scale;
}

cplx pt_shoot(const PTProblemSpec& p, cplx E, const PTOptions& opt) {
    require_direct(p);
    const RawWronskian w = raw_wronskian(p, E, E, opt);
    if (!(w.norm > 0.0)) fail(ErrorKind::IntegrationFailure, "degenerate ray solutions");
    return (w.t1 - w.t2) / w.norm * std::polar(1.0, w.log_scale.imag());
}

double pt_wkb_estimate(const PTProblemSpec& p, double k) {
    const double q = 1.0 / (2.0 * p.M);
    const double c = std::sqrt(kPi) * gamma(1.5 + q) / (sin_pi(p.K * q) * gamma(1.0 + q));
    return std::pow((k + 0.5) * c, 2.0 * p.M / (p.M + 1.0));
}

Spectrum pt_solve_spectrum(const PTProblemSpec& p, int count, const PTOptions& opt) {
    require_direct(p);
    if (count < 1) fail(ErrorKind::Domain, "need at least one level");

    std::vector<double> roots;
    double u_end = count + 2.0;
    double u_done = -0.5;
    double E_prev = 0.0, f_prev = 0.0;
    bool have_prev = false;
    const double du = 1.0 / opt.scan_density;
    for (int round = 0; round < 4 && static_cast<int>(roots.size()) < count; ++round) {
        // grid in WKB level units, with E(u) = pt_wkb_estimate(u)
        std::vector<double> grid;
        for (double u = u_done + du; u <= u_end + 1e-12; u += du) grid.push_back(u);
        std::vector<double> E(grid.size()), f(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) E[i] = grid[i] <= -0.5 ? 0.0 : pt_wkb_estimate(p, grid[i]);
        parallel_for(static_cast<int>(grid.size()), opt.threads, [&](int i) { f[i] = real_shoot(p, E[i], opt); });

        std::vector<std::array<double, 4>> brackets;
        if (!have_prev) {
            E_prev = 0.0;
            f_prev = real_shoot(p, 0.0, opt);
            have_prev = true;
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if ((f_prev > 0.0) != (f[i] > 0.0)) brackets.push_back({E_prev, E[i], f_prev, f[i]});
            E_prev = E[i];
            f_prev = f[i];
        }
        std::vector<double> found(brackets.size());
        parallel_for(static_cast<int>(brackets.size()), opt.threads, [&](int i) {
            const auto& b = brackets[i];
            found[i] = bracket_root(p, b[0], b[1], b[2], b[3], opt);
        });
        roots.insert(roots.end(), found.begin(), found.end());
        u_done = grid.empty() ? u_end : grid.back();
        u_end += count / 2.0 + 2.0;
    }
    std::sort(roots.begin(), roots.end());

    std::vector<cplx> levels;
    for (double r : roots) levels.emplace_back(r, 0.0);

    // missing levels: try conjugate pairs near the WKB guesses
    if (static_cast<int>(levels.size()) < count) {
        for (int k = 0; k < count + 2 && static_cast<int>(levels.size()) < count; ++k) {
            const double g = pt_wkb_estimate(p, k);
            const double spacing = pt_wkb_estimate(p, k + 1) - g;
            cplx z;
            if (!complex_secant(p, cplx(g, 0.3 * spacing), cplx(g + 0.1 * spacing, 0.4 * spacing), opt, z)) continue;
            if (std::fabs(z.imag()) <= 1e-8 * std::abs(z)) continue;
            const bool dup = std::any_of(levels.begin(), levels.end(),
                                         [&](cplx e) { return std::abs(e - z) <= 1e-8 * std::abs(z); });
            if (dup) continue;
            levels.emplace_back(z.real(), std::fabs(z.imag()));
            levels.emplace_back(z.real(), -std::fabs(z.imag()));
        }
        std::sort(levels.begin(), levels.end(),
                  [](cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() > b.imag()); });
    }
    if (static_cast<int>(levels.size()) < count) fail(ErrorKind::BracketingFailure, "fewer PT levels found than requested");
    levels.resize(count);

    Spectrum sp;
    sp.problem = p;
    sp.method = SolverMethod::PTShooting;
    sp.levels.resize(count);
    parallel_for(count, opt.threads, [&](int k) {
        const cplx E = levels[k];
        double err = 0.0;
        if (opt.estimate_errors && E.imag() == 0.0) err = std::fabs(refine_real(p, E.real(), opt) - E.real());
        err += 8.0 * std::numeric_limits<double>::epsilon() * std::abs(E);
        sp.levels[k] = Level{k, E, err};
    });
    return sp;
}

}  // namespace szeta
