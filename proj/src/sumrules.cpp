#include "spectral_zeta/sumrules.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spectral_zeta/closedform.hpp"
#include "spectral_zeta/errors.hpp"
#include "spectral_zeta/specfun.hpp"

namespace szeta {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void require_sigma(double sigma) {
    if (!(sigma > 0.0 && sigma < 0.5)) fail(ErrorKind::Domain, "sigma must lie in (0, 1/2)");
}

void require_inputs(const std::vector<double>& z, int order, const char* which) {
    if (order < 1 || order > 3) fail(ErrorKind::Domain, "sum rules are implemented for orders 1 to 3");
    if (static_cast<int>(z.size()) < order) {
        std::ostringstream os;
        os << which << " needs " << order << " zeta values";
        fail(ErrorKind::Domain, os.str());
    }
}

SumRuleReport finish(std::string id, cplx lhs, cplx rhs, double scale, double tol, std::string provenance) {
    SumRuleReport r;
    r.id = std::move(id);
    r.lhs = lhs.real();
    r.rhs = rhs.real();
    r.lhs_imag = lhs.imag();
    r.rhs_imag = rhs.imag();
    r.abs_residual = std::abs(lhs - rhs);
    r.scale = scale > 0.0 ? scale : std::max(std::abs(lhs), std::abs(rhs));
    r.rel_residual = r.scale > 0.0 ? r.abs_residual / r.scale : r.abs_residual;
    r.tolerance = tol;
    r.pass = std::isfinite(r.rel_residual) && r.rel_residual <= tol;
    r.provenance = std::move(provenance);
    return r;
}

// Terms of the radial rule of a given order, with the Z_-(order) term first.
// The rule states that they sum to zero.
std::vector<double> radial_terms(int order, const std::vector<double>& zm, const std::vector<double>& zp, double s,
                                 double l) {
    auto N = [&](int a) { return n_coeff(a, s, l); };
    switch (order) {
        case 1:
            return {N(1) * zm[0], N(-1) * zp[0]};
        case 2: {
            const double t1 = zp[0] - zm[0];
            return {N(2) * zm[1], N(-2) * zp[1], (N(1) * N(1) - N(2)) * t1 * t1};
        }
        default: {
            const double t1 = zp[0] - zm[0], t2 = zp[1] - zm[1];
            const double n1 = N(1), n2 = N(2), n3 = N(3);
            return {n3 * zm[2], N(-3) * zp[2], -1.5 * (n3 - n2 * n1) * t2 * t1,
                    -0.5 * (n3 - 3.0 * n2 * n1 + 2.0 * n1 * n1 * n1) * t1 * t1 * t1};
        }
    }
}

double abs_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::fabs(x);
    return s;
}

// sin(pi f (lambda + a)) / sin(pi f lambda), f = sigma (K+1). The phases are
// taken as exp(i pi f x) directly; going through a principal-branch power of
// exp(i pi f) would change the result once f > 1.
cplx sine_ratio(double f, double lambda, int a) {
    auto e = [&](double x) { return std::polar(1.0, kPi * f * x); };
    const cplx den = e(lambda) - e(-lambda);
    if (std::abs(den) < 2e-14) fail(ErrorKind::SingularCoefficient, "sin(pi sigma (K+1) lambda) vanishes");
    return (e(lambda + a) - e(-(lambda + a))) / den;
}

cplx fused_value(int K, int order, const std::vector<double>& zm, const std::vector<double>& zp, double s, double l,
                 double& scale) {
    const double f = s * (K + 1);
    auto L = [&](int a) { return sine_ratio(f, l, a); };
    cplx v;
    switch (order) {
        case 1: {
            const cplx a = -L(1) * zm[0], b = -L(-1) * zp[0];
            v = a + b;
            scale = std::abs(a) + std::abs(b);
            break;
        }
        case 2: {
            const double t1 = zp[0] - zm[0];
            const cplx a = L(2) * zm[1], b = L(-2) * zp[1], c = (L(1) * L(1) - L(2)) * t1 * t1;
            v = a + b + c;
            scale = std::abs(a) + std::abs(b) + std::abs(c);
            break;
        }
        default: {
            const double t1 = zp[0] - zm[0], t2 = zp[1] - zm[1];
            const cplx l1 = L(1), l2 = L(2), l3 = L(3);
            const cplx a = -l3 * zm[2], b = -L(-3) * zp[2], c = 1.5 * (l3 - l2 * l1) * t2 * t1,
                       d = 0.5 * (l3 - 3.0 * l2 * l1 + 2.0 * l1 * l1 * l1) * t1 * t1 * t1;
            v = a + b + c + d;
            scale = std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d);
            break;
        }
    }
    return v;
}

// D_-(0, alpha) up to a factor common to all (alpha, lambda); D_+ is the same at -lambda
double d0(double s, double l, double a) {
    GammaRatio g;
    g.pow(2.0 * s, a * s / 2.0 - s * l - 0.5).num(1.0 + 2.0 * s * l).den(0.5 + a * s / 2.0 + s * l);
    return g.value();
}

}  // namespace

cplx SpectralDeterminant::log_ratio(cplx E) const {
    cplx s = 0.0, p = 1.0;
    for (std::size_t n = 0; n < zetas.size(); ++n) {
        p *= E;
        s -= zetas[n] * p / static_cast<double>(n + 1);
    }
    return s;
}

cplx SpectralDeterminant::operator()(cplx E) const { return d0 * std::exp(log_ratio(E)); }

SumRuleReport radial_sumrule_residual(int order, const std::vector<double>& zminus, const std::vector<double>& zplus,
                                      double sigma, double lambda, double tol, const std::string& provenance) {
    require_sigma(sigma);
    require_inputs(zminus, order, "Z_-");
    require_inputs(zplus, order, "Z_+");
    const std::vector<double> t = radial_terms(order, zminus, zplus, sigma, lambda);
    double rest = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) rest -= t[i];
    SumRuleReport r = finish("radial-" + std::to_string(order), t[0], rest, abs_sum(t), tol, provenance);
    r.inputs = {{"sigma", sigma}, {"lambda", lambda}};
    for (int n = 0; n < order; ++n) {
        r.inputs.emplace_back("Zminus(" + std::to_string(n + 1) + ")", zminus[n]);
        r.inputs.emplace_back("Zplus(" + std::to_string(n + 1) + ")", zplus[n]);
    }
    return r;
}

double rearranged_sumrules(int order, const std::vector<double>& zminus, double sigma, double lambda) {
    require_sigma(sigma);
    require_inputs(zminus, order, "Z_-");
    auto N = [&](int a) { return n_coeff(a, sigma, lambda); };
    const double zp1 = -N(1) / N(-1) * zminus[0];
    if (order == 1) return zp1;
    const double nm1 = N(-1), nm2 = N(-2);
    if (std::fabs(nm2) < 1e-14) fail(ErrorKind::SingularCoefficient, "N_-2 vanishes");
    const double zp2 = -N(2) / nm2 * zminus[1] +
                       (N(2) / nm2 - 2.0 * N(1) / (nm1 * nm2) + N(1) * N(1) / (nm1 * nm1)) * zminus[0] * zminus[0];
    if (order == 2) return zp2;
    // order 3: the rule is linear in Z_+(3)
    const std::vector<double> zp = {zp1, zp2, 0.0};
    const std::vector<double> t = radial_terms(3, zminus, zp, sigma, lambda);
    const double nm3 = N(-3);
    if (std::fabs(nm3) < 1e-14) fail(ErrorKind::SingularCoefficient, "N_-3 vanishes");
    return -(t[0] + t[2] + t[3]) / nm3;
}

double radial_solve_minus(int order, const std::vector<double>& zminus, const std::vector<double>& zplus, double sigma,
                          double lambda) {
    require_sigma(sigma);
    require_inputs(zplus, order, "Z_+");
    if (static_cast<int>(zminus.size()) < order - 1) fail(ErrorKind::Domain, "Z_- of the lower orders is needed");
    std::vector<double> zm(zminus.begin(), zminus.begin() + (order - 1));
    zm.push_back(0.0);
    const std::vector<double> t = radial_terms(order, zm, zplus, sigma, lambda);
    const double na = n_coeff(order, sigma, lambda);
    if (std::fabs(na) < 1e-14) fail(ErrorKind::SingularCoefficient, "N_order vanishes");
    double rest = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) rest += t[i];
    return -rest / na;
}

SumRuleReport alpha_sumrule_residual(double sigma, double lambda, double alpha, double tol) {
    require_sigma(sigma);
    const double M = M_of_sigma(sigma);
    require_admissible(M, alpha, lambda);
    require_admissible(M, -alpha, lambda);
    const cplx w = std::polar(1.0, kPi * sigma);
    const double zm_p = z1_general_alpha(sigma, lambda, alpha).value;
    const double zm_m = z1_general_alpha(sigma, lambda, -alpha).value;
    const double zp_p = z1_general_alpha(sigma, -lambda, alpha).value;
    const double zp_m = z1_general_alpha(sigma, -lambda, -alpha).value;
    const double left = d0(sigma, lambda, alpha) * d0(sigma, -lambda, -alpha);
    const double right = d0(sigma, lambda, -alpha) * d0(sigma, -lambda, alpha);
    const cplx a1 = left * std::pow(w, 1.0 - lambda) * zp_m, a2 = left * std::pow(w, -(1.0 + lambda)) * zm_p;
    const cplx b1 = right * std::pow(w, lambda - 1.0) * zp_p, b2 = right * std::pow(w, 1.0 + lambda) * zm_m;
    const double scale = std::abs(a1) + std::abs(a2) + std::abs(b1) + std::abs(b2);
    SumRuleReport r = finish("alpha", a1 + a2, b1 + b2, scale, tol, "ClosedForm");
    r.inputs = {{"sigma", sigma}, {"lambda", lambda}, {"alpha", alpha},   {"Zminus(1,+alpha)", zm_p},
                {"Zminus(1,-alpha)", zm_m}, {"Zplus(1,+alpha)", zp_p}, {"Zplus(1,-alpha)", zp_m}};
    return r;
}

namespace {

double qw_raw(double sigma, double lambda, const std::vector<double>& zminus, const std::vector<double>& zplus,
              double E) {
    const SpectralDeterminant dm{std::vector<double>(zminus.begin(), zminus.begin() + 3)};
    const SpectralDeterminant dp{std::vector<double>(zplus.begin(), zplus.begin() + 3)};
    const cplx w = std::polar(1.0, kPi * sigma), wb = std::conj(w);
    const cplx wl = std::pow(w, lambda), wbl = std::pow(wb, lambda);
    const cplx lhs =
        wbl * std::exp(dm.log_ratio(wb * E) + dp.log_ratio(w * E)) - wl * std::exp(dm.log_ratio(w * E) + dp.log_ratio(wb * E));
    return std::abs(lhs - (wbl - wl)) / std::abs(wbl - wl);
}

}  // namespace

double qw_smallE_residual(double sigma, double lambda, const std::vector<double>& zminus,
                          const std::vector<double>& zplus, double E) {
    require_sigma(sigma);
    require_inputs(zminus, 3, "Z_-");
    require_inputs(zplus, 3, "Z_+");
    if (std::fabs(sin_pi(sigma * lambda)) < 1e-14) fail(ErrorKind::SingularCoefficient, "sin(pi sigma lambda) vanishes");
    const double r = qw_raw(sigma, lambda, zminus, zplus, E);
    if (r > 1e-13) {
        const double half = qw_raw(sigma, lambda, zminus, zplus, 0.5 * E);
        const double ratio = r / std::max(half, 1e-300);
        // leading truncation error is E^4, so halving E should divide it by about 16
        if (!(ratio > 8.0 && ratio < 32.0)) {
            std::ostringstream os;
            os << "truncation no longer O(E^4) at E = " << E << " (halving ratio " << ratio << ")";
            fail(ErrorKind::TruncationDominated, os.str());
        }
    }
    return r;
}

int fused_alpha_sign(int K) { return (K % 4 == 1) ? -1 : 1; }

ZetaValue fused_sumrule_eval(int K, int order, const std::vector<double>& zminus, const std::vector<double>& zplus,
                             double sigma, double lambda, double alpha) {
    require_sigma(sigma);
    if (K < 0) fail(ErrorKind::Domain, "K must be non-negative");
    if (alpha != 0.0 && K % 2 == 0)
        fail(ErrorKind::UnsupportedParity, "fused rules with alpha != 0 exist only for odd K");
    require_inputs(zminus, order, "Z_-");
    require_inputs(zplus, order, "Z_+");
    double scale = 0.0;
    const cplx v = fused_value(K, order, zminus, zplus, sigma, lambda, scale);
    if (std::fabs(v.imag()) > 1e-10 * std::max(scale, 1.0)) fail(ErrorKind::Domain, "fused zeta came out complex");
    return ZetaValue{order, v.real(), 4e-16 * scale + 1e-14 * std::fabs(v.real()), ZetaMethod::SumRule};
}

ZetaValue fused_sumrule_eval(int K, int order, const std::vector<ZetaValue>& zminus,
                             const std::vector<ZetaValue>& zplus, double sigma, double lambda, double alpha) {
    std::vector<double> zm, zp;
    for (const auto& z : zminus) zm.push_back(z.value);
    for (const auto& z : zplus) zp.push_back(z.value);
    ZetaValue out = fused_sumrule_eval(K, order, zm, zp, sigma, lambda, alpha);
    // first-order propagation, one input at a time
    double prop = 0.0;
    auto bump = [&](std::vector<double>& v, std::size_t i, double e) {
        if (e <= 0.0 || i >= static_cast<std::size_t>(order)) return;
        const double keep = v[i];
        v[i] = keep + e;
        prop += std::fabs(fused_sumrule_eval(K, order, zm, zp, sigma, lambda, alpha).value - out.value);
        v[i] = keep;
    };
    for (std::size_t i = 0; i < zminus.size(); ++i) bump(zm, i, zminus[i].err);
    for (std::size_t i = 0; i < zplus.size(); ++i) bump(zp, i, zplus[i].err);
    out.err += prop;
    return out;
}

SumRuleReport fused_contour_residual(int K, int order, const std::vector<double>& zminus,
                                     const std::vector<double>& zplus, double sigma, double lambda, double tol) {
    require_sigma(sigma);
    require_inputs(zminus, order, "Z_-");
    require_inputs(zplus, order, "Z_+");
    if (K < 1) fail(ErrorKind::Domain, "the contour route needs K >= 1");
    const ZetaValue rule = fused_sumrule_eval(K, order, zminus, zplus, sigma, lambda);

    const SpectralDeterminant dm{std::vector<double>(zminus.begin(), zminus.begin() + order)};
    const SpectralDeterminant dp{std::vector<double>(zplus.begin(), zplus.begin() + order)};
    const double f = sigma * (K + 1);
    const cplx w = std::polar(1.0, kPi * f), wb = std::conj(w);
    const cplx wl = std::polar(1.0, kPi * f * lambda), wbl = std::conj(wl);
    if (std::abs(wbl - wl) < 2e-14) fail(ErrorKind::SingularCoefficient, "sin(pi sigma (K+1) lambda) vanishes");
    // log(C_K(-E) / C_K(0)); the D(0) factors cancel in the ratio
    auto g = [&](cplx E) {
        const cplx c = wbl * std::exp(dm.log_ratio(wb * E) + dp.log_ratio(w * E)) -
                       wl * std::exp(dm.log_ratio(w * E) + dp.log_ratio(wb * E));
        return std::log(c / (wbl - wl));
    };
    double zmax = 1.0;
    for (int n = 0; n < order; ++n) zmax = std::max({zmax, std::pow(std::fabs(zminus[n]), 1.0 / (n + 1)),
                                                     std::pow(std::fabs(zplus[n]), 1.0 / (n + 1))});
    const double r = 0.1 / zmax;
    constexpr int kPoints = 64;
    cplx c = 0.0;
    for (int j = 0; j < kPoints; ++j) {
        const double th = 2.0 * kPi * j / kPoints;
        c += g(std::polar(r, th)) * std::polar(1.0, -order * th);
    }
    c /= kPoints * std::pow(r, order);
    // log C_K(-E) / C_K(0) = -sum Z_K(n) (-E)^n / n
    const cplx contour = -static_cast<double>(order) * (order % 2 ? -1.0 : 1.0) * c;

    SumRuleReport rep = finish("fused-" + std::to_string(K) + "-" + std::to_string(order), rule.value, contour,
                               std::max(std::fabs(rule.value), std::abs(contour)), tol, "ClosedForm");
    rep.inputs = {{"sigma", sigma}, {"lambda", lambda}, {"K", static_cast<double>(K)}};
    return rep;
}

SumRuleReport f_relation_residual(double sigma, double lambda, double tol) {
    require_sigma(sigma);
    const double s = sigma, l = lambda;
    const PfqResult fp = f5f4(s, l), fm = f5f4(s, -l);
    const double sl = s * l;
    GammaRatio gl;
    gl.mul(sin_pi(s * (l + 2.0)) / (sin_pi(s * (l - 2.0)) * (1.0 + l)))
        .pow(4.0, -sl)
        .num(2.0 * s * (1.0 + l))
        .num(s * (2.0 + l))
        .den(1.0 + sl)
        .den(1.0 + sl)
        .den(0.5 + s * (2.0 + l));
    GammaRatio g1;
    g1.div(l - 1.0).pow(4.0, sl).num(2.0 * s * (1.0 - l)).num(s * (2.0 - l)).den(1.0 - sl).den(1.0 - sl).den(0.5 + s * (2.0 - l));
    const double sp = sin_pi(s);
    GammaRatio g2;
    g2.pow(4.0, 2.0 * s - 1.0)
        .mul(s * std::pow(kPi, 1.5) / (sp * sp))
        .num(1.0 - 2.0 * s).num(1.0 - 2.0 * s)
        .num(s * (1.0 + l)).num(s * (1.0 + l))
        .den(1.0 - s).den(1.0 - s).den(1.0 - s).den(1.0 - s)
        .den(1.0 - s * (1.0 - l)).den(1.0 - s * (1.0 - l))
        .den(2.0 * s);
    const double a = sin_pi(s * (1.0 + l)), b = sin_pi(s * (1.0 - l)), c = sin_pi(s * (2.0 - l));
    if (std::fabs(b) < 1e-14 || std::fabs(c) < 1e-14) fail(ErrorKind::SingularCoefficient, "bracket denominator vanishes");
    const double br = a * a / (b * b) - sin_pi(s * (2.0 + l)) / c - 2.0 * a * sin_pi(sl) / (b * c);
    const double lhs = gl.value() * fp.value;
    const double r1 = g1.value() * fm.value;
    const double r2 = g2.value() * br;
    const double scale = std::fabs(lhs) + std::fabs(r1) + std::fabs(r2);
    SumRuleReport r = finish("F-relation", lhs, r1 + r2, scale, tol, "Series");
    r.inputs = {{"sigma", sigma}, {"lambda", lambda}, {"F(lambda)", fp.value}, {"F(-lambda)", fm.value}};
    return r;
}

SumRuleReport f_simplification_residual(double sigma, int m, double tol) {
    require_sigma(sigma);
    if (m < 1) fail(ErrorKind::Domain, "m must be a positive integer");
    const double s = sigma;
    const double s3 = sin_pi(3.0 * s), s4 = sin_pi(4.0 * s);
    if (std::fabs(s3) < 1e-12 || std::fabs(s4) < 1e-12) fail(ErrorKind::SingularCoefficient, "csc(3 pi sigma) or 1/sin(4 pi sigma) singular");
    const PfqResult f = f5f4(s, 2.0 - m / s);
    const double s2 = sin_pi(2.0 * s);
    GammaRatio g;
    g.mul((m - 3.0 * s) * s2 * s2 * s2 / (s3 * s3 * s4 * std::sqrt(kPi)))
        .num(s).num(s).num(s).num(s)
        .num(1.0 + 2.0 * s - m).num(1.0 + 2.0 * s - m)
        .num(1.0 - 2.0 * s).num(1.0 - 2.0 * s)
        .num(0.5 + 4.0 * s - m)
        .pow(4.0, -(m + 1.0 - 4.0 * s))
        .den(1.0 - 3.0 * s + m).den(1.0 - 3.0 * s + m)
        .den(1.0 + s - m).den(1.0 + s - m)
        .den(2.0 * s)
        .den(6.0 * s - 2.0 * m)
        .den(4.0 * s - m);
    const double closed = g.value();
    SumRuleReport r = finish("F-simplification", f.value, closed, std::max(std::fabs(f.value), std::fabs(closed)), tol, "Series");
    r.inputs = {{"sigma", sigma}, {"m", static_cast<double>(m)}, {"series_err", f.achieved_err}};
    return r;
}

double calg(double sigma, double lambda, double alpha) {
    require_sigma(sigma);
    const double s = sigma, l = lambda, a = alpha;
    const double A = 0.5 + s * a / 2.0 + s * l;
    const double pre = rgamma(0.5 + 2.0 * s + s * a / 2.0 + s * l) * rgamma(0.5 - s * a / 2.0 - s * l);
    if (pre == 0.0) return 0.0;
    const PfqResult f = pfq_unit(HypergeomSpec::make({A, 2.0 * s * (1.0 + l), 2.0 * s}, {1.0 + 2.0 * s * l, A + 2.0 * s}));
    return pre * f.value;
}

std::array<SumRuleReport, 3> calg_relation_residuals(double sigma, double lambda, double alpha, double tol) {
    require_sigma(sigma);
    require_admissible(M_of_sigma(sigma), alpha, lambda);
    const double s = sigma, l = lambda;
    const double gpp = calg(s, l, alpha), gmp = calg(s, l, -alpha);
    const double gpm = calg(s, -l, alpha), gmm = calg(s, -l, -alpha);
    const double ratio = gamma(1.0 + 2.0 * s * l) * gamma(2.0 * s * (1.0 - l)) / (gamma(1.0 - 2.0 * s * l) * gamma(2.0 * s * (1.0 + l)));
    const double sden = sin_pi(s * (1.0 + l)), cden = cos_pi(s * (1.0 + l));
    if (std::fabs(sden) < 1e-14 || std::fabs(cden) < 1e-14) fail(ErrorKind::SingularCoefficient, "four-term coefficient singular");
    const double c1 = sin_pi(s * (1.0 - l)) / sden * ratio;
    const double c2 = cos_pi(s * (1.0 - l)) / cden * ratio;
    const double k3 = gamma(1.0 + 2.0 * s * l) * gamma(2.0 * s * (1.0 - l)) * gamma(1.0 - 2.0 * s * (1.0 + l)) /
                      (kPi * gamma(1.0 - 2.0 * s * l));
    const double t3a = k3 * sin_pi(2.0 * s) * gpm, t3b = -k3 * sin_pi(2.0 * s * l) * gmm;

    const std::vector<std::pair<std::string, double>> in = {
        {"sigma", s}, {"lambda", l}, {"alpha", alpha}, {"G(a,l)", gpp}, {"G(-a,l)", gmp}, {"G(a,-l)", gpm}, {"G(-a,-l)", gmm}};
    std::array<SumRuleReport, 3> out = {
        finish("calG-sum", gpp + gmp, c1 * (gpm + gmm), std::fabs(gpp) + std::fabs(gmp) + std::fabs(c1) * (std::fabs(gpm) + std::fabs(gmm)), tol, "Series"),
        finish("calG-difference", gpp - gmp, c2 * (gpm - gmm), std::fabs(gpp) + std::fabs(gmp) + std::fabs(c2) * (std::fabs(gpm) + std::fabs(gmm)), tol, "Series"),
        finish("calG-three-term", gpp, t3a + t3b, std::fabs(gpp) + std::fabs(t3a) + std::fabs(t3b), tol, "Series")};
    for (auto& r : out) r.inputs = in;
    return out;
}

SumRuleReport calg_gauss_reduction_residual(double sigma, double delta, double tol) {
    if (!(sigma > 0.25 && sigma < 0.5)) fail(ErrorKind::Domain, "the reduced relation needs sigma in (1/4, 1/2)");
    const double s = sigma;
    const double lstar = 1.0 / (2.0 * s) - 1.0;
    GammaRatio g;
    g.num(1.0 - 2.0 * s).num(1.0 - 2.0 * s).num(2.0 - 2.0 * s)
        .den(2.0 * s).den(1.0 - s * (1.0 + delta)).den(1.0 - s * (1.0 - delta)).den(2.0 - 4.0 * s);
    const double lhs = g.value();
    const double a = calg(s, lstar, 2.0 * delta), b = calg(s, lstar, -2.0 * delta);
    SumRuleReport r = finish("calG-gauss", lhs, a + b, std::fabs(lhs) + std::fabs(a) + std::fabs(b), tol, "Series");
    r.inputs = {{"sigma", s}, {"delta", delta}, {"lambda", lstar}};
    return r;
}

}  // namespace szeta
