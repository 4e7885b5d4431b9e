#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "spectral_zeta/errors.hpp"
#include "spectral_zeta/specfun.hpp"

using namespace szeta;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an exception");
    return ErrorKind::Domain;
}

double gauss_closed(double a, double b, double c) {
    return szeta::gamma(c) * szeta::gamma(c - a - b) / (szeta::gamma(c - a) * szeta::gamma(c - b));
}

double dixon_closed(double a, double b, double c) {
    return szeta::gamma(1 + a / 2) * szeta::gamma(1 + a - b) * szeta::gamma(1 + a - c) * szeta::gamma(1 + a / 2 - b - c) /
           (szeta::gamma(1 + a) * szeta::gamma(1 + a / 2 - b) * szeta::gamma(1 + a / 2 - c) * szeta::gamma(1 + a - b - c));
}

}  // namespace

TEST_CASE("gamma at simple points") {
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    CHECK(rel(szeta::gamma(0.5), sqrt_pi) < 1e-15);
    CHECK(rel(szeta::gamma(5.0), 24.0) < 1e-15);
    CHECK(rel(szeta::gamma(-0.5), -2.0 * sqrt_pi) < 1e-15);
    CHECK(szeta::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-16));
}

TEST_CASE("gamma poles") {
    CHECK(kind_of([] { szeta::gamma(0.0); }) == ErrorKind::Pole);
    CHECK(kind_of([] { szeta::gamma(-3.0); }) == ErrorKind::Pole);
    CHECK(rgamma(-2.0) == 0.0);
    CHECK(rgamma(0.0) == 0.0);
}

TEST_CASE("gamma matches the C library to 1e-13 on |x| <= 50") {
    double worst = 0;
    for (double x = -49.95; x <= 50.0; x += 0.0731) {
        if (std::fabs(x - std::round(x)) < 1e-3 && x <= 0) continue;
        worst = std::max(worst, rel(szeta::gamma(x), std::tgamma(x)));
    }
    MESSAGE("worst relative deviation from tgamma: " << worst);
    CHECK(worst < 1e-13);
}

TEST_CASE("log_gamma") {
    CHECK(log_gamma(1.0) == 0.0);
    CHECK(log_gamma(2.0) == 0.0);
    CHECK(rel(log_gamma(10.0), std::log(362880.0)) < 1e-15);
    CHECK(kind_of([] { log_gamma(0.0); }) == ErrorKind::Domain);
    CHECK(kind_of([] { log_gamma(-1.5); }) == ErrorKind::Domain);

    // near the zeros the relative error stays small
    CHECK(rel(log_gamma(1.0 + 1e-6), std::lgamma(1.0 + 1e-6)) < 1e-13);
    CHECK(rel(log_gamma(2.0 - 3e-7), std::lgamma(2.0 - 3e-7)) < 1e-13);

    double worst = 0;
    for (double lx = -3.0; lx <= 4.0; lx += 0.00713) {
        const double x = std::pow(10.0, lx);
        worst = std::max(worst, rel(log_gamma(x), std::lgamma(x)));
    }
    MESSAGE("worst relative deviation from lgamma on [1e-3, 1e4]: " << worst);
    CHECK(worst < 1e-13);
}

TEST_CASE("log_abs_gamma signs for negative arguments") {
    for (double x : {-0.5, -1.5, -2.5, -3.3}) {
        const SignedLog lg = log_abs_gamma(x);
        CHECK(rel(lg.sign * std::exp(lg.log_abs), std::tgamma(x)) < 1e-13);
    }
}

TEST_CASE("property: gamma identities on grids") {
    for (double x = 0.1; x <= 20.0; x += 0.0377) {
        CHECK(rel(szeta::gamma(x + 1.0), x * szeta::gamma(x)) < 1e-12);
        CHECK(std::fabs(szeta::gamma(x) - std::exp(log_gamma(x))) <= 1e-12 * szeta::gamma(x));
    }
    for (double x = 0.013; x < 1.0; x += 0.0211) {
        const double r = szeta::gamma(x) * szeta::gamma(1.0 - x) * std::sin(std::numbers::pi * x) / std::numbers::pi;
        CHECK(std::fabs(r - 1.0) < 1e-11);
    }
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(3.0, 0) == 1.0);
    CHECK(pochhammer(1.0, 5) == 120.0);
    CHECK(pochhammer(-2.0, 4) == 0.0);
    CHECK(rel(pochhammer(0.3, 7), szeta::gamma(7.3) / szeta::gamma(0.3)) < 1e-13);
}

TEST_CASE("trigonometric helpers have exact zeros") {
    CHECK(sin_pi(3.0) == 0.0);
    CHECK(sin_pi(-7.0) == 0.0);
    CHECK(cos_pi(2.5) == 0.0);
    CHECK(sin_pi(0.5) == 1.0);
    CHECK(std::fabs(sin_pi(0.3) - std::sin(0.3 * std::numbers::pi)) < 1e-16);
}

TEST_CASE("hurwitz zeta") {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(rel(hurwitz_zeta(2.0, 1.0), pi2 / 6.0) < 1e-15);
    CHECK(rel(hurwitz_zeta(4.0, 1.0), pi2 * pi2 / 90.0) < 1e-15);
    // zeta(2, 1/2) = (2^2 - 1) zeta(2)
    CHECK(rel(hurwitz_zeta(2.0, 0.5), pi2 / 2.0) < 1e-15);
    // shift identity
    CHECK(rel(hurwitz_zeta(1.3, 0.7) - std::pow(0.7, -1.3), hurwitz_zeta(1.3, 1.7)) < 1e-13);
    CHECK(kind_of([] { hurwitz_zeta(1.0, 1.0); }) == ErrorKind::Domain);
}

TEST_CASE("GammaRatio") {
    GammaRatio g;
    g.num(0.5).num(0.5).den(1.0).mul(2.0);
    CHECK(rel(g.value(), 2.0 * std::numbers::pi) < 1e-15);
    GammaRatio z;
    z.num(1.5).den(-3.0);
    CHECK(z.value() == 0.0);
    GammaRatio big;
    big.num(200.0).den(199.0);
    CHECK(rel(big.value(), 199.0) < 1e-12);
}

TEST_CASE("HypergeomSpec validation") {
    const HypergeomSpec h = HypergeomSpec::make({0.3, 0.4}, {2.0});
    CHECK(h.s == doctest::Approx(1.3));
    CHECK(h.convergent());
    CHECK_FALSE(h.terminating);
    CHECK(kind_of([] { HypergeomSpec::make({0.3}, {-2.0}); }) == ErrorKind::Domain);
    CHECK(HypergeomSpec::make({-3.0, 1.5}, {0.5}).terminating);
    CHECK_FALSE(HypergeomSpec::make({1.0, 1.0}, {1.5}).convergent());
}

TEST_CASE("pfq_unit: trivial and error cases") {
    const PfqResult r = pfq_unit(HypergeomSpec::make({0.0, 0.7}, {1.3}));
    CHECK(r.value == 1.0);
    CHECK(kind_of([] { pfq_unit(HypergeomSpec::make({1.0, 1.0}, {1.5})); }) == ErrorKind::DivergentSeries);
    PfqOptions few;
    few.max_terms = 64;
    CHECK(kind_of([&] { pfq_unit(HypergeomSpec::make({0.5, 0.5}, {1.05}), 1e-14, few); }) ==
          ErrorKind::NoConvergence);
}

TEST_CASE("pfq_unit: Gauss example") {
    const PfqResult r = pfq_unit(HypergeomSpec::make({0.3, 0.4}, {2.0}), 1e-14);
    CHECK(rel(r.value, gauss_closed(0.3, 0.4, 2.0)) < 1e-13);
    CHECK(r.achieved_err <= 1e-13);
}

TEST_CASE("pfq_unit: slowly convergent series are accelerated") {
    // s = 0.1
    const double a = 0.45, b = 0.55, c = 1.1;
    const PfqResult r = pfq_unit(HypergeomSpec::make({a, b}, {c}), 1e-12);
    CHECK(r.accelerated);
    CHECK(r.terms < 200000);
    CHECK(rel(r.value, gauss_closed(a, b, c)) < 1e-11);
    CHECK(std::fabs(r.value - gauss_closed(a, b, c)) <= 10 * r.achieved_err + 1e-15);
}

TEST_CASE("pfq_unit: frozen high-precision values") {
    // 3F2(0.7, 1.2, 0.8; 1.4, 1.5; 1), s = 0.2
    const PfqResult a = pfq_unit(HypergeomSpec::make({0.7, 1.2, 0.8}, {1.4, 1.5}), 1e-13);
    CHECK(rel(a.value, 3.75645278088843301236) < 1e-12);
    // 4F3(3/5, 7/10, 4/5, 1; 7/5, 3/2, 8/5; 1), s = 1.4
    const PfqResult b = pfq_unit(HypergeomSpec::make({0.6, 0.7, 0.8, 1.0}, {1.4, 1.5, 1.6}), 1e-14);
    CHECK(rel(b.value, 1.17644384005226402677) < 1e-13);
}

TEST_CASE("pfq_unit: linked zero pairs take their limiting value") {
    // 2F2(a, b; 2a, c; 1) along a -> 0, compared with a point just off the limit
    const double b = 0.3, c = 1.6;
    const PfqResult lim =
        pfq_unit(HypergeomSpec::make({0.0, b}, {0.0, c}, {LinkedPair{0, 0, 2.0}}), 1e-13);
    const double eps = 1e-7;
    const PfqResult near = pfq_unit(HypergeomSpec::make({eps, b}, {2 * eps, c}), 1e-13);
    CHECK(std::fabs(lim.value - near.value) < 1e-6);
    CHECK(std::fabs(lim.value - 1.0) > 1e-3);

    // numerator zero at k = 1, denominator zero at k = 2: terms 2 vanish, later ones do not
    const PfqResult lim2 =
        pfq_unit(HypergeomSpec::make({-1.0, b}, {-2.0, c}, {LinkedPair{0, 0, 2.0}}), 1e-13);
    const PfqResult near2 =
        pfq_unit(HypergeomSpec::make({-1.0 + eps, b}, {-2.0 + 2 * eps, c}), 1e-13);
    CHECK(std::fabs(lim2.value - near2.value) < 1e-5);
    CHECK(kind_of([&] { HypergeomSpec::make({-2.0, b}, {-1.0, c}, {LinkedPair{0, 0, 0.5}}); }) ==
          ErrorKind::Domain);
}

TEST_CASE("property: terminating series equal the brute-force Pochhammer sum") {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> u(-2.5, 3.5);
    std::uniform_int_distribution<int> n(0, 12);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = -static_cast<double>(n(rng));
        const double b = u(rng), c = u(rng);
        double d = u(rng), e = u(rng);
        if (std::fabs(d - std::round(d)) < 1e-3) d += 0.1;
        if (std::fabs(e - std::round(e)) < 1e-3) e += 0.1;
        const PfqResult r = pfq_unit(HypergeomSpec::make({a, b, c}, {d, e}));
        double brute = 0;
        double abs_sum = 0;
        for (unsigned k = 0; k <= static_cast<unsigned>(-a); ++k) {
            const double t = pochhammer(a, k) * pochhammer(b, k) * pochhammer(c, k) /
                             (pochhammer(d, k) * pochhammer(e, k) * std::tgamma(k + 1.0));
            brute += t;
            abs_sum += std::fabs(t);
        }
        CHECK(std::fabs(r.value - brute) <= 1e-13 * std::max(std::fabs(brute), abs_sum));
    }
}

TEST_CASE("property: Gauss and Dixon identities on a random grid") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.05, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = u(rng), b = u(rng);
        const double c = a + b + 0.15 + 1.5 * u(rng);
        const PfqResult g = pfq_unit(HypergeomSpec::make({a, b}, {c}), 1e-13);
        CHECK(rel(g.value, gauss_closed(a, b, c)) < 1e-11);

        const double da = 0.5 * u(rng), db = 0.4 * u(rng);
        const double dc = std::max(0.01, std::min(0.5 * u(rng), 0.49 + da / 2 - db));
        const PfqResult d =
            pfq_unit(HypergeomSpec::make({da, db, dc}, {1 + da - db, 1 + da - dc}), 1e-13);
        CHECK(rel(d.value, dixon_closed(da, db, dc)) < 1e-10);
    }
}
