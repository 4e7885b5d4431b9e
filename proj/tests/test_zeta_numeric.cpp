#include <cmath>
#include <numbers>
#include <map>
#include <random>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "spectral_zeta/closedform.hpp"
#include "spectral_zeta/errors.hpp"
#include "spectral_zeta/specfun.hpp"
#include "spectral_zeta/zeta_numeric.hpp"

using namespace szeta;

namespace {

constexpr double pi = std::numbers::pi;

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

std::vector<double> power_law(int n, double delta, double p) {
    std::vector<double> E;
    for (int k = 0; k < n; ++k) E.push_back(std::pow(k + delta, p));
    return E;
}

const Spectrum& cached(double M, double lambda, Branch b, int n) {
    static std::map<std::tuple<double, double, Branch, int>, Spectrum> cache;
    const auto key = std::make_tuple(M, lambda, b, n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, solve_spectrum(ProblemSpec::make(M, 0.0, lambda, b), n)).first;
    return it->second;
}

}  // namespace

TEST_CASE("partial sums") {
    CHECK(zeta_partial(std::vector<double>{3.5}, 1) == 1.0 / 3.5);
    CHECK(zeta_partial(std::vector<double>{1.0, 2.0}, 2) == 1.25);
    const auto E = power_law(30, 0.75, 4.0 / 3.0);
    double prev = 0.0;
    for (int k0 = 1; k0 <= 30; ++k0) {
        const double s = zeta_partial(std::vector<double>(E.begin(), E.begin() + k0), 1);
        CHECK(s > prev);
        prev = s;
    }
    CHECK(kind_of([] { zeta_partial(std::vector<double>{1.0, 0.0}, 1); }) == ErrorKind::ZeroEnergy);
}

TEST_CASE("synthetic power law is recovered") {
    const auto E = power_law(60, 0.75, 4.0 / 3.0);
    const TailModel m = fit_tail(E, 4.0 / 3.0);
    CHECK(m.amplitude == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(m.delta == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(m.residual < 1e-10);
    for (double c : m.corrections) CHECK(std::fabs(c) < 1e-6);

    // the exact sums are Hurwitz zeta values
    for (int n : {1, 2, 3}) {
        const ZetaValue z = zeta_with_tail(E, {}, 4.0 / 3.0, n);
        const double exact = hurwitz_zeta(n * 4.0 / 3.0, 0.75);
        CHECK(std::fabs(z.value - exact) <= 1e-8 * exact);
        CHECK(z.method == ZetaMethod::EigSum);
    }
}

TEST_CASE("synthetic spectrum with corrections") {
    const double p = 1.5;
    auto level = [p](int k) {
        const double u = k + 0.6;
        return std::pow(2.0 * u - 0.3 / u + 0.1 / (u * u), p);
    };
    std::vector<double> E;
    for (int k = 0; k < 80; ++k) E.push_back(level(k));
    const TailModel m = fit_tail(E, p);
    CHECK(m.delta == doctest::Approx(0.6).epsilon(1e-8));
    CHECK(m.amplitude == doctest::Approx(std::pow(2.0, p)).epsilon(1e-8));
    double exact = 0.0;
    // direct summation; the neglected remainder is below 1e-12
    for (int k = 200000; k >= 0; --k) exact += std::pow(level(k), -2);
    const ZetaValue z = zeta_with_tail(E, {}, p, 2);
    CHECK(std::fabs(z.value - exact) < 1e-8 * exact);
}

TEST_CASE("fit validation") {
    CHECK(kind_of([] { fit_tail(power_law(19, 0.75, 4.0 / 3.0), 4.0 / 3.0); }) == ErrorKind::InsufficientLevels);
    auto noisy = power_law(40, 0.75, 4.0 / 3.0);
    std::mt19937 rng(7);
    std::normal_distribution<double> noise(0.0, 0.02);
    for (double& e : noisy) e *= 1.0 + noise(rng);
    CHECK(kind_of([&] { fit_tail(noisy, 4.0 / 3.0); }) == ErrorKind::PoorFit);
}

TEST_CASE("quartic tail fit") {
    const Spectrum& s = cached(2.0, 0.5, Branch::Regular, 61);
    TailOptions o;
    o.window_lo = 30;
    const TailModel m = fit_tail(s, o);
    CHECK(m.residual < 1e-4);
    CHECK(m.exponent == doctest::Approx(4.0 / 3.0));

    // a one-correction model fits better the further out the window sits
    o.n_corrections = 1;
    double prev = 1.0;
    for (int lo : {5, 15, 30}) {
        o.window_lo = lo;
        const double r = fit_tail(s, o).residual;
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("quartic Z(2) against the closed form") {
    const ZetaValue z = zeta_with_tail(cached(2.0, 0.5, Branch::Regular, 60), 2);
    const double c = z2_zero_alpha(1.0 / 3.0, 0.5).value;
    CHECK(std::fabs(z.value - c) <= z.err + 1e-14);
    CHECK(std::fabs(z.value - c) / c <= 1e-6);
}

TEST_CASE("cubic irregular Z(2)") {
    const ZetaValue z = zeta_with_tail(cached(1.5, 0.5, Branch::Irregular, 60), 2);
    const double c = 8.0 * (std::sqrt(5.0) - 1.0) * std::pow(pi, 4) /
                     (std::pow(5.0, 3.4) * std::pow(std::tgamma(0.8), 4) * std::pow(std::tgamma(0.6), 2));
    CHECK(std::fabs(z.value - c) <= z.err + 1e-14);
}

TEST_CASE("order 1 carries the larger error") {
    const Spectrum& s = cached(2.0, 0.5, Branch::Regular, 60);
    CHECK(zeta_with_tail(s, 1).err > zeta_with_tail(s, 2).err);
}

TEST_CASE("doubling the level count stays inside the error") {
    for (double M : {1.5, 2.0, 3.0}) {
        for (Branch b : {Branch::Regular, Branch::Irregular}) {
            const Spectrum& full = cached(M, 0.5, b, 60);
            Spectrum half = full;
            half.levels.resize(30);
            for (int n : {1, 2}) {
                const ZetaValue a = zeta_with_tail(half, n), c = zeta_with_tail(full, n);
                INFO("M=", M, " n=", n);
                CHECK(std::fabs(a.value - c.value) <= a.err);
            }
        }
    }
}

TEST_CASE("eigenvalue sums reproduce the closed forms") {
    for (double M : {1.5, 2.0, 3.0}) {
        for (double lambda : {0.3, 0.5}) {
            const Spectrum& s = cached(M, lambda, Branch::Regular, 60);
            const double sigma = 1.0 / (M + 1.0);
            const double c1 = z1_zero_alpha(sigma, lambda).value;
            const double c2 = z2_zero_alpha(sigma, lambda).value;
            INFO("M=", M, " lambda=", lambda);
            CHECK(std::fabs(zeta_with_tail(s, 1).value - c1) / c1 <= 1e-5);
            CHECK(std::fabs(zeta_with_tail(s, 2).value - c2) / c2 <= 1e-5);
        }
    }
}

TEST_CASE("voros normalisation is fixed by the spectrum") {
    const double z = zeta_with_tail(cached(2.0, 0.5, Branch::Regular, 60), 1).value;
    CHECK(std::fabs(z - z1_voros(2.0, Branch::Regular).value) <= 1e-6 * z);
    CHECK(std::fabs(z1_voros_literal(2.0, Branch::Regular) / z - 4.0) < 1e-6);
    const double zp = zeta_with_tail(cached(3.0, 0.5, Branch::Irregular, 60), 1).value;
    CHECK(std::fabs(zp - z1_voros(3.0, Branch::Irregular).value) <= 1e-6 * zp);
}

TEST_CASE("general alpha Z(1) against the spectrum") {
    const double sigma = 0.3, lambda = 0.4, alpha = 0.2;
    const Spectrum s = solve_spectrum(ProblemSpec::make(M_of_sigma(sigma), alpha, lambda, Branch::Regular), 60);
    const ZetaValue z = zeta_with_tail(s, 1);
    const ZetaValue c = z1_general_alpha(sigma, lambda, alpha);
    CHECK(std::fabs(z.value - c.value) <= z.err + c.err);
    CHECK(std::fabs(z.value - c.value) / c.value <= 1e-6);
}

TEST_CASE("sextic skew zeta from both spectra") {
    const ZetaValue zp = zeta_with_tail(cached(3.0, 0.5, Branch::Irregular, 60), 2);
    const ZetaValue zm = zeta_with_tail(cached(3.0, 0.5, Branch::Regular, 60), 2);
    const double skew = (std::sqrt(2.0) - 1.0) * std::pow(pi, 5) /
                        (32.0 * std::pow(std::tgamma(0.75), 4) * std::pow(std::tgamma(0.875), 2) *
                         std::pow(std::tgamma(0.625), 2));
    CHECK(std::fabs((zp.value - zm.value) - skew) / skew <= 1e-5);
    CHECK(z_skew_2_simplified(0.5).value == doctest::Approx(skew).epsilon(1e-12));
}
