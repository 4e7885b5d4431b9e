#include <cmath>
#include <numbers>

#include "doctest.h"
#include "spectral_zeta/closedform.hpp"
#include "spectral_zeta/errors.hpp"

using namespace szeta;

namespace {

constexpr double pi = std::numbers::pi;

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

double tg(double x) { return std::tgamma(x); }

// cubic Z_+(2)
double cubic_zp2() {
    return 8.0 * (std::sqrt(5.0) - 1.0) * std::pow(pi, 4) /
           (std::pow(5.0, 17.0 / 5.0) * std::pow(tg(0.8), 4) * std::pow(tg(0.6), 2));
}

}  // namespace

TEST_CASE("sigma_of") {
    CHECK(sigma_of(2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
    CHECK(sigma_of(3.0) == 0.25);
    CHECK(sigma_of(1.5) == 0.4);
    CHECK(kind_of([] { sigma_of(1.0); }) == ErrorKind::Domain);
    CHECK(kind_of([] { sigma_of(0.5); }) == ErrorKind::Domain);
}

TEST_CASE("excluded lambda set") {
    // lambda = m2 + m3 (M+1)/2 with M = 3/2: 3 + 2 * 1.25
    CHECK(lambda_excluded(1.5, 0.0, 5.5));
    CHECK(lambda_excluded(1.5, 0.0, -5.5));
    // first family: ((2 m1 + 1)(M+1) + alpha)/2 with m1 = 1
    CHECK(lambda_excluded(2.0, 0.4, 0.5 * (9.0 + 0.4)));
    // half-integer m3 only when alpha = 0: M = 2, 1 + 1.5/2
    CHECK(lambda_excluded(2.0, 0.0, 1.75));
    CHECK_FALSE(lambda_excluded(2.0, 0.3, 1.75));
    CHECK_FALSE(lambda_excluded(2.0, 0.0, 0.5));
    CHECK_FALSE(lambda_excluded(2.0, 0.0, 1.5));
    CHECK(kind_of([] { ProblemSpec::make(1.5, 0.0, 5.5, Branch::Regular); }) == ErrorKind::ExcludedLambda);
    CHECK(kind_of([] { ProblemSpec::make(0.9, 0.0, 0.5, Branch::Regular); }) == ErrorKind::Domain);
}

TEST_CASE("N and L coefficients") {
    CHECK(n_coeff(0, 0.3, 0.4) == doctest::Approx(1.0));
    // sigma (lambda + 2) = 1
    CHECK(std::fabs(n_coeff(2, 0.4, 0.5)) < 1e-15);
    CHECK(n_coeff(1, 1.0 / 3.0, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(kind_of([] { n_coeff(1, 0.25, 4.0); }) == ErrorKind::SingularCoefficient);

    CHECK(l_coeff(0, 0.3, 0.4, 2) == doctest::Approx(1.0));
    for (int a = -3; a <= 3; ++a) CHECK(l_coeff(a, 0.3, 0.4, 0) == n_coeff(a, 0.3, 0.4));
    CHECK(std::fabs(l_coeff(1, 1.0 / 3.0, 0.5, 1)) < 1e-15);
    CHECK(kind_of([] { l_coeff(1, 0.25, 2.0, 1); }) == ErrorKind::SingularCoefficient);
}

TEST_CASE("z1_voros normalisation") {
    const double s = 1.0 / 3.0;
    const double literal = std::pow(s, 2 - 2 * s) * tg(1.5 * s) * tg(s) * tg(0.5 - s) / (std::sqrt(pi) * tg(1 - 0.5 * s));
    CHECK(rel(z1_voros_literal(2.0, Branch::Regular), literal) < 1e-13);
    CHECK(rel(z1_voros(2.0, Branch::Regular).value, literal / 4.0) < 1e-13);
    // the normalised value coincides with the lambda = 1/2 Gamma form
    CHECK(rel(z1_voros(2.0, Branch::Regular).value, z1_zero_alpha(s, 0.5).value) < 1e-14);
    CHECK(rel(z1_voros(3.0, Branch::Irregular).value, z1_zero_alpha(0.25, -0.5).value) < 1e-14);
    const double q = 0.25;
    const double literal_plus = std::pow(q, 2 - 2 * q) * tg(0.5 * q) * tg(q) * tg(0.5 - q) / (std::sqrt(pi) * tg(1 - 1.5 * q));
    CHECK(rel(z1_voros_literal(3.0, Branch::Irregular), literal_plus) < 1e-13);
}

TEST_CASE("z1 at alpha = 0 and the 3F2 form agree (Dixon)") {
    CHECK(rel(z1_general_alpha(0.4, 0.3, 0.0).value, z1_zero_alpha(0.4, 0.3).value) < 1e-10);
    // property: grid
    for (double s : {0.12, 0.2, 0.27, 0.33, 0.41, 0.46}) {
        for (double l : {-0.7, -0.3, 0.2, 0.5, 0.9, 1.6}) {
            if (lambda_excluded(1.0 / s - 1.0, 0.0, l)) continue;
            const ZetaValue a = z1_general_alpha(s, l, 0.0, 1e-13);
            const ZetaValue b = z1_zero_alpha(s, l);
            CHECK(rel(a.value, b.value) < 1e-10);
        }
    }
}

TEST_CASE("z1_general_alpha") {
    const ZetaValue z = z1_general_alpha(0.3, 0.4, 0.2);
    CHECK(std::isfinite(z.value));
    CHECK(z.err > 0.0);
    // 30-digit reference
    CHECK(rel(z.value, 0.64936813605462144464) < 1e-11);
    // excluded lambda: first family at M = 7/3, alpha = 0.2
    const double M = 1.0 / 0.3 - 1.0;
    CHECK(kind_of([&] { z1_general_alpha(0.3, 0.5 * (3.0 * (M + 1.0) + 0.2), 0.2); }) == ErrorKind::ExcludedLambda);
    CHECK(kind_of([] { z1_general_alpha(0.55, 0.4, 0.2); }) == ErrorKind::Domain);
}

TEST_CASE("z2 at alpha = 0") {
    // cubic oscillator, Neumann branch
    const ZetaValue z = z2_zero_alpha(0.4, -0.5);
    CHECK(rel(z.value, cubic_zp2()) < 1e-12);
    CHECK(z.value == z2_closed(0.4, 0.5, Branch::Irregular).value);
    // quartic Dirichlet (30-digit reference)
    CHECK(rel(z2_zero_alpha(1.0 / 3.0, 0.5).value, 0.081582514885384557427) < 1e-12);
}

TEST_CASE("z2_plus_simplified") {
    const ZetaValue z = z2_plus_simplified(0.4, 1);
    CHECK(rel(z.value, cubic_zp2()) < 1e-13);
    CHECK(rel(z.value, z2_zero_alpha(0.4, -0.5).value) < 1e-9);
    // lambda = 3/0.4 - 2 = 5.5 is excluded for M = 3/2
    CHECK(kind_of([] { z2_plus_simplified(0.4, 3); }) == ErrorKind::ExcludedLambda);
}

TEST_CASE("full and skew simplifications") {
    // Z(2) at sigma = 1/3, lambda = 3/2 (m = 1)
    const double ex5 = std::cbrt(1.5) * tg(2.0 / 3.0) * tg(2.0 / 3.0);
    const ZetaValue full = z_full_2_simplified(1.0 / 3.0, 1.5, 1);
    CHECK(rel(full.value, ex5) < 1e-13);
    // the general form needs the limiting value of its removable 0/0
    const double general = z2_zero_alpha(1.0 / 3.0, 1.5).value + z2_zero_alpha(1.0 / 3.0, -1.5).value;
    CHECK(rel(general, ex5) < 1e-9);
    // another point on the locus, 50-digit limit reference
    const double s = 1.0 / 2.4;
    CHECK(rel(z_full_2_simplified(s, 1.2, 1).value, 8.0735997312466828771) < 1e-12);
    CHECK(rel(z2_zero_alpha(s, 1.2).value + z2_zero_alpha(s, -1.2).value, 8.0735997312466828771) < 1e-9);
    CHECK(kind_of([] { z_full_2_simplified(0.3, 0.0, 1); }) == ErrorKind::SingularCoefficient);
    CHECK(kind_of([] { z_full_2_simplified(0.3, 1.2, 1); }) == ErrorKind::Domain);

    const double ex2 = (std::sqrt(2.0) - 1.0) * std::pow(pi, 5) /
                       (32.0 * std::pow(tg(0.75), 4) * std::pow(tg(0.875), 2) * std::pow(tg(0.625), 2));
    CHECK(rel(z_skew_2_simplified(0.5).value, ex2) < 1e-13);
    for (double l : {0.3, 0.5, 0.8}) {
        const double general = z2_zero_alpha(0.25, -l).value - z2_zero_alpha(0.25, l).value;
        CHECK(rel(z_skew_2_simplified(l).value, general) < 1e-9);
    }
    CHECK(kind_of([] { z_skew_2_simplified(0.0); }) == ErrorKind::SingularCoefficient);
    CHECK(kind_of([] { z_skew_2_simplified(1.0); }) == ErrorKind::SingularCoefficient);
}

TEST_CASE("zk2_simplified") {
    const double ex4 = 16.0 * (std::sqrt(5.0) - 2.0) * std::pow(pi, 4) /
                       (std::pow(5.0, 2.9) * std::pow(tg(0.8), 4) * std::pow(tg(0.6), 2));
    CHECK(rel(zk2_simplified(0.4, 1, 1).value, ex4) < 1e-13);
    // against the order-2 fused combination built from the general forms
    for (int K : {1, 2, 3}) {
        for (double s : {0.3, 0.4, 0.45}) {
            const int m = 1;
            const double l = m / s - 2.0;
            const double f = s * (K + 1);
            if (std::fabs(std::sin(pi * f * l)) < 1e-6 || std::fabs(std::sin(2 * pi * f)) < 1e-6) continue;
            const double L1 = l_coeff(1, s, l, K), L2 = l_coeff(2, s, l, K), Lm2 = l_coeff(-2, s, l, K);
            const double zt1 = z1_zero_alpha(s, -l).value - z1_zero_alpha(s, l).value;
            const double t1 = L2 * z2_zero_alpha(s, l).value, t2 = Lm2 * z2_zero_alpha(s, -l).value;
            const double t3 = (L1 * L1 - L2) * zt1 * zt1;
            // (K, sigma) = (3, 0.4) is an exact zero, so compare on the scale of the terms
            const double scale = std::fabs(t1) + std::fabs(t2) + std::fabs(t3);
            CHECK(std::fabs(zk2_simplified(s, m, K).value - (t1 + t2 + t3)) < 1e-9 * scale);
        }
    }
    // quartic: 1 + 2 cos(2 pi / 3) = 0
    CHECK(kind_of([] { zk2_simplified(1.0 / 3.0, 1, 2); }) == ErrorKind::SingularCoefficient);
}

TEST_CASE("property: branch swap is a code-path identity") {
    for (double s : {0.2, 0.3, 0.4}) {
        for (double l : {0.3, 0.5, 0.7}) {
            CHECK(z1_closed(s, l, 0.0, Branch::Irregular).value == z1_closed(s, -l, 0.0, Branch::Regular).value);
            CHECK(z1_closed(s, l, 0.25, Branch::Irregular).value == z1_closed(s, -l, 0.25, Branch::Regular).value);
            CHECK(z2_closed(s, l, Branch::Irregular).value == z2_closed(s, -l, Branch::Regular).value);
        }
    }
}

TEST_CASE("property: simplified forms equal the general forms on their loci") {
    for (double s : {0.3, 0.35, 0.4, 0.45}) {
        const double l = 1.0 / s - 2.0;
        if (lambda_excluded(1.0 / s - 1.0, 0.0, l)) continue;
        CHECK(rel(z2_plus_simplified(s, 1).value, z2_zero_alpha(s, -l).value) < 1e-9);
    }
    for (double l : {1.2, 1.3, 1.5, 1.7, 2.2, 3.0}) {
        const double s = 1.0 / (2.0 * l);
        if (lambda_excluded(1.0 / s - 1.0, 0.0, l)) continue;
        const double general = z2_zero_alpha(s, l).value + z2_zero_alpha(s, -l).value;
        CHECK(rel(z_full_2_simplified(s, l, 1).value, general) < 1e-9);
    }
    // m = 2 on the full locus
    const double l2 = 4.0, s2 = 3.0 / 8.0;
    CHECK(rel(z_full_2_simplified(s2, l2, 2).value, z2_zero_alpha(s2, l2).value + z2_zero_alpha(s2, -l2).value) < 1e-9);
}
