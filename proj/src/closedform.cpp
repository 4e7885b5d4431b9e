#include "spectral_zeta/closedform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spectral_zeta/errors.hpp"

namespace szeta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRoundoff = 1e-14;  // relative error budget of a Gamma product

void require_sigma(double sigma) {
    if (!(sigma > 0.0 && sigma < 0.5)) fail(ErrorKind::Domain, "sigma must lie in (0, 1/2)");
}

double checked_sin_ratio(double num_arg, double den_arg, const char* what) {
    const double d = sin_pi(den_arg);
    if (std::fabs(d) < 1e-14) fail(ErrorKind::SingularCoefficient, what);
    return sin_pi(num_arg) / d;
}

double nonzero(double v, const char* what) {
    if (std::fabs(v) < 1e-14) fail(ErrorKind::SingularCoefficient, what);
    return v;
}

ZetaValue closed(int order, double value, double err) {
    return ZetaValue{order, value, err + kRoundoff * std::fabs(value), ZetaMethod::ClosedForm};
}

// Snap p to the integer n when it is within rounding distance.
bool near_nonpositive_integer(double p, double& n) {
    n = std::round(p);
    return n <= 0.0 && std::fabs(p - n) < 1e-11;
}

}  // namespace

double n_coeff(int a, double sigma, double lambda) {
    return checked_sin_ratio(sigma * (lambda + a), sigma * lambda, "N_a: sigma*lambda is an integer");
}

double l_coeff(int a, double sigma, double lambda, int K) {
    if (K < 0) fail(ErrorKind::Domain, "K must be non-negative");
    const double f = sigma * (K + 1);
    return checked_sin_ratio(f * (lambda + a), f * lambda, "L_a: sigma*(K+1)*lambda is an integer");
}

double z1_voros_literal(double M, Branch branch) {
    const double s = sigma_of(M);
    const double pm = (branch == Branch::Regular) ? 0.5 : -0.5;
    GammaRatio g;
    g.pow(s, 2.0 - 2.0 * s).num(s * (1.0 + pm)).num(s).num(0.5 - s).div(std::sqrt(kPi)).den(1.0 - s * (1.0 - pm));
    return g.value();
}

ZetaValue z1_voros(double M, Branch branch) {
    return closed(1, 0.25 * z1_voros_literal(M, branch), 0.0);
}

ZetaValue z1_zero_alpha(double sigma, double lambda) {
    require_sigma(sigma);
    GammaRatio g;
    g.pow(sigma, 2.0 - 2.0 * sigma)
        .num(sigma * (1.0 + lambda))
        .num(sigma)
        .num(0.5 - sigma)
        .div(4.0 * std::sqrt(kPi))
        .den(1.0 - sigma * (1.0 - lambda));
    return closed(1, g.value(), 0.0);
}

ZetaValue z1_general_alpha(double sigma, double lambda, double alpha, double tol) {
    require_sigma(sigma);
    require_admissible(M_of_sigma(sigma), alpha, lambda);
    const double A = 0.5 + sigma * alpha / 2.0 + sigma * lambda;
    GammaRatio g;
    g.pow(sigma, 2.0 - 2.0 * sigma)
        .num(A)
        .num(2.0 * sigma * (1.0 + lambda))
        .num(2.0 * sigma)
        .pow(4.0, -sigma)
        .den(1.0 + 2.0 * sigma * lambda)
        .den(A + 2.0 * sigma);
    const double pre = g.value();
    const PfqResult f = pfq_unit(
        HypergeomSpec::make({A, 2.0 * sigma * (1.0 + lambda), 2.0 * sigma}, {1.0 + 2.0 * sigma * lambda, A + 2.0 * sigma}),
        tol);
    return closed(1, pre * f.value, std::fabs(pre) * f.achieved_err);
}

PfqResult f5f4(double sigma, double lambda, double tol) {
    require_sigma(sigma);
    const double sl = sigma * lambda;
    double a0 = 0.5 + sl;
    double b1 = 1.0 + 2.0 * sl;
    std::vector<LinkedPair> links;
    double n = 0;
    // 1 + 2 sigma lambda = 2 (1/2 + sigma lambda): both vanish together on the
    // locus sigma*lambda = (2m-1)/2 for the irregular branch
    if (near_nonpositive_integer(a0, n)) {
        a0 = n;
        b1 = 2.0 * n;
        links.push_back(LinkedPair{0, 1, 2.0});
    }
    const HypergeomSpec h = HypergeomSpec::make(
        {a0, 2.0 * sigma * (1.0 + lambda), sigma * (2.0 + lambda), 2.0 * sigma, sigma * (1.0 + lambda)},
        {1.0 + sl, b1, 0.5 + sigma * (2.0 + lambda), 1.0 + sigma * (1.0 + lambda)}, links);
    return pfq_unit(h, tol);
}

ZetaValue z2_zero_alpha(double sigma, double lambda, double tol) {
    require_sigma(sigma);
    const double sl = sigma * lambda;
    GammaRatio g;
    g.mul(std::sqrt(kPi))
        .pow(sigma, 3.0 - 4.0 * sigma)
        .pow(4.0, -(1.0 + sl))
        .div(1.0 + lambda)
        .num(2.0 * sigma * (1.0 + lambda))
        .num(sigma * (2.0 + lambda))
        .num(2.0 * sigma)
        .den(1.0 + sl)
        .den(1.0 + sl)
        .den(0.5 + sigma * (2.0 + lambda));
    const double pre = g.value();
    const PfqResult f = f5f4(sigma, lambda, tol);
    return closed(2, pre * f.value, std::fabs(pre) * f.achieved_err);
}

ZetaValue z1_closed(double sigma, double lambda, double alpha, Branch branch) {
    const double l = branch == Branch::Regular ? lambda : -lambda;
    if (alpha == 0.0) return z1_zero_alpha(sigma, l);
    return z1_general_alpha(sigma, l, alpha);
}

ZetaValue z2_closed(double sigma, double lambda, Branch branch) {
    return z2_zero_alpha(sigma, branch == Branch::Regular ? lambda : -lambda);
}

ZetaValue z2_plus_simplified(double sigma, int m) {
    require_sigma(sigma);
    if (m < 1) fail(ErrorKind::Domain, "m must be a positive integer");
    const double lambda = m / sigma - 2.0;
    require_admissible(M_of_sigma(sigma), 0.0, lambda);
    const double s2 = sin_pi(2.0 * sigma);
    const double s3 = nonzero(sin_pi(3.0 * sigma), "csc(3 pi sigma) is singular");
    const double s4 = nonzero(sin_pi(4.0 * sigma), "sin(4 pi sigma) vanishes");
    GammaRatio g;
    g.mul(-1.0)
        .pow(sigma, 4.0 - 4.0 * sigma)
        .num(sigma).num(sigma).num(sigma).num(sigma)
        .num(1.0 - 2.0 * sigma).num(1.0 - 2.0 * sigma)
        .mul(s2 * s2 * s2 / (s3 * s3 * s4))
        .pow(2.0, -(4.0 - 4.0 * sigma))
        .den(1.0 - 3.0 * sigma + m).den(1.0 - 3.0 * sigma + m)
        .den(1.0 + sigma - m).den(1.0 + sigma - m);
    return closed(2, g.value(), 0.0);
}

ZetaValue z_full_2_simplified(double sigma, double lambda, int m) {
    if (lambda == 0.0) fail(ErrorKind::SingularCoefficient, "lambda = 0 makes sigma*lambda an integer");
    require_sigma(sigma);
    if (m < 1) fail(ErrorKind::Domain, "m must be a positive integer");
    if (std::fabs(sigma - (2.0 * m - 1.0) / (2.0 * lambda)) > 1e-9) {
        std::ostringstream os;
        os << "Z(2) reduction needs sigma = (2m-1)/(2 lambda); got sigma = " << sigma << ", lambda = " << lambda << ", m = " << m;
        fail(ErrorKind::Domain, os.str());
    }
    const double c1 = nonzero(cos_pi(sigma), "sec(pi sigma) is singular");
    const double c2 = nonzero(cos_pi(2.0 * sigma), "sec(2 pi sigma) is singular");
    const double pi4 = kPi * kPi * kPi * kPi;
    GammaRatio g;
    g.mul(-pi4)
        .pow(sigma, 4.0 - 4.0 * sigma)
        .num(1.0 - 2.0 * sigma).num(1.0 - 2.0 * sigma)
        .div(c1 * c1 * c2)
        .pow(4.0, -(1.0 - 2.0 * sigma))
        .den(1.0 - sigma).den(1.0 - sigma).den(1.0 - sigma).den(1.0 - sigma)
        .den(1.5 - sigma - m).den(1.5 - sigma - m)
        .den(0.5 - sigma + m).den(0.5 - sigma + m);
    return closed(2, g.value(), 0.0);
}

ZetaValue z_skew_2_simplified(double lambda) {
    if (lambda == 0.0) fail(ErrorKind::SingularCoefficient, "lambda = 0 makes sigma*lambda an integer");
    const double c = nonzero(cos_pi(lambda / 2.0), "sec(pi lambda / 2) is singular");
    const double t = sin_pi(lambda / 4.0) / cos_pi(lambda / 4.0);
    const double pi5 = kPi * kPi * kPi * kPi * kPi;
    GammaRatio g;
    g.mul(pi5 * t / (64.0 * c * c))
        .den(0.75).den(0.75).den(0.75).den(0.75)
        .den((3.0 + lambda) / 4.0).den((3.0 + lambda) / 4.0)
        .den((3.0 - lambda) / 4.0).den((3.0 - lambda) / 4.0);
    return closed(2, g.value(), 0.0);
}

ZetaValue zk2_simplified(double sigma, int m, int K) {
    require_sigma(sigma);
    if (m < 1 || K < 1) fail(ErrorKind::Domain, "m and K must be positive integers");
    const double f = sigma * (K + 1);
    const double s1 = nonzero(sin_pi(sigma), "csc(pi sigma) is singular");
    const double s3 = nonzero(sin_pi(3.0 * sigma), "csc(3 pi sigma) is singular");
    const double c2 = nonzero(cos_pi(2.0 * sigma), "sec(2 pi sigma) is singular");
    const double s2f = nonzero(sin_pi(2.0 * f), "sin(2 pi sigma (K+1)) vanishes");
    const double sf = sin_pi(f);
    const double d = nonzero(1.0 + 2.0 * c2, "1 + 2 cos(2 pi sigma) vanishes");
    const double csc_sum = 1.0 / s3 + 1.0 / s1;
    const double t1 = csc_sum * csc_sum * sf * sf / (s2f * s2f);
    const double t2 = sin_pi(4.0 * f) * (1.0 + 1.0 / c2) / (d * d * s1 * s1 * s2f);
    const double pi4 = kPi * kPi * kPi * kPi;
    GammaRatio g;
    g.mul(pi4 / (s1 * s1))
        .pow(sigma, 4.0 - 4.0 * sigma)
        .num(1.0 - 2.0 * sigma).num(1.0 - 2.0 * sigma)
        .pow(16.0, -(1.0 - sigma))
        .den(1.0 + sigma - m).den(1.0 + sigma - m)
        .den(1.0 - 3.0 * sigma + m).den(1.0 - 3.0 * sigma + m)
        .den(1.0 - sigma).den(1.0 - sigma).den(1.0 - sigma).den(1.0 - sigma);
    const double pre = g.value();
    return closed(2, pre * (t1 - t2), 0.0);
}

}  // namespace szeta
