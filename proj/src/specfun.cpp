#include "spectral_zeta/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "spectral_zeta/errors.hpp"

namespace szeta {

namespace {

constexpr double kPi = std::numbers::pi;

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double lanczos_sum(double z) {
    // z = x - 1
    double sum = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
    return sum;
}

// Gamma for x >= 0.5.
double gamma_positive(double x) {
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    const double sum = lanczos_sum(z);
    // split the power to delay overflow
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * kPi) * half * (half * std::exp(-t)) * sum;
}

// Bernoulli numbers B_2 ... B_30.
constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6.0,         -1.0 / 30.0,        1.0 / 42.0,        -1.0 / 30.0,
    5.0 / 66.0,        -691.0 / 2730.0,    7.0 / 6.0,         -3617.0 / 510.0,
    43867.0 / 798.0,   -174611.0 / 330.0,  854513.0 / 138.0,  -236364091.0 / 2730.0,
    8553103.0 / 6.0,   -23749461029.0 / 870.0, 8615841276005.0 / 14322.0};

constexpr double kEulerGamma = 0.57721566490153286061;

// Taylor coefficients of ln Gamma(1+z): -gamma z + sum_k (-1)^k zeta(k) z^k / k
struct LogGammaSeries {
    static constexpr int kTerms = 64;
    std::array<double, kTerms + 1> c{};
    LogGammaSeries() {
        c[1] = -kEulerGamma;
        for (int k = 2; k <= kTerms; ++k) {
            const double z = hurwitz_zeta(static_cast<double>(k), 1.0);
            c[k] = ((k % 2 == 0) ? 1.0 : -1.0) * z / k;
        }
    }
    double operator()(double z) const {
        double acc = 0.0;
        for (int k = kTerms; k >= 1; --k) acc = (acc + c[k]) * z;
        return acc;
    }
};

const LogGammaSeries& log_gamma_series() {
    static const LogGammaSeries s;
    return s;
}

double log_gamma_positive(double x) {
    if (x == 1.0 || x == 2.0) return 0.0;
    if (x < 0.5) return log_gamma_positive(x + 1.0) - std::log(x);
    if (x <= 1.5) return log_gamma_series()(x - 1.0);
    if (x <= 2.5) return std::log1p(x - 2.0) + log_gamma_series()(x - 2.0);
    if (x < 12.0) return std::log(gamma_positive(x));
    // Stirling series
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double corr = 0.0;
    double p = inv;
    for (int j = 1; j <= 8; ++j) {
        corr += kBernoulli[j - 1] / (2.0 * j * (2.0 * j - 1.0)) * p;
        p *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * kPi) + corr;
}

}  // namespace

double sin_pi(double x) {
    double r = std::fmod(x, 2.0);  // (-2, 2)
    if (r < 0) r += 2.0;           // [0, 2)
    if (r == 0.0 || r == 1.0) return 0.0;
    if (r == 0.5) return 1.0;
    if (r == 1.5) return -1.0;
    if (r <= 0.25) return std::sin(kPi * r);
    if (r <= 0.75) return std::cos(kPi * (r - 0.5));
    if (r <= 1.25) return -std::sin(kPi * (r - 1.0));
    if (r <= 1.75) return -std::cos(kPi * (r - 1.5));
    return -std::sin(kPi * (2.0 - r));
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

double gamma(double x) {
    if (!std::isfinite(x)) fail(ErrorKind::Domain, "gamma of non-finite argument");
    if (is_nonpositive_integer(x)) {
        std::ostringstream os;
        os << "gamma has a pole at x = " << x;
        fail(ErrorKind::Pole, os.str());
    }
    if (x >= 0.5) return gamma_positive(x);
    return kPi / (sin_pi(x) * gamma_positive(1.0 - x));
}

double log_gamma(double x) {
    if (!(x > 0.0)) fail(ErrorKind::Domain, "log_gamma requires x > 0");
    return log_gamma_positive(x);
}

SignedLog log_abs_gamma(double x) {
    if (!std::isfinite(x)) fail(ErrorKind::Domain, "log_abs_gamma of non-finite argument");
    if (is_nonpositive_integer(x)) {
        std::ostringstream os;
        os << "gamma has a pole at x = " << x;
        fail(ErrorKind::Pole, os.str());
    }
    if (x > 0.0) return {log_gamma_positive(x), 1};
    // Gamma(x) = pi / (sin(pi x) Gamma(1-x))
    const double s = sin_pi(x);
    return {std::log(kPi) - std::log(std::fabs(s)) - log_gamma_positive(1.0 - x), s > 0 ? 1 : -1};
}

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 170.0 || x < -170.0) {
        const SignedLog lg = log_abs_gamma(x);
        return lg.sign * std::exp(-lg.log_abs);
    }
    return 1.0 / gamma(x);
}

double pochhammer(double a, unsigned n) {
    double p = 1.0;
    for (unsigned k = 0; k < n; ++k) p *= a + static_cast<double>(k);
    return p;
}

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0)) fail(ErrorKind::Domain, "hurwitz_zeta requires s > 1");
    if (!(q > 0.0)) fail(ErrorKind::Domain, "hurwitz_zeta requires q > 0");
    // direct terms until the shifted argument is large enough for the
    // asymptotic correction to reach full precision
    const double shift_target = 16.0 + 0.5 * s;
    long n = std::max(0L, static_cast<long>(std::ceil(shift_target - q)));
    long double sum = 0.0L;
    for (long k = n - 1; k >= 0; --k) sum += std::pow(static_cast<long double>(q + k), -static_cast<long double>(s));
    const double a = q + static_cast<double>(n);
    double tail = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    // sum_j B_2j/(2j)! (s)_{2j-1} a^{-s-2j+1}
    double rising = s;                   // (s)_{1}
    double fact = 2.0;                   // (2j)!
    double apow = std::pow(a, -s - 1.0); // a^{-s-2j+1}
    for (int j = 1; j <= static_cast<int>(kBernoulli.size()); ++j) {
        const double term = kBernoulli[j - 1] / fact * rising * apow;
        tail += term;
        if (std::fabs(term) < 1e-18 * std::fabs(tail)) break;
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        apow /= a * a;
    }
    return static_cast<double>(sum + tail);
}

GammaRatio& GammaRatio::num(double x) {
    const SignedLog lg = log_abs_gamma(x);
    log_abs_ += lg.log_abs;
    sign_ *= lg.sign;
    return *this;
}

GammaRatio& GammaRatio::den(double x) {
    if (is_nonpositive_integer(x)) {
        zero_ = true;
        return *this;
    }
    const SignedLog lg = log_abs_gamma(x);
    log_abs_ -= lg.log_abs;
    sign_ *= lg.sign;
    return *this;
}

GammaRatio& GammaRatio::mul(double v) {
    if (v == 0.0) {
        zero_ = true;
        return *this;
    }
    log_abs_ += std::log(std::fabs(v));
    if (v < 0) sign_ = -sign_;
    return *this;
}

GammaRatio& GammaRatio::div(double v) {
    if (v == 0.0) fail(ErrorKind::Pole, "division by zero in Gamma product");
    log_abs_ -= std::log(std::fabs(v));
    if (v < 0) sign_ = -sign_;
    return *this;
}

GammaRatio& GammaRatio::pow(double base, double exponent) {
    if (!(base > 0.0)) fail(ErrorKind::Domain, "GammaRatio::pow needs a positive base");
    log_abs_ += exponent * std::log(base);
    return *this;
}

double GammaRatio::value() const {
    if (zero_) return 0.0;
    return sign_ * std::exp(log_abs_);
}

HypergeomSpec HypergeomSpec::make(std::vector<double> numerator, std::vector<double> denominator,
                                  std::vector<LinkedPair> links) {
    HypergeomSpec h;
    h.numerator = std::move(numerator);
    h.denominator = std::move(denominator);
    h.links = std::move(links);
    std::vector<bool> num_linked(h.numerator.size(), false), den_linked(h.denominator.size(), false);
    for (const LinkedPair& l : h.links) {
        if (l.num >= h.numerator.size() || l.den >= h.denominator.size() || l.slope == 0.0)
            fail(ErrorKind::Domain, "invalid linked parameter pair");
        num_linked[l.num] = true;
        den_linked[l.den] = true;
        const double a = h.numerator[l.num];
        const double b = h.denominator[l.den];
        // a denominator zero must be preceded (or matched) by its numerator zero
        if (is_nonpositive_integer(b) && !(is_nonpositive_integer(a) && a >= b))
            fail(ErrorKind::Domain, "linked denominator reaches zero before its numerator");
    }
    for (std::size_t j = 0; j < h.denominator.size(); ++j) {
        if (!den_linked[j] && is_nonpositive_integer(h.denominator[j])) {
            std::ostringstream os;
            os << "denominator parameter " << h.denominator[j] << " is a non-positive integer";
            fail(ErrorKind::Domain, os.str());
        }
    }
    for (std::size_t i = 0; i < h.numerator.size(); ++i)
        if (!num_linked[i] && is_nonpositive_integer(h.numerator[i])) h.terminating = true;
    double s = 0.0;
    for (double b : h.denominator) s += b;
    for (double a : h.numerator) s -= a;
    h.s = s;
    return h;
}

namespace {

// Term generator for sum_k prod (a_i)_k / prod (b_j)_k / k!. Simultaneous
// zeros of linked pairs are handled by tracking the power of the path
// parameter epsilon carried by the current term.
class TermStream {
public:
    explicit TermStream(const HypergeomSpec& h) : h_(h) {
        num_slope_.assign(h.numerator.size(), 0.0);
        den_slope_.assign(h.denominator.size(), 0.0);
        for (const LinkedPair& l : h.links) {
            num_slope_[l.num] = 1.0;
            den_slope_[l.den] = l.slope;
        }
    }
    // value of the term with index k_ (zero while the epsilon power is positive)
    long double term() const { return eps_power_ > 0 ? 0.0L : t_; }
    bool exhausted() const { return exhausted_; }
    std::size_t index() const { return k_; }

    void advance() {
        const long double k = static_cast<long double>(k_);
        long double r = 1.0L / (k + 1.0L);
        for (std::size_t i = 0; i < h_.numerator.size(); ++i) {
            const long double f = static_cast<long double>(h_.numerator[i]) + k;
            if (f == 0.0L) {
                if (num_slope_[i] == 0.0) {
                    exhausted_ = true;
                    r = 0.0L;
                } else {
                    ++eps_power_;
                }
            } else {
                r *= f;
            }
        }
        for (std::size_t j = 0; j < h_.denominator.size(); ++j) {
            const long double f = static_cast<long double>(h_.denominator[j]) + k;
            if (f == 0.0L) {
                --eps_power_;
                r /= static_cast<long double>(den_slope_[j]);
            } else {
                r /= f;
            }
        }
        t_ *= r;
        ++k_;
    }

private:
    const HypergeomSpec& h_;
    std::vector<double> num_slope_, den_slope_;
    long double t_ = 1.0L;
    int eps_power_ = 0;
    std::size_t k_ = 0;
    bool exhausted_ = false;
};

}  // namespace

PfqResult pfq_unit(const HypergeomSpec& spec, double tol, const PfqOptions& options) {
    if (!spec.convergent()) {
        std::ostringstream os;
        os << "pFq(1) diverges: convergence indicator s = " << spec.s << " <= 0";
        fail(ErrorKind::DivergentSeries, os.str());
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    TermStream ts(spec);
    long double sum = 0.0L;
    long double abs_sum = 0.0L;

    if (spec.terminating) {
        while (!ts.exhausted() && ts.index() < options.max_terms) {
            const long double t = ts.term();
            sum += t;
            abs_sum += std::fabs(t);
            ts.advance();
        }
        if (!ts.exhausted()) fail(ErrorKind::NoConvergence, "terminating series longer than max_terms");
        PfqResult r;
        r.value = static_cast<double>(sum);
        r.achieved_err = 4.0 * eps * static_cast<double>(abs_sum);
        r.terms = ts.index();
        return r;
    }

    const double s = spec.s;
    std::vector<std::vector<long double>> table;  // table[j][m]
    long double prev_diag = 0.0L;
    double best_err = std::numeric_limits<double>::infinity();
    double best_value = 0.0;
    bool best_accel = false;
    std::size_t checkpoint = std::max<std::size_t>(options.first_checkpoint, 2);

    while (checkpoint <= options.max_terms) {
        while (ts.index() < checkpoint) {
            const long double t = ts.term();
            sum += t;
            abs_sum += std::fabs(t);
            ts.advance();
        }
        const double scale = std::max(1.0, std::fabs(static_cast<double>(sum)));
        const double floor_err = 8.0 * eps * std::max(static_cast<double>(abs_sum), std::fabs(static_cast<double>(sum)));
        // algebraic tail bound
        const double tN = std::fabs(static_cast<double>(ts.term()));
        const double direct_err = tN * static_cast<double>(checkpoint) / s + floor_err;
        if (direct_err < best_err) {
            best_err = direct_err;
            best_value = static_cast<double>(sum);
            best_accel = false;
        }

        // Richardson row
        std::vector<long double> row;
        row.push_back(sum);
        const std::size_t j = table.size();
        const int depth = static_cast<int>(std::min<std::size_t>(j, static_cast<std::size_t>(options.max_extrapolation_order)));
        for (int m = 1; m <= depth; ++m) {
            const long double f = std::pow(2.0L, static_cast<long double>(s) + (m - 1));
            row.push_back((f * row[m - 1] - table[j - 1][m - 1]) / (f - 1.0L));
        }
        table.push_back(row);
        const long double diag = row.back();
        if (j >= 2) {
            const double accel_err = static_cast<double>(std::fabs(diag - prev_diag)) + 4.0 * floor_err;
            if (accel_err < best_err) {
                best_err = accel_err;
                best_value = static_cast<double>(diag);
                best_accel = true;
            }
        }
        prev_diag = diag;

        if (best_err <= tol * scale) {
            PfqResult r;
            r.value = best_value;
            r.achieved_err = best_err;
            r.terms = ts.index();
            r.accelerated = best_accel;
            return r;
        }
        checkpoint *= 2;
    }
    std::ostringstream os;
    os << "pFq(1) did not reach tol " << tol << " within " << options.max_terms
       << " terms (best error estimate " << best_err << ", s = " << s << ")";
    fail(ErrorKind::NoConvergence, os.str());
}

}  // namespace szeta
