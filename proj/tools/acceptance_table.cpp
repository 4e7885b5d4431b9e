#include "acceptance_table.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "spectral_zeta/closedform.hpp"
#include "spectral_zeta/eigensolver.hpp"
#include "spectral_zeta/errors.hpp"
#include "spectral_zeta/iom.hpp"
#include "spectral_zeta/ptspectrum.hpp"
#include "spectral_zeta/specfun.hpp"
#include "spectral_zeta/sumrules.hpp"
#include "spectral_zeta/zeta_numeric.hpp"
#include "suites.hpp"

namespace szeta::cli {

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// Records a bounded quantity and folds it into the verdict.
struct Tally {
    CriterionResult& r;

    void check(const std::string& name, double value, double bound) {
        r.metrics.emplace_back(name, value);
        if (!(value <= bound)) {
            std::ostringstream os;
            os << name << " = " << value << " exceeds " << bound;
            r.notes.push_back(os.str());
            r.pass = false;
        }
    }

    void reports(const std::string& label, const std::vector<SumRuleReport>& rs) {
        double worst = 0.0;
        int failed = 0;
        for (const auto& x : rs) {
            worst = std::max(worst, x.rel_residual / x.tolerance);
            if (!x.pass) {
                ++failed;
                std::ostringstream os;
                os << label << " " << x.id << " residual " << x.rel_residual << " > " << x.tolerance;
                r.notes.push_back(os.str());
            }
        }
        r.metrics.emplace_back(label + " reports", static_cast<double>(rs.size()));
        r.metrics.emplace_back(label + " worst residual/tolerance", worst);
        if (failed > 0) r.pass = false;
    }
};

std::vector<double> closed_pair(double s, double l) { return {z1_zero_alpha(s, l).value, z2_zero_alpha(s, l).value}; }

void criterion1(CriterionResult& r, int threads) {
    Tally t{r};
    struct Case {
        double M, lambda;
        const char* name;
    };
    const Case cases[] = {{2.0, 0.5, "M=2"}, {3.0, 0.5, "M=3"}, {1.5, 0.5, "M=3/2"}, {2.0, 0.3, "M=2 lambda=0.3"}};
    for (const Case& c : cases) {
        const auto t0 = Clock::now();
        ShootingOptions opt;
        opt.threads = threads;
        const Spectrum sp = solve_spectrum(ProblemSpec::make(c.M, 0.0, c.lambda, Branch::Regular), 60, opt);
        const double z1 = zeta_with_tail(sp, 1).value, z2 = zeta_with_tail(sp, 2).value;
        const double secs = seconds_since(t0);
        const double s = 1.0 / (c.M + 1.0);
        const std::string n = c.name;
        t.check(n + " Z-(1) rel", rel(z1, z1_zero_alpha(s, c.lambda).value), 1e-5);
        t.check(n + " Z-(2) rel", rel(z2, z2_zero_alpha(s, c.lambda).value), 1e-5);
        t.check(n + " seconds", secs, 60.0);
        if (c.lambda == 0.5) {
            // the normalisation question: the sum follows the Gamma form, the classical expression is 4x larger
            t.check(n + " Voros/4 rel", rel(z1, z1_voros(c.M, Branch::Regular).value), 1e-5);
            const double ratio = z1_voros_literal(c.M, Branch::Regular) / z1;
            r.metrics.emplace_back(n + " classical/eigensum", ratio);
            t.check(n + " |classical/eigensum - 4|", std::fabs(ratio - 4.0), 1e-4);
        }
    }
}

void criterion2(CriterionResult& r) {
    Tally t{r};
    const double g45 = gamma(0.8), g35 = gamma(0.6), g34 = gamma(0.75), g78 = gamma(0.875), g58 = gamma(0.625);
    const double s5 = std::sqrt(5.0), s2 = std::sqrt(2.0), pi4 = std::pow(kPi, 4), pi5 = std::pow(kPi, 5);

    const double cubic_zp2 = 8.0 * (s5 - 1.0) * pi4 / (std::pow(5.0, 3.4) * std::pow(g45, 4) * g35 * g35);
    t.check("cubic Z+(2) rel", rel(z2_closed(0.4, 0.5, Branch::Irregular).value, cubic_zp2), 1e-9);

    const double sextic_skew = (s2 - 1.0) * pi5 / (32.0 * std::pow(g34, 4) * g78 * g78 * g58 * g58);
    t.check("sextic skew Z(2) rel (simplified)", rel(z_skew_2_simplified(0.5).value, sextic_skew), 1e-9);
    t.check("sextic skew Z(2) rel (5F4)", rel(z2_zero_alpha(0.25, -0.5).value - z2_zero_alpha(0.25, 0.5).value, sextic_skew),
            1e-9);

    const double sextic_z2 = (3.0 - 2.0 * s2) * pi5 / (16.0 * std::pow(g34, 4) * g78 * g78 * g58 * g58);
    t.check("sextic Z_2(2) rel",
            rel(fused_sumrule_eval(2, 2, closed_pair(0.25, 0.5), closed_pair(0.25, -0.5), 0.25, 0.5).value, sextic_z2),
            1e-9);

    const double s3 = 1.0 / 3.0;
    const double quartic = std::cbrt(1.5) * std::pow(gamma(2.0 / 3.0), 2);
    t.check("quartic Z_2(2, lambda=3/2) rel",
            rel(fused_sumrule_eval(2, 2, closed_pair(s3, 1.5), closed_pair(s3, -1.5), s3, 1.5).value, quartic), 1e-9);

    const double cubic_z12 = 16.0 * (s5 - 2.0) * pi4 / (std::pow(5.0, 2.9) * std::pow(g45, 4) * g35 * g35);
    t.check("cubic Z_1(2) rel (fused)",
            rel(fused_sumrule_eval(1, 2, closed_pair(0.4, 0.5), closed_pair(0.4, -0.5), 0.4, 0.5).value, cubic_z12),
            1e-9);
    t.check("cubic Z_1(2) rel (simplified)", rel(zk2_simplified(0.4, 1, 1).value, cubic_z12), 1e-9);

    const double g2 = 32.0 * (5.0 + s5) * pi4 * g35 * g35 / (45.0 * std::pow(g45, 4));
    const std::vector<double> zm = closed_pair(0.4, 5.5), zp = closed_pair(0.4, -5.5);
    const std::vector<double> z1 = {fused_sumrule_eval(1, 1, zm, zp, 0.4, 5.5).value,
                                    fused_sumrule_eval(1, 2, zm, zp, 0.4, 5.5).value};
    t.check("G2 rel (zeta route)", rel(g_from_zetas(2, z1, 0.4, 5.5), g2), 1e-9);
    t.check("G2 rel (explicit)", rel(g2_explicit(0.4, 5.5, zm[1], zp[1]), g2), 1e-9);

    const SumRuleReport z3 = cubic_zminus3_residual(1e-7);
    r.metrics.emplace_back("cubic Z-(3) from 4F3", z3.lhs);
    t.check("cubic Z-(3) 4F3 vs order-3 rule rel", z3.rel_residual, 1e-7);
}

void criterion3(CriterionResult& r, int threads) {
    Tally t{r};
    SuiteConfig c;
    c.points = default_grid();
    c.threads = threads;
    c.tol = 1e-7;
    for (const char* s : {"radial", "fused", "alpha", "qw"}) {
        c.suite = s;
        t.reports(s, run_suite(c));
    }
}

void criterion4(CriterionResult& r, int threads) {
    Tally t{r};
    SuiteConfig c;
    c.points = default_grid();
    c.threads = threads;
    c.tol = 1e-6;
    for (const char* s : {"hyper", "calg"}) {
        c.suite = s;
        t.reports(s, run_suite(c));
    }
}

void criterion5(CriterionResult& r, int threads) {
    Tally t{r};
    for (double M : {2.0, 1.5}) {
        const auto t0 = Clock::now();
        PTOptions opt;
        opt.threads = threads;
        const Spectrum sp = pt_solve_spectrum(PTProblemSpec::make(M, 1, 0.0, 0.5), 40, opt);
        const double direct = zeta_with_tail(sp, 2).value;
        const double secs = seconds_since(t0);
        const double s = 1.0 / (M + 1.0);
        const double rule = fused_sumrule_eval(1, 2, closed_pair(s, 0.5), closed_pair(s, -0.5), s, 0.5).value;
        std::ostringstream n;
        n << "M=" << M;
        t.check(n.str() + " Z_1(2) rel", rel(direct, rule), 1e-4);
        t.check(n.str() + " seconds", secs, 300.0);
    }
}

void criterion6(CriterionResult& r, int threads) {
    Tally t{r};
    SuiteConfig c;
    c.suite = "iom";
    c.points = default_grid();
    c.threads = threads;
    c.tol = 1e-9;
    t.reports("iom", run_suite(c));
}

void criterion7(CriterionResult& r, int threads) {
    Tally t{r};
    // Gamma: reflection, recurrence, duplication
    double worst = 0.0;
    for (double x = -4.45; x < 20.0; x += 0.37) {
        if (std::fabs(x - std::round(x)) < 1e-9) continue;
        worst = std::max(worst, rel(gamma(x + 1.0), x * gamma(x)));
        worst = std::max(worst, rel(gamma(x) * gamma(1.0 - x), kPi / std::sin(kPi * x)));
        if (x > 0.0 && x < 10.0)
            worst = std::max(worst, rel(gamma(x) * gamma(x + 0.5), std::pow(2.0, 1.0 - 2.0 * x) * std::sqrt(kPi) * gamma(2.0 * x)));
    }
    t.check("gamma identities worst rel", worst, 1e-12);

    // terminating pFq against the finite sum
    worst = 0.0;
    for (int n : {3, 7, 12})
        for (double a : {0.3, 1.7})
            for (double c : {0.45, 2.2}) {
                const std::vector<double> num = {-static_cast<double>(n), a, 0.8}, den = {c, 1.9};
                long double sum = 0.0L, abs_sum = 0.0L, term = 1.0L;
                for (int k = 0; k <= n; ++k) {
                    sum += term;
                    abs_sum += std::fabs(term);
                    long double ratio = 1.0L / (k + 1);
                    for (double p : num) ratio *= p + k;
                    for (double q : den) ratio /= q + k;
                    term *= ratio;
                }
                // judged on the sum of |terms|: alternating sums cancel
                const double v = pfq_unit(HypergeomSpec::make(num, den)).value;
                worst = std::max(worst, std::fabs(v - static_cast<double>(sum)) / static_cast<double>(abs_sum));
            }
    t.check("terminating pFq worst error / sum|terms|", worst, 1e-13);

    // node counts and the collocation oracle
    ShootingOptions opt;
    opt.threads = threads;
    const ProblemSpec quartic = ProblemSpec::make(2.0, 0.0, 0.5, Branch::Regular);
    const Spectrum sp = solve_spectrum(quartic, 60, opt);
    int bad_nodes = 0;
    for (int k = 0; k < 20; ++k) bad_nodes += node_count(quartic, sp.levels[k].E.real(), opt) != k;
    t.check("levels with wrong node count", bad_nodes, 0.0);
    const Spectrum col = collocation_spectrum(quartic, 10);
    worst = 0.0;
    for (int k = 0; k < 10; ++k) worst = std::max(worst, rel(col.levels[k].E.real(), sp.levels[k].E.real()));
    t.check("collocation vs shooting worst rel", worst, 1e-8);

    // tail consistency: 40 and 60 levels agree within the combined error
    Spectrum short_sp = sp;
    short_sp.levels.resize(40);
    for (int n : {1, 2}) {
        const ZetaValue a = zeta_with_tail(sp, n), b = zeta_with_tail(short_sp, n);
        t.check("tail 40 vs 60 levels, n=" + std::to_string(n) + ", |diff|/(err40+err60)",
                std::fabs(a.value - b.value) / (a.err + b.err), 1.0);
    }

    // PT conjugation symmetry
    const PTProblemSpec pt = PTProblemSpec::make(2.0, 1, 0.0, 0.5);
    worst = 0.0;
    for (std::complex<double> E : {std::complex<double>(3.0, 1.5), std::complex<double>(40.0, -7.0)}) {
        const auto a = pt_shoot(pt, E), b = pt_shoot(pt, std::conj(E));
        worst = std::max(worst, std::abs(b - std::conj(a)) / std::max(std::abs(a), 1e-3));
    }
    t.check("PT conjugation symmetry", worst, 1e-9);
}

const char* title(int id) {
    switch (id) {
        case 1: return "closed forms vs 60-level spectra";
        case 2: return "reference constants";
        case 3: return "radial, fused and alpha sum rules; quantum Wronskian slope";
        case 4: return "hypergeometric and calG functional relations";
        case 5: return "PT shooting vs fused sum rule";
        case 6: return "integrals of motion";
        case 7: return "module property checks";
        default: return "";
    }
}

}  // namespace

CriterionResult run_criterion(int id, int threads) {
    CriterionResult r;
    r.id = id;
    r.title = title(id);
    r.pass = true;
    const auto t0 = Clock::now();
    try {
        switch (id) {
            case 1: criterion1(r, threads); break;
            case 2: criterion2(r); break;
            case 3: criterion3(r, threads); break;
            case 4: criterion4(r, threads); break;
            case 5: criterion5(r, threads); break;
            case 6: criterion6(r, threads); break;
            case 7: criterion7(r, threads); break;
            default: fail(ErrorKind::Domain, "criteria are numbered 1 to 7");
        }
    } catch (const Error& e) {
        if (id < 1 || id > 7) throw;
        r.pass = false;
        r.notes.push_back(std::string("error: ") + e.what());
    }
    r.seconds = seconds_since(t0);
    return r;
}

std::vector<CriterionResult> run_acceptance(int threads) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 7; ++id) out.push_back(run_criterion(id, threads));
    return out;
}

}  // namespace szeta::cli
