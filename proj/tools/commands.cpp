#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance_table.hpp"
#include "spectral_zeta/closedform.hpp"
#include "spectral_zeta/eigensolver.hpp"
#include "spectral_zeta/errors.hpp"
#include "spectral_zeta/ptspectrum.hpp"
#include "spectral_zeta/sumrules.hpp"
#include "spectral_zeta/zeta_numeric.hpp"
#include "suites.hpp"

namespace szeta::cli {

namespace {

// CLI11 reads config files through this; nested objects name subcommands.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        Json j;
        try {
            j = Json::parse(input);
        } catch (const Json::parse_error& e) {
            throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
        std::vector<CLI::ConfigItem> items;
        collect(j, {}, items);
        return items;
    }

private:
    static std::string scalar(const Json& v, const std::string& key) {
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_number()) return format_number(v.get<double>());
        if (v.is_string()) return v.get<std::string>();
        throw CLI::ConversionError("unsupported value for config key '" + key + "'");
    }

    static void collect(const Json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = it.key();
            if (it->is_object()) {
                std::vector<std::string> sub = parents;
                sub.push_back(it.key());
                items.push_back({sub, "++", {}});
                collect(*it, sub, items);
                items.push_back({sub, "--", {}});
                continue;
            }
            if (it->is_array()) {
                for (const auto& v : *it) item.inputs.push_back(scalar(v, it.key()));
            } else {
                item.inputs.push_back(scalar(*it, it.key()));
            }
            items.push_back(std::move(item));
        }
    }
};

Branch parse_branch(const std::string& b) {
    if (b == "minus" || b == "regular") return Branch::Regular;
    if (b == "plus" || b == "irregular") return Branch::Irregular;
    fail(ErrorKind::Domain, "branch must be minus or plus");
}

Json problem_json(const RunConfig& cfg) {
    Json p;
    if (cfg.K > 0) {
        p["type"] = "pt";
        p["M"] = cfg.M;
        p["K"] = cfg.K;
        p["alpha"] = cfg.alpha;
        p["lambda"] = cfg.lambda;
    } else {
        p["type"] = "radial";
        p["M"] = cfg.M;
        p["alpha"] = cfg.alpha;
        p["lambda"] = cfg.lambda;
        p["branch"] = cfg.branch;
    }
    return p;
}

Json header(const std::string& command) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

Spectrum compute_spectrum(const RunConfig& cfg, int count, const std::string& solver) {
    if (count < 0) fail(ErrorKind::Domain, "count must be non-negative");
    if (cfg.K > 0) {
        const PTProblemSpec p = PTProblemSpec::make(cfg.M, cfg.K, cfg.alpha, cfg.lambda);
        if (count == 0) return Spectrum{p, {}, SolverMethod::PTShooting};
        PTOptions opt;
        opt.tol = cfg.solver_tol;
        opt.threads = cfg.threads;
        return pt_solve_spectrum(p, count, opt);
    }
    const ProblemSpec p = ProblemSpec::make(cfg.M, cfg.alpha, cfg.lambda, parse_branch(cfg.branch));
    const bool colloc = solver == "collocation";
    if (!colloc && !solver.empty() && solver != "shooting")
        fail(ErrorKind::Domain, "eig method must be shooting or collocation");
    if (count == 0) return Spectrum{p, {}, colloc ? SolverMethod::Collocation : SolverMethod::Shooting};
    if (colloc) return collocation_spectrum(p, count);
    ShootingOptions opt;
    opt.tol = cfg.solver_tol;
    opt.threads = cfg.threads;
    return solve_spectrum(p, count, opt);
}

Json zeta_json(const ZetaValue& z) {
    Json j;
    j["order"] = z.order;
    j["method"] = to_string(z.method);
    j["value"] = z.value;
    j["err"] = z.err;
    return j;
}

std::vector<ZetaValue> closed_zetas(const RunConfig& cfg, const std::vector<int>& orders) {
    const double s = sigma_of(cfg.M);
    std::vector<ZetaValue> out;
    for (int n : orders)
        if (n < 1 || n > 2) fail(ErrorKind::Domain, "closed forms exist for orders 1 and 2 only");
    if (cfg.K == 0) {
        const Branch b = parse_branch(cfg.branch);
        for (int n : orders) {
            ZetaValue z = n == 1 ? z1_closed(s, cfg.lambda, cfg.alpha, b) : z2_closed(s, cfg.lambda, b);
            if (n == 2 && cfg.alpha != 0.0) fail(ErrorKind::Domain, "the order-2 closed form needs alpha = 0");
            z.order = n;
            out.push_back(z);
        }
        return out;
    }
    // PT problem: fused sum rules fed with the radial closed forms
    const double a = cfg.alpha * fused_alpha_sign(cfg.K);
    std::vector<ZetaValue> zm = {z1_closed(s, cfg.lambda, a, Branch::Regular)};
    std::vector<ZetaValue> zp = {z1_closed(s, cfg.lambda, a, Branch::Irregular)};
    for (int n : orders)
        if (n == 2) {
            if (cfg.alpha != 0.0) fail(ErrorKind::Domain, "the order-2 closed form needs alpha = 0");
            zm.push_back(z2_closed(s, cfg.lambda, Branch::Regular));
            zp.push_back(z2_closed(s, cfg.lambda, Branch::Irregular));
            break;
        }
    for (int n : orders) {
        ZetaValue z = fused_sumrule_eval(cfg.K, n, zm, zp, s, cfg.lambda, cfg.alpha);
        z.order = n;
        out.push_back(z);
    }
    return out;
}

std::string report_csv(const std::vector<SumRuleReport>& reports) {
    std::ostringstream os;
    os << "id,lhs,rhs,abs_residual,rel_residual,tolerance,pass,provenance\n";
    for (const auto& r : reports)
        os << csv_cell(r.id) << ',' << format_number(r.lhs) << ',' << format_number(r.rhs) << ','
           << format_number(r.abs_residual) << ',' << format_number(r.rel_residual) << ',' << format_number(r.tolerance)
           << ',' << (r.pass ? "true" : "false") << ',' << csv_cell(r.provenance) << '\n';
    return os.str();
}

Json report_json(const SumRuleReport& r) {
    Json j;
    j["id"] = r.id;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    if (r.lhs_imag != 0.0 || r.rhs_imag != 0.0) {
        j["lhs_imag"] = r.lhs_imag;
        j["rhs_imag"] = r.rhs_imag;
    }
    j["abs_residual"] = r.abs_residual;
    j["rel_residual"] = r.rel_residual;
    j["scale"] = r.scale;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["provenance"] = r.provenance;
    Json in = Json::array();
    for (const auto& [k, v] : r.inputs) in.push_back(Json::array({k, v}));
    j["inputs"] = in;
    return j;
}

std::string xy_csv(const std::vector<std::pair<double, double>>& xy, const std::string& xname, const std::string& yname) {
    std::ostringstream os;
    os << xname << ',' << yname << '\n';
    for (const auto& [x, y] : xy) os << format_number(x) << ',' << format_number(y) << '\n';
    return os.str();
}

bool is_timing(const std::string& name) { return name.size() >= 7 && name.compare(name.size() - 7, 7, "seconds") == 0; }

}  // namespace

CommandOutput cmd_eig(const RunConfig& cfg) {
    const Spectrum s = compute_spectrum(cfg, cfg.count, cfg.method);
    CommandOutput out;
    out.doc = header("eig");
    out.doc["problem"] = problem_json(cfg);
    out.doc["method"] = to_string(s.method);
    Json levels = Json::array();
    std::ostringstream csv;
    csv << "k,re,im,err\n";
    for (const Level& l : s.levels) {
        Json e;
        e["k"] = l.k;
        e["re"] = l.E.real();
        e["im"] = l.E.imag();
        e["err"] = l.err;
        levels.push_back(e);
        csv << l.k << ',' << format_number(l.E.real()) << ',' << format_number(l.E.imag()) << ',' << format_number(l.err)
            << '\n';
    }
    out.doc["levels"] = levels;
    out.csv = csv.str();
    return out;
}

CommandOutput cmd_zeta(const RunConfig& cfg) {
    const std::vector<int> orders = cfg.orders.empty() ? std::vector<int>{1} : cfg.orders;
    for (int n : orders)
        if (n < 1) fail(ErrorKind::Domain, "zeta orders start at 1");
    const std::string method = cfg.method.empty() ? "closed-form" : cfg.method;
    if (method != "closed-form" && method != "eigsum" && method != "both")
        fail(ErrorKind::Domain, "zeta method must be closed-form, eigsum or both");

    std::vector<ZetaValue> values;
    if (method != "eigsum") values = closed_zetas(cfg, orders);
    if (method != "closed-form") {
        const Spectrum s = compute_spectrum(cfg, cfg.count, "shooting");
        for (int n : orders) values.push_back(zeta_with_tail(s, n));
    }

    CommandOutput out;
    out.doc = header("zeta");
    out.doc["problem"] = problem_json(cfg);
    if (method != "closed-form") out.doc["levels"] = cfg.count;
    Json vals = Json::array();
    std::ostringstream csv;
    csv << "order,method,value,err\n";
    for (const ZetaValue& z : values) {
        vals.push_back(zeta_json(z));
        csv << z.order << ',' << to_string(z.method) << ',' << format_number(z.value) << ',' << format_number(z.err)
            << '\n';
    }
    out.doc["values"] = vals;
    out.csv = csv.str();
    return out;
}

CommandOutput cmd_verify(const RunConfig& cfg) {
    SuiteConfig sc;
    sc.suite = cfg.suite;
    if (cfg.sigmas.empty() != cfg.lambdas.empty()) fail(ErrorKind::Domain, "give both --sigma and --lambda, or neither");
    if (cfg.sigmas.empty()) {
        sc.points = default_grid();
    } else {
        for (double s : cfg.sigmas)
            for (double l : cfg.lambdas) sc.points.emplace_back(s, l);
    }
    if (!cfg.orders.empty()) sc.orders = cfg.orders;
    sc.K = cfg.Ks;
    sc.alphas = cfg.alphas;
    sc.source = cfg.source;
    sc.tol = cfg.tol;
    sc.levels = cfg.count;
    sc.threads = cfg.threads;
    const std::vector<SumRuleReport> reports = run_suite(sc);

    CommandOutput out;
    out.doc = header("verify");
    out.doc["suite"] = sc.suite;
    out.doc["source"] = sc.source;
    Json arr = Json::array();
    int failed = 0;
    for (const auto& r : reports) {
        arr.push_back(report_json(r));
        failed += !r.pass;
    }
    out.doc["reports"] = arr;
    out.doc["summary"] = {{"total", reports.size()}, {"passed", reports.size() - failed}, {"failed", failed}};
    out.csv = report_csv(reports);
    out.exit_code = failed > 0 ? kVerificationFailure : kSuccess;
    return out;
}

CommandOutput cmd_report(const RunConfig& cfg) {
    CommandOutput out;
    out.doc = header("report");
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "criterion,title,pass,metric,value\n";
    int failed = 0;
    for (int id : cfg.criteria) {
        if (id < 1 || id > 7) fail(ErrorKind::Domain, "criteria are numbered 1 to 7");
        const CriterionResult r = run_criterion(id, cfg.threads);
        Json row;
        row["criterion"] = r.id;
        row["title"] = r.title;
        row["pass"] = r.pass;
        Json metrics = Json::object();
        for (const auto& [name, value] : r.metrics) {
            // wall-clock numbers would make the document differ between identical runs
            if (is_timing(name)) {
                std::ostringstream os;
                os << "criterion " << r.id << ": " << name << " = " << value;
                out.log.push_back(os.str());
                continue;
            }
            metrics[name] = value;
            csv << r.id << ',' << csv_cell(r.title) << ',' << (r.pass ? "true" : "false") << ',' << csv_cell(name)
                << ',' << format_number(value) << '\n';
        }
        row["metrics"] = metrics;
        row["notes"] = r.notes;
        rows.push_back(row);
        failed += !r.pass;
        std::ostringstream os;
        os << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.seconds << " s)";
        out.log.push_back(os.str());
    }
    out.doc["criteria"] = rows;
    out.doc["summary"] = {{"total", cfg.criteria.size()}, {"failed", failed}};
    out.csv = csv.str();
    out.exit_code = failed > 0 ? kVerificationFailure : kSuccess;

    if (!cfg.plot.empty()) {
        // growth of the quartic spectrum and the shooting mismatch across its first levels
        const ProblemSpec p = ProblemSpec::make(2.0, 0.0, 0.5, Branch::Regular);
        ShootingOptions opt;
        opt.threads = cfg.threads;
        const Spectrum s = solve_spectrum(p, 60, opt);
        std::vector<std::pair<double, double>> loglog, wr;
        for (const Level& l : s.levels) loglog.emplace_back(std::log(l.k + 1.0), std::log(l.E.real()));
        for (int i = 0; i <= 300; ++i) {
            const double E = 0.1 * i + 0.05;
            wr.emplace_back(E, shoot(p, E, opt));
        }
        out.files.emplace_back(cfg.plot + "_spectrum.csv", xy_csv(loglog, "log_k_plus_1", "log_E"));
        out.files.emplace_back(cfg.plot + "_wronskian.csv", xy_csv(wr, "E", "wronskian"));
    }
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Spectral zeta functions of anharmonic oscillators: solvers, closed forms and identity checks"};
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file with the same keys as the flags (subcommand keys nested under its name)");
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("-o,--output", cfg.output, "output file (default: standard output)");
    app.add_option("--threads", cfg.threads, "worker threads (0: SPECTRAL_ZETA_THREADS or all cores)");

    auto problem_opts = [&](CLI::App* sub) {
        sub->add_option("--M", cfg.M, "exponent of x^{2M}");
        sub->add_option("--alpha", cfg.alpha, "coefficient of x^{M-1}");
        sub->add_option("--lambda", cfg.lambda, "angular momentum parameter");
        sub->add_option("--K", cfg.K, "PT problem index (0: radial problem)");
        sub->add_option("--branch", cfg.branch, "boundary branch of the radial problem")
            ->check(CLI::IsMember({"minus", "plus", "regular", "irregular"}));
        sub->add_option("--count", cfg.count, "number of levels");
        sub->add_option("--solver-tol", cfg.solver_tol, "local ODE tolerance");
        sub->configurable();
    };

    CLI::App* eig = app.add_subcommand("eig", "compute the lowest eigenvalues");
    problem_opts(eig);
    eig->add_option("--method", cfg.method, "radial solver")->check(CLI::IsMember({"shooting", "collocation"}));

    CLI::App* zeta = app.add_subcommand("zeta", "evaluate spectral zeta values");
    problem_opts(zeta);
    zeta->add_option("--n", cfg.orders, "orders")->delimiter(',');
    zeta->add_option("--method", cfg.method, "closed-form, eigsum or both")
        ->check(CLI::IsMember({"closed-form", "eigsum", "both"}));

    CLI::App* verify = app.add_subcommand("verify", "run an identity suite over a parameter grid");
    verify->add_option("suite", cfg.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--sigma", cfg.sigmas, "sigma values (grid with --lambda)")->delimiter(',');
    verify->add_option("--lambda", cfg.lambdas, "lambda values")->delimiter(',');
    verify->add_option("--orders", cfg.orders, "sum-rule orders")->delimiter(',');
    verify->add_option("--K", cfg.Ks, "PT indices for the fused suite")->delimiter(',');
    verify->add_option("--alpha", cfg.alphas, "alpha values for the alpha and calg suites")->delimiter(',');
    verify->add_option("--source", cfg.source, "where zeta inputs come from")
        ->check(CLI::IsMember({"closed-form", "eigsum"}));
    verify->add_option("--tol", cfg.tol, "relative tolerance");
    verify->add_option("--count", cfg.count, "levels per spectrum when spectra are needed");
    verify->configurable();

    CLI::App* report = app.add_subcommand("report", "reproduce the acceptance table");
    report->add_option("--criteria", cfg.criteria, "criteria to run")->delimiter(',');
    report->add_option("--plot", cfg.plot, "prefix for plot-data CSV files");
    report->configurable();

    auto diagnose = [&](const std::string& kind, const std::string& message, int code) {
        Json d;
        d["schema_version"] = kSchemaVersion;
        d["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
        err << dump_json(d);
        return code;
    };

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        return diagnose("Config", e.what(), kConfigError);
    }

    try {
        CommandOutput res;
        if (eig->parsed()) {
            cfg.command = "eig";
            res = cmd_eig(cfg);
        } else if (zeta->parsed()) {
            cfg.command = "zeta";
            res = cmd_zeta(cfg);
        } else if (verify->parsed()) {
            cfg.command = "verify";
            res = cmd_verify(cfg);
        } else {
            cfg.command = "report";
            res = cmd_report(cfg);
        }
        for (const auto& line : res.log) err << line << '\n';
        write_output(cfg.output, cfg.format == "csv" ? res.csv : dump_json(res.doc), out);
        for (const auto& [path, content] : res.files) write_output(path, content, out);
        return res.exit_code;
    } catch (const Error& e) {
        return diagnose(to_string(e.kind()), e.what(), is_numerical(e.kind()) ? kNumericalFailure : kConfigError);
    } catch (const std::filesystem::filesystem_error& e) {
        return diagnose("Output", e.what(), kConfigError);
    } catch (const std::exception& e) {
        return diagnose("Internal", e.what(), kNumericalFailure);
    }
}

}  // namespace szeta::cli
