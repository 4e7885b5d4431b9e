#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "doctest.h"
#include "json_out.hpp"
#include "spectral_zeta/eigensolver.hpp"
#include "spectral_zeta/problem.hpp"
#include "spectral_zeta/zeta_numeric.hpp"

using namespace szeta;
using namespace szeta::cli;

namespace {

constexpr double pi = std::numbers::pi;

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "spectral-zeta");
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("szeta_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// last non-empty JSON object on the diagnostic stream
Json diagnostic(const std::string& err) {
    const auto at = err.rfind("{\n  \"schema_version\"");
    REQUIRE(at != std::string::npos);
    return Json::parse(err.substr(at));
}

double cubic_zp2() {
    return 8.0 * (std::sqrt(5.0) - 1.0) * std::pow(pi, 4) /
           (std::pow(5.0, 17.0 / 5.0) * std::pow(std::tgamma(0.8), 4) * std::pow(std::tgamma(0.6), 2));
}

}  // namespace

TEST_CASE("an empty request gives an empty spectrum") {
    RunConfig cfg;
    cfg.M = 2.0;
    cfg.lambda = 0.5;
    cfg.count = 0;
    const CommandOutput o = cmd_eig(cfg);
    CHECK(o.exit_code == kSuccess);
    CHECK(o.doc["levels"].is_array());
    CHECK(o.doc["levels"].empty());
    CHECK(o.csv == "k,re,im,err\n");

    const Run r = run({"eig", "--M", "2", "--lambda", "0.5", "--alpha", "0", "--count", "0"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["command"] == "eig");
    CHECK(j["levels"].empty());
    CHECK(j["problem"]["M"] == 2.0);
}

TEST_CASE("eig levels agree across solvers") {
    const Json a = Json::parse(run({"eig", "--count", "3"}).out);
    const Json b = Json::parse(run({"eig", "--count", "3", "--method", "collocation"}).out);
    REQUIRE(a["levels"].size() == 3);
    REQUIRE(b["levels"].size() == 3);
    CHECK(a["method"] == "shooting");
    CHECK(b["method"] == "collocation");
    for (int k = 0; k < 3; ++k) {
        CHECK(a["levels"][k]["k"] == k);
        CHECK(a["levels"][k]["im"] == 0.0);
        const double ea = a["levels"][k]["re"], eb = b["levels"][k]["re"];
        CHECK(std::fabs(ea - eb) <= 1e-8 * ea);
    }
}

TEST_CASE("JSON output is byte-stable and round-trips") {
    const std::vector<std::string> args = {"zeta", "--M", "3", "--n", "1,2", "--method", "both", "--count", "30"};
    const Run a = run(args);
    const Run b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    // parsing and re-emitting reproduces every digit
    CHECK(dump_json(Json::parse(a.out)) == a.out);

    const Json j = Json::parse(a.out);
    REQUIRE(j["values"].size() == 4);
    CHECK(j["values"][0]["method"] == "ClosedForm");
    CHECK(j["values"][2]["method"] == "EigSum");
    for (int n = 0; n < 2; ++n) {
        const double c = j["values"][n]["value"], e = j["values"][n + 2]["value"];
        CHECK(std::fabs(c - e) <= 1e-5 * c);
    }
}

TEST_CASE("the cubic constant from the zeta command") {
    const Run r = run({"zeta", "--M", "1.5", "--branch", "plus", "--n", "2", "--method", "closed-form"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    REQUIRE(j["values"].size() == 1);
    const double v = j["values"][0]["value"];
    CHECK(j["values"][0]["order"] == 2);
    CHECK(std::fabs(v - cubic_zp2()) <= 1e-12 * cubic_zp2());

    // and from the spectrum itself
    const Spectrum s = solve_spectrum(ProblemSpec::make(1.5, 0.0, 0.5, Branch::Irregular), 60);
    CHECK(std::fabs(zeta_with_tail(s, 2).value - v) <= 1e-6 * v);
}

TEST_CASE("PT zeta values from the fused rules") {
    const Run r = run({"zeta", "--K", "1", "--n", "1,2", "--method", "both", "--count", "40"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["problem"]["type"] == "pt");
    REQUIRE(j["values"].size() == 4);
    CHECK(j["values"][0]["method"] == "SumRule");
    for (int n = 0; n < 2; ++n) {
        const double c = j["values"][n]["value"], e = j["values"][n + 2]["value"];
        CHECK(std::fabs(c - e) <= 1e-4 * c);
    }
}

TEST_CASE("verify passes on the radial example and fails on an impossible tolerance") {
    const Run r =
        run({"verify", "radial", "--sigma", "0.3", "--lambda", "0.4", "--orders", "1,2,3", "--source", "closed-form"});
    CHECK(r.code == kSuccess);
    const Json j = Json::parse(r.out);
    CHECK(j["summary"]["total"] == 3);
    CHECK(j["summary"]["failed"] == 0);
    for (const auto& rep : j["reports"]) CHECK(rep["pass"] == true);

    const Run bad = run({"verify", "radial", "--sigma", "0.3", "--lambda", "0.4", "--orders", "1", "--tol", "1e-30"});
    CHECK(bad.code == kVerificationFailure);
    CHECK(Json::parse(bad.out)["summary"]["failed"] == 1);

    // grids are Cartesian products
    const Run grid = run({"verify", "radial", "--sigma", "0.3,0.4", "--lambda", "0.2,0.4,0.6", "--orders", "1"});
    CHECK(Json::parse(grid.out)["summary"]["total"] == 6);
}

TEST_CASE("exit codes and diagnostics") {
    const Run unknown = run({"eig", "--frobnicate"});
    CHECK(unknown.code == kConfigError);
    CHECK(diagnostic(unknown.err)["error"]["kind"] == "Config");
    CHECK(unknown.out.empty());

    CHECK(run({}).code == kConfigError);
    CHECK(run({"verify", "nosuchsuite"}).code == kConfigError);
    CHECK(run({"eig", "--format", "xml"}).code == kConfigError);

    const Run domain = run({"eig", "--M", "0.5", "--count", "2"});
    CHECK(domain.code == kConfigError);
    const Json d = diagnostic(domain.err);
    CHECK(d["schema_version"] == kSchemaVersion);
    CHECK(d["error"]["kind"] == "DomainError");
    CHECK(d["error"]["exit_code"] == kConfigError);

    CHECK(run({"verify", "radial", "--sigma", "0.3"}).code == kConfigError);
    CHECK(run({"zeta", "--n", "3", "--method", "closed-form"}).code == kConfigError);

    const Run numeric = run({"eig", "--count", "2", "--solver-tol", "1e-300"});
    CHECK(numeric.code == kNumericalFailure);
    CHECK(diagnostic(numeric.err)["error"]["exit_code"] == kNumericalFailure);

    CHECK(run({"--help"}).code == kSuccess);
}

TEST_CASE("a config file matches the flags") {
    const auto path = temp_path("config.json");
    {
        std::ofstream f(path);
        f << R"({"format": "json", "zeta": {"M": 3, "n": [1, 2], "method": "closed-form", "lambda": 0.3}})";
    }
    const Run from_file = run({"--config", path.string()});
    const Run from_flags = run({"zeta", "--M", "3", "--n", "1,2", "--method", "closed-form", "--lambda", "0.3"});
    REQUIRE(from_file.code == 0);
    CHECK(from_file.out == from_flags.out);

    // flags override the file
    const Run over = run({"--config", path.string(), "zeta", "--lambda", "0.4"});
    CHECK(Json::parse(over.out)["problem"]["lambda"] == 0.4);

    {
        std::ofstream f(path);
        f << "{ not json";
    }
    CHECK(run({"--config", path.string()}).code == kConfigError);
    std::filesystem::remove(path);
}

TEST_CASE("CSV projection and output files") {
    const Run csv = run({"eig", "--count", "2", "--format", "csv"});
    REQUIRE(csv.code == 0);
    std::istringstream lines(csv.out);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "k,re,im,err");
    CHECK(rows[1].rfind("0,3.79967302", 0) == 0);

    const auto path = temp_path("out.json");
    const Run to_file = run({"zeta", "--n", "1", "-o", path.string()});
    CHECK(to_file.code == 0);
    CHECK(to_file.out.empty());
    CHECK(slurp(path) == run({"zeta", "--n", "1"}).out);
    std::filesystem::remove(path);

    const Run nowhere = run({"zeta", "--n", "1", "-o", "/nonexistent-dir/x/out.json"});
    CHECK(nowhere.code == kConfigError);
}

TEST_CASE("report writes the table and plot data") {
    const auto prefix = temp_path("plot").string();
    const Run r = run({"report", "--criteria", "2", "--plot", prefix});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    REQUIRE(j["criteria"].size() == 1);
    CHECK(j["criteria"][0]["pass"] == true);
    CHECK(r.err.find("criterion 2: PASS") != std::string::npos);

    const std::string spectrum = slurp(prefix + "_spectrum.csv");
    const std::string wr = slurp(prefix + "_wronskian.csv");
    CHECK(spectrum.rfind("log_k_plus_1,log_E\n", 0) == 0);
    CHECK(wr.rfind("E,wronskian\n", 0) == 0);
    // log E_k grows like (2M/(M+1)) log k for the quartic
    std::istringstream in(spectrum);
    std::string line;
    std::getline(in, line);
    std::vector<std::pair<double, double>> xy;
    while (std::getline(in, line)) {
        const auto c = line.find(',');
        xy.emplace_back(std::stod(line.substr(0, c)), std::stod(line.substr(c + 1)));
    }
    REQUIRE(xy.size() == 60);
    const auto& [x1, y1] = xy[40];
    const auto& [x2, y2] = xy[59];
    CHECK((y2 - y1) / (x2 - x1) == doctest::Approx(4.0 / 3.0).epsilon(0.01));
    std::filesystem::remove(prefix + "_spectrum.csv");
    std::filesystem::remove(prefix + "_wronskian.csv");
}

TEST_CASE("the installed binary") {
    const char* exe = std::getenv("SZETA_CLI");
    if (!exe) {
        MESSAGE("SZETA_CLI not set; binary checks skipped");
        return;
    }
    auto sh = [&](const std::string& args, std::string& out) {
        const std::string cmd = std::string(exe) + " " + args + " 2>/dev/null";
        FILE* p = popen(cmd.c_str(), "r");
        REQUIRE(p != nullptr);
        char buf[4096];
        out.clear();
        while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
        const int status = pclose(p);
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    std::string out1, out2;
    CHECK(sh("eig --M 2 --lambda 0.5 --alpha 0 --count 0", out1) == 0);
    CHECK(Json::parse(out1)["levels"].empty());
    CHECK(sh("eig --count 4", out1) == 0);
    CHECK(sh("eig --count 4", out2) == 0);
    CHECK(out1 == out2);
    CHECK(out1 == run({"eig", "--count", "4"}).out);
    CHECK(sh("eig --M 0.5", out1) == kConfigError);
    CHECK(sh("verify radial --sigma 0.3 --lambda 0.4 --orders 1 --tol 1e-30", out1) == kVerificationFailure);
    CHECK(sh("eig --count 2 --solver-tol 1e-300", out1) == kNumericalFailure);
}
