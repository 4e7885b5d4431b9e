#include "json_out.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace szeta::cli {

namespace {

void emit(const Json& j, int indent, int depth, std::string& out) {
    const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* colon = indent > 0 ? ": " : ":";
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += pad;
                out += Json(it.key()).dump();
                out += colon;
                emit(it.value(), indent, depth + 1, out);
            }
            out += close;
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                out += pad;
                emit(v, indent, depth + 1, out);
            }
            out += close;
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_number(v) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string dump_json(const Json& j, int indent) {
    std::string out;
    emit(j, indent, 0, out);
    out += '\n';
    return out;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

void write_output(const std::string& path, const std::string& content, std::ostream& console) {
    if (path.empty() || path == "-") {
        console << content << std::flush;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw fs::filesystem_error("cannot open for writing", tmp, std::make_error_code(std::errc::io_error));
        f << content;
        if (!f.flush()) throw fs::filesystem_error("write failed", tmp, std::make_error_code(std::errc::io_error));
    }
    fs::rename(tmp, target);
}

}  // namespace szeta::cli
