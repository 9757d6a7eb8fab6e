#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heis {

inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// One verification check: residual against tolerance plus the quantities
/// that produced it. `ref` names the identity or estimate being checked, or
/// "plumbing" for infrastructure checks.
struct CheckRecord {
    std::string suite;
    std::string name;
    std::string ref;
    std::vector<std::pair<std::string, double>> values;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct SuiteSummary {
    std::string name;
    int total = 0;
    int passed = 0;
};

struct Report {
    std::string tool = "heis";
    std::string version = "1.0.0";
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<CheckRecord> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    std::vector<SuiteSummary> summaries() const {
        std::vector<SuiteSummary> out;
        for (const auto& c : checks) {
            SuiteSummary* s = nullptr;
            for (auto& existing : out)
                if (existing.name == c.suite) s = &existing;
            if (!s) {
                out.push_back({c.suite, 0, 0});
                s = &out.back();
            }
            ++s->total;
            if (c.pass) ++s->passed;
        }
        return out;
    }
};

namespace detail {

inline void json_escape_to(std::string& out, const std::string& s) {
    for (const char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
}

inline void json_string_to(std::string& out, const std::string& s) {
    out += '"';
    json_escape_to(out, s);
    out += '"';
}

inline void json_number_to(std::string& out, double x) {
    if (std::isfinite(x)) {
        out += format_double(x);
    } else {
        json_string_to(out, format_double(x));
    }
}

}  // namespace detail

/// Single-document JSON rendering of the report. Field order is fixed and
/// floating-point values carry 17 significant digits, so equal reports render
/// byte-identically.
inline std::string json_string(const Report& report) {
    using detail::json_number_to;
    using detail::json_string_to;
    std::string out;
    out += "{\n  \"tool\": ";
    json_string_to(out, report.tool);
    out += ",\n  \"version\": ";
    json_string_to(out, report.version);
    out += ",\n  \"config\": {";
    for (std::size_t i = 0; i < report.config.size(); ++i) {
        if (i) out += ", ";
        json_string_to(out, report.config[i].first);
        out += ": ";
        json_string_to(out, report.config[i].second);
    }
    out += "},\n  \"summary\": {";
    int total = 0, passed = 0;
    for (const auto& c : report.checks) {
        ++total;
        if (c.pass) ++passed;
    }
    out += "\"total\": " + std::to_string(total);
    out += ", \"passed\": " + std::to_string(passed);
    out += ", \"failed\": " + std::to_string(total - passed);
    out += ", \"suites\": [";
    const auto sums = report.summaries();
    for (std::size_t i = 0; i < sums.size(); ++i) {
        if (i) out += ", ";
        out += "{\"name\": ";
        json_string_to(out, sums[i].name);
        out += ", \"total\": " + std::to_string(sums[i].total);
        out += ", \"passed\": " + std::to_string(sums[i].passed);
        out += "}";
    }
    out += "]},\n  \"checks\": [";
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const CheckRecord& c = report.checks[i];
        out += i ? ",\n    {" : "\n    {";
        out += "\"suite\": ";
        json_string_to(out, c.suite);
        out += ", \"name\": ";
        json_string_to(out, c.name);
        out += ", \"ref\": ";
        json_string_to(out, c.ref);
        out += ", \"residual\": ";
        json_number_to(out, c.residual);
        out += ", \"tolerance\": ";
        json_number_to(out, c.tolerance);
        out += ", \"pass\": ";
        out += c.pass ? "true" : "false";
        out += ", \"values\": {";
        for (std::size_t v = 0; v < c.values.size(); ++v) {
            if (v) out += ", ";
            json_string_to(out, c.values[v].first);
            out += ": ";
            json_number_to(out, c.values[v].second);
        }
        out += "}";
        if (!c.note.empty()) {
            out += ", \"note\": ";
            json_string_to(out, c.note);
        }
        out += "}";
    }
    out += "\n  ]\n}\n";
    return out;
}

/// One row per check: suite, check, ref, residual, tolerance, pass.
inline std::string csv_string(const Report& report) {
    auto field = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string quoted = "\"";
        for (const char ch : s) {
            if (ch == '"') quoted += '"';
            quoted += ch;
        }
        quoted += '"';
        return quoted;
    };
    std::string out = "suite,check,ref,residual,tolerance,pass\n";
    for (const auto& c : report.checks) {
        out += field(c.suite) + ',' + field(c.name) + ',' + field(c.ref) + ',';
        out += format_double(c.residual) + ',' + format_double(c.tolerance) + ',';
        out += c.pass ? "true" : "false";
        out += '\n';
    }
    return out;
}

/// Writes the full content to a sibling temporary file, then renames it over
/// the target, so readers never observe a partial file.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace heis
