#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ulamkac/verify.hpp"

namespace ulamkac {

/// Typed result of one CLI command.  Wall time is reported on stderr only;
/// the serialized payload must be byte-identical across reruns with the
/// same flags and seed.
struct RunReport {
    std::string command;
    nlohmann::json parameters;
    nlohmann::json outputs;
    std::vector<CheckResult> checks;
    double wall_seconds = 0;
};

inline constexpr int kReportSchemaVersion = 1;

inline nlohmann::json to_json(const RunReport& report) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["command"] = report.command;
    j["parameters"] = report.parameters;
    j["outputs"] = report.outputs;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"expected", c.expected},
                          {"observed", c.observed},
                          {"pass", c.pass}});
    }
    j["checks"] = checks;
    return j;
}

namespace detail {

inline std::string csv_cell(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char ch : raw) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

inline std::string csv_value(const nlohmann::json& v) {
    if (v.is_string()) return csv_cell(v.get<std::string>());
    return csv_cell(v.dump());
}

}  // namespace detail

/// CSV rendering: a schema_version line, then the tabular part of the
/// payload (outputs.table if present), then any checks.
inline std::string to_csv(const RunReport& report) {
    std::string out = "schema_version," + std::to_string(kReportSchemaVersion) + "\n";
    out += "command," + detail::csv_cell(report.command) + "\n";
    if (report.outputs.contains("table")) {
        const auto& table = report.outputs.at("table");
        std::string header;
        for (const auto& col : table.at("columns")) {
            if (!header.empty()) header += ',';
            header += detail::csv_value(col);
        }
        out += header + "\n";
        for (const auto& row : table.at("rows")) {
            std::string line;
            for (const auto& cell : row) {
                if (!line.empty()) line += ',';
                line += detail::csv_value(cell);
            }
            out += line + "\n";
        }
    }
    if (!report.checks.empty()) {
        out += "check,pass,expected,observed\n";
        for (const auto& c : report.checks) {
            out += detail::csv_cell(c.name) + "," + (c.pass ? "true" : "false") + "," +
                   detail::csv_cell(c.expected) + "," + detail::csv_cell(c.observed) + "\n";
        }
    }
    return out;
}

inline std::string render(const RunReport& report, const std::string& format) {
    if (format == "json") return to_json(report).dump(2) + "\n";
    if (format == "csv") return to_csv(report);
    throw std::invalid_argument("render: unknown format '" + format + "'");
}

}  // namespace ulamkac
