#include "rigidity/report.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace rigidity::report {

namespace {

nlohmann::json envelope(const Report& report) {
    nlohmann::json doc;
    doc["schema"] = kSchema;
    doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    doc["subcommand"] = report.subcommand;
    doc["config"] = report.config;
    doc["entries"] = report.entries;
    doc["violations"] = report.violations;
    doc["expected_deviations"] = report.expected_deviations;
    doc["summary"] = {{"entries", report.entries.size()},
                      {"violations", report.violations.size()},
                      {"expected_deviations", report.expected_deviations.size()}};
    if (report.timing_ms) doc["timing_ms"] = *report.timing_ms;
    return doc;
}

std::string csv_cell(const nlohmann::json& row, const std::string& column) {
    if (!row.contains(column)) return "";
    const auto& v = row.at(column);
    std::string out;
    if (v.is_string())
        out = v.get<std::string>();
    else if (v.is_boolean())
        out = v.get<bool>() ? "true" : "false";
    else
        out = v.dump();
    if (out.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : out) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        quoted += "\"";
        return quoted;
    }
    return out;
}

}  // namespace

std::string render_json(const Report& report) { return envelope(report).dump(2) + "\n"; }

std::string render_csv(const Report& report, const std::vector<std::string>& columns) {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : report.entries) {
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "," : "") << csv_cell(row, columns[i]);
        out << "\n";
    }
    return out.str();
}

std::string render_text(const Report& report) {
    std::ostringstream out;
    out << kToolName << " " << kToolVersion << " — " << report.subcommand << "\n";
    out << "config: " << report.config.dump() << "\n";
    out << "entries: " << report.entries.size() << ", violations: " << report.violations.size()
        << ", expected deviations: " << report.expected_deviations.size() << "\n";
    if (!report.violations.empty()) {
        out << "violations:\n";
        for (const auto& v : report.violations) out << "  " << v.dump() << "\n";
    }
    if (!report.expected_deviations.empty()) {
        out << "expected deviations:\n";
        for (const auto& v : report.expected_deviations) out << "  " << v.dump() << "\n";
    }
    if (report.timing_ms) out << "timing_ms: " << *report.timing_ms << "\n";
    return out.str();
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = cursor.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace rigidity::report
