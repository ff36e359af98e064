#ifndef RIGIDITY_REPORT_HPP
#define RIGIDITY_REPORT_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rigidity::report {

inline constexpr const char* kSchema = "rigidity-lab/1";
inline constexpr const char* kToolName = "rigidity-lab";
inline constexpr const char* kToolVersion = "1.0.0";

// Reports are byte-identical for identical (config, seed) at any parallelism
// degree; timing is therefore opt-in and excluded from that contract.
struct Report {
    std::string subcommand;
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json entries = nlohmann::json::array();
    nlohmann::json violations = nlohmann::json::array();
    nlohmann::json expected_deviations = nlohmann::json::array();
    std::optional<double> timing_ms;
};

std::string render_json(const Report& report);
// Fixed column order per subcommand; missing fields render empty.
std::string render_csv(const Report& report, const std::vector<std::string>& columns);
std::string render_text(const Report& report);

// Runs fn(i) for i in [0, count) on the given number of threads and keeps
// results in index order, so the merge is schedule-independent.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace rigidity::report

#endif
