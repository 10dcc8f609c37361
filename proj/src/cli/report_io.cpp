#include "becomp/cli.hpp"

#include <cstdio>
#include <sstream>

namespace becomp::cli {

using nlohmann::json;
using comparison::Verdict;

std::string grid_csv(const CheckResult& r) {
    std::string out = r.csv_header + "\n";
    char buf[40];
    for (const auto& row : r.csv_rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            if (i) out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

int exit_code(const std::vector<CheckResult>& results) {
    bool all_na = !results.empty();
    for (const auto& r : results) {
        if (r.verdict == Verdict::Fail) return 1;
        if (r.verdict != Verdict::NotApplicable) all_na = false;
    }
    return all_na ? 3 : 0;
}

const char* overall_verdict(const std::vector<CheckResult>& results) {
    switch (exit_code(results)) {
        case 0: return comparison::to_string(Verdict::Pass);
        case 3: return comparison::to_string(Verdict::NotApplicable);
        default: return comparison::to_string(Verdict::Fail);
    }
}

json run_report(const SpaceSpec& echo, const std::vector<CheckResult>& results,
                const std::vector<std::string>& csv_paths) {
    json checks = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        json c = results[i].json;
        c["wall_time_ms"] = results[i].wall_time_ms;
        if (i < csv_paths.size() && !csv_paths[i].empty()) c["grid_csv_path"] = csv_paths[i];
        checks.push_back(std::move(c));
    }
    return json{{"tool_version", kToolVersion}, {"spec", to_json(echo)}, {"checks", checks},
                {"verdict", overall_verdict(results)}};
}

std::string list_spaces_text() {
    std::ostringstream os;
    for (const auto& e : smms::catalog()) {
        os << e.name << "  " << e.description << "\n";
        if (e.name == "custom") {
            os << "    --custom FILE.json  {\"w\": profile, \"f\": profile, \"r_max\": real, \"closed\": bool}\n"
               << "    profile: {\"type\": \"poly\"|\"fourier\", \"coeffs\": [...]} or "
                  "{\"type\": \"table\", \"nodes\": [...], \"values\": [...]}\n";
        }
        for (const auto& p : e.params)
            os << "    " << p.name << " = " << p.default_value << " [" << p.unit << "]  " << p.description << "\n";
    }
    return os.str();
}

json list_spaces_json() {
    json arr = json::array();
    for (const auto& e : smms::catalog()) {
        json params = json::array();
        for (const auto& p : e.params)
            params.push_back({{"name", p.name}, {"default", p.default_value}, {"unit", p.unit},
                              {"description", p.description}});
        arr.push_back({{"name", e.name}, {"description", e.description}, {"params", params}});
    }
    return arr;
}

}  // namespace becomp::cli
