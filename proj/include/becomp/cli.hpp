#pragma once
// Command-line front end: space specs, check dispatch, reports, sweeps.
#include "becomp/comparison.hpp"
#include "becomp/smms.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace becomp::cli {

inline constexpr const char* kToolVersion = "1.0.0";

struct ProfileSpec {
    std::string type;  ///< poly | fourier | table
    std::vector<double> coeffs;
    std::vector<double> nodes;
    std::vector<double> values;
};

struct CustomSpec {
    ProfileSpec w;
    std::optional<ProfileSpec> f;  ///< absent means f = 0
    double r_max = 0.0;
    bool closed = false;
};

struct SpaceSpec {
    std::string name;
    int n = 3;
    std::map<std::string, double> params;
    std::optional<CustomSpec> custom;
};

/// Parses a SpaceSpec; errors are SpecError naming the offending field.
SpaceSpec space_spec_from_json(const nlohmann::json& j);
/// Parses either a full SpaceSpec or a bare {w, f, r_max, closed} object.
SpaceSpec custom_file_spec(const nlohmann::json& j, int n);
nlohmann::json to_json(const SpaceSpec& spec);

smms::WarpedSMMS build_space(const SpaceSpec& spec);
/// The spec with catalog defaults filled in, as echoed in reports.
SpaceSpec resolved_spec(const SpaceSpec& spec, const smms::WarpedSMMS& s);

/// Check-level inputs; unset values are derived from the space.
struct CheckParams {
    std::optional<double> H, k, a, delta, alpha, r, R, l;
    std::size_t grid = 256;
    smms::RhoMode mode = smms::RhoMode::Radial;
    comparison::InequalityTolerance tol{};
};

struct CheckResult {
    std::string theorem_id;
    nlohmann::json json;  ///< serialized report without wall time and csv path
    double min_margin = 0.0;
    bool pass = false;
    comparison::Verdict verdict = comparison::Verdict::Fail;
    double epsilon = 0.0;  ///< CHENG and DOUBLING only; NaN otherwise
    std::string csv_header;
    std::vector<std::vector<double>> csv_rows;
    double wall_time_ms = 0.0;
};

/// Comparison ids plus MYERS, CHENG and EIGEN.
const std::vector<std::string>& theorem_ids();

CheckResult run_check(const smms::WarpedSMMS& s, const std::string& theorem, const CheckParams& p);

std::string grid_csv(const CheckResult& r);
/// 0 all PASS (N/A allowed), 1 any FAIL, 3 all N/A.
int exit_code(const std::vector<CheckResult>& results);
const char* overall_verdict(const std::vector<CheckResult>& results);

nlohmann::json run_report(const SpaceSpec& echo, const std::vector<CheckResult>& results,
                          const std::vector<std::string>& csv_paths);

std::string list_spaces_text();
nlohmann::json list_spaces_json();

/// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace becomp::cli
