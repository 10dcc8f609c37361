#include <doctest.h>

#include "becomp/cli.hpp"
#include "becomp/error.hpp"
#include "../support/schema.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace becomp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "becomp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "becomp_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

json report_schema() { return load_json(fs::path(BECOMP_SOURCE_DIR) / "schemas" / "report.schema.json"); }

// Report without timings, for determinism comparisons.
json strip_times(json report) {
    for (auto& c : report["checks"]) {
        c.erase("wall_time_ms");
        c.erase("grid_csv_path");
    }
    return report;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("list-spaces: text, json and usage errors") {
    const Run text = run_cli({"list-spaces"});
    CHECK(text.code == 0);
    for (const char* name : {"euclidean", "sphere", "hyperbolic", "gaussian_soliton", "linear_drift",
                             "perturbed_sphere", "custom"})
        CHECK(text.out.find(name) != std::string::npos);
    CHECK(run_cli({"list-spaces"}).out == text.out);

    const Run js = run_cli({"list-spaces", "--json"});
    REQUIRE(js.code == 0);
    const json arr = json::parse(js.out);
    REQUIRE(arr.is_array());
    std::vector<std::string> names;
    for (const auto& e : arr) names.push_back(e["name"]);
    CHECK(names == std::vector<std::string>{"euclidean", "sphere", "hyperbolic", "gaussian_soliton", "linear_drift",
                                            "perturbed_sphere", "custom"});

    CHECK(run_cli({"list-spaces", "--bogus"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
}

TEST_CASE("check: the three documented invocations") {
    const Run a = run_cli({"check", "--space", "sphere", "--n", "3", "--param", "H=1", "--theorem", "MC_DRIFT", "--a",
                           "0"});
    CHECK(a.code == 0);

    const fs::path out = scratch("vol_b.json");
    const Run b = run_cli({"check", "--space", "euclidean", "--n", "3", "--theorem", "VOL_B", "--H", "1", "--r", "0.25",
                           "--R", "0.5", "--out", out.string()});
    CHECK(b.code == 0);
    const json rep = load_json(out);
    CHECK(rep["verdict"] == "PASS");
    REQUIRE(rep["checks"].size() == 1);
    CHECK(rep["checks"][0]["min_margin"].get<double>() >= 0.0);

    const Run c = run_cli({"check", "--space", "sphere", "--theorem", "VOL_A", "--H", "1", "--R", "1.0"});
    CHECK(c.code == 2);
    CHECK(c.err.find("R exceeds pi/(4 sqrt(H))") != std::string::npos);
}

TEST_CASE("check: report validates against the schema and carries units") {
    const fs::path out = scratch("multi.json");
    const Run r = run_cli({"check", "--space", "perturbed_sphere", "--param", "eps=0.01", "--param", "omega=2",
                           "--theorem", "MC_ROUGH,MYERS,EIGEN,AREA_B", "--out", out.string()});
    CHECK(r.code == 0);
    const json rep = load_json(out);
    const auto errors = testing::validate_schema(report_schema(), rep);
    for (const auto& e : errors) MESSAGE(e);
    CHECK(errors.empty());
    REQUIRE(rep["checks"].size() == 4);
    for (const auto& c : rep["checks"]) {
        for (const auto& [key, value] : c["params"].items()) CHECK(c["units"].contains(key));
        CHECK(c["units"]["H"] == "1/length^2");
    }
    CHECK(rep["checks"][0]["units"]["l"] == "1/length");
    CHECK(rep["checks"][1]["margin_unit"] == "length");
    CHECK(rep["spec"]["params"]["eps"] == 0.01);
    CHECK(rep["spec"]["params"].contains("fcos"));

    // A bad report is rejected by the validator.
    json broken = rep;
    broken["checks"][0].erase("pass");
    broken["verdict"] = "MAYBE";
    CHECK(testing::validate_schema(report_schema(), broken).size() == 2);
}

TEST_CASE("check: grid csv header is exact and matches the report grid") {
    const fs::path out = scratch("grid.json");
    const Run r = run_cli({"check", "--space", "euclidean", "--theorem", "MC_DRIFT", "--H", "0", "--grid", "16", "--out",
                           out.string()});
    REQUIRE(r.code == 0);
    const json rep = load_json(out);
    const std::string path = rep["checks"][0]["grid_csv_path"];
    const std::string text = slurp(path);
    CHECK(text.rfind("r,lhs,rhs,margin\n", 0) == 0);
    const auto rows = csv_rows(text);
    CHECK(rows.size() == 1 + static_cast<std::size_t>(rep["checks"][0]["params"]["grid_points"].get<double>()));

    const Run csv = run_cli({"check", "--space", "euclidean", "--theorem", "MC_DRIFT", "--grid", "16", "--format",
                             "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out == text);

    const Run eig = run_cli({"check", "--space", "euclidean", "--theorem", "EIGEN", "--R", "1", "--format", "csv"});
    CHECK(eig.code == 0);
    CHECK(eig.out.rfind("r,phi\n", 0) == 0);

    CHECK(run_cli({"check", "--space", "sphere", "--theorem", "MYERS", "--format", "csv"}).code == 2);
}

TEST_CASE("check: exit codes for FAIL, NOT-APPLICABLE and malformed input") {
    // l forced to 0 on a space with rho > 0: the area ratio grows.
    CHECK(run_cli({"check", "--space", "euclidean", "--theorem", "AREA_B", "--H", "1", "--l", "0"}).code == 1);
    // l above the doubling threshold.
    CHECK(run_cli({"check", "--space", "perturbed_sphere", "--param", "eps=0.1", "--theorem", "DOUBLING"}).code == 3);
    // N/A mixed with PASS is a pass.
    CHECK(run_cli({"check", "--space", "perturbed_sphere", "--param", "eps=0.1", "--theorem", "DOUBLING,MYERS"}).code ==
          0);

    const Run unknown = run_cli({"check", "--space", "torus", "--theorem", "MC_DRIFT"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("torus") != std::string::npos);
    const Run bad_param = run_cli({"check", "--space", "sphere", "--param", "Q=1", "--theorem", "MC_DRIFT"});
    CHECK(bad_param.code == 2);
    CHECK(bad_param.err.find("'Q'") != std::string::npos);
    const Run bad_value = run_cli({"check", "--space", "sphere", "--param", "H=abc", "--theorem", "MC_DRIFT"});
    CHECK(bad_value.code == 2);
    CHECK(bad_value.err.find("--param H") != std::string::npos);
    const Run bad_theorem = run_cli({"check", "--space", "sphere", "--theorem", "NOPE"});
    CHECK(bad_theorem.code == 2);
    CHECK(bad_theorem.err.find("--theorem") != std::string::npos);
    CHECK(run_cli({"check", "--space", "sphere", "--theorem", "MC_DRIFT", "--H", "x"}).code == 2);
    CHECK(run_cli({"check", "--space", "sphere", "--theorem", "MC_DRIFT", "--mode", "sideways"}).code == 2);
    CHECK(run_cli({"check", "--space", "sphere", "--theorem", "MC_DRIFT", "--n", "1"}).code == 2);
    CHECK(run_cli({"check", "--theorem", "MC_DRIFT"}).code == 2);
    const Run low_k = run_cli({"check", "--space", "euclidean", "--param", "fcos=0.2", "--theorem", "VOL_A", "--k",
                               "0.1", "--H", "0", "--r", "0.5", "--R", "1"});
    CHECK(low_k.code == 2);
    CHECK(low_k.err.find("k = 0.1") != std::string::npos);
}

TEST_CASE("check: custom profiles") {
    const fs::path spec = scratch("custom_flat.json");
    std::ofstream(spec) << R"({"w": {"type": "poly", "coeffs": [0, 1]},
                               "f": {"type": "poly", "coeffs": [0, -0.5]}, "r_max": 2})";
    const fs::path out = scratch("custom_flat_report.json");
    const Run r = run_cli({"check", "--custom", spec.string(), "--theorem", "MC_DRIFT,VOL_B", "--H", "0", "--out",
                           out.string()});
    CHECK(r.code == 0);
    const json rep = load_json(out);
    CHECK(rep["spec"]["name"] == "custom");
    CHECK(rep["spec"]["custom"]["r_max"] == 2.0);
    CHECK(std::abs(rep["checks"][0]["min_margin"].get<double>()) <= 1e-8);
    CHECK(rep["checks"][0]["params"]["a"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));

    const fs::path short_table = scratch("custom_short.json");
    std::ofstream(short_table) << R"({"w": {"type": "table", "nodes": [0, 1, 2], "values": [0, 1, 2]}, "r_max": 2})";
    const Run t = run_cli({"check", "--custom", short_table.string(), "--theorem", "MC_DRIFT"});
    CHECK(t.code == 2);
    CHECK(t.err.find("custom.w.nodes") != std::string::npos);

    const fs::path bad_type = scratch("custom_bad.json");
    std::ofstream(bad_type) << R"({"w": {"type": "spline", "coeffs": [0, 1]}, "r_max": 2})";
    const Run u = run_cli({"check", "--custom", bad_type.string(), "--theorem", "MC_DRIFT"});
    CHECK(u.code == 2);
    CHECK(u.err.find("custom.w.type") != std::string::npos);

    CHECK(run_cli({"check", "--custom", scratch("missing.json").string(), "--theorem", "MC_DRIFT"}).code == 2);
}

TEST_CASE("spec json: parse errors name the field, serialization round-trips") {
    CHECK_THROWS_WITH_AS(cli::space_spec_from_json(json{{"n", 3}}), doctest::Contains("spec.name"), SpecError);
    CHECK_THROWS_WITH_AS(cli::space_spec_from_json(json{{"name", "sphere"}, {"n", 1.5}}),
                         doctest::Contains("spec.n"), SpecError);
    CHECK_THROWS_WITH_AS(cli::space_spec_from_json(json{{"name", "custom"}, {"n", 3}}),
                         doctest::Contains("spec.custom"), SpecError);
    CHECK_THROWS_WITH_AS(
        cli::space_spec_from_json(json{{"name", "sphere"}, {"n", 3}, {"params", {{"H", "one"}}}}),
        doctest::Contains("spec.params.H"), SpecError);
    CHECK_THROWS_WITH_AS(cli::space_spec_from_json(json{{"name", "sphere"}, {"n", 3}, {"colour", 1}}),
                         doctest::Contains("spec.colour"), SpecError);

    cli::SpaceSpec s;
    s.name = "custom";
    s.n = 4;
    s.custom = cli::CustomSpec{{"table", {}, {0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5}, {0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5}},
                               cli::ProfileSpec{"fourier", {0.1, 0.2, -0.3}, {}, {}},
                               3.5,
                               false};
    const json j = cli::to_json(s);
    CHECK(cli::to_json(cli::space_spec_from_json(j)) == j);
    CHECK(cli::to_json(cli::space_spec_from_json(json::parse(j.dump()))) == j);
}

TEST_CASE("round trip: the echoed spec reproduces bit-identical results") {
    const std::vector<std::vector<std::string>> runs = {
        {"--space", "perturbed_sphere", "--n", "4", "--param", "eps=0.0123456789", "--param", "omega=2", "--param",
         "fcos=0.03", "--theorem", "MC_ROUGH,MC_BOUNDED_F_INNER,MYERS,DOUBLING"},
        {"--space", "hyperbolic", "--param", "fsin=0.1", "--theorem", "VOL_ABS_NEGH,VOL_A", "--H", "-1", "--R", "1.3"},
    };
    int i = 0;
    for (const auto& extra : runs) {
        const fs::path first = scratch("rt_first_" + std::to_string(i) + ".json");
        const fs::path echo = scratch("rt_echo_" + std::to_string(i) + ".json");
        const fs::path second = scratch("rt_second_" + std::to_string(i) + ".json");
        ++i;
        std::vector<std::string> args{"check"};
        args.insert(args.end(), extra.begin(), extra.end());
        args.insert(args.end(), {"--out", first.string()});
        const Run a = run_cli(args);
        REQUIRE(a.code != 2);
        const json rep1 = load_json(first);
        std::ofstream(echo) << rep1["spec"].dump();

        // Same flags, but the space comes only from the echoed spec.
        std::vector<std::string> args2{"check", "--custom", echo.string()};
        for (std::size_t k = 0; k < extra.size(); ++k) {
            if (extra[k] == "--space" || extra[k] == "--param" || extra[k] == "--n") {
                ++k;
                continue;
            }
            args2.push_back(extra[k]);
        }
        args2.insert(args2.end(), {"--out", second.string()});
        const Run b = run_cli(args2);
        CHECK(b.code == a.code);
        const json rep2 = load_json(second);
        CHECK(strip_times(rep1).dump() == strip_times(rep2).dump());
        for (std::size_t c = 0; c < rep1["checks"].size(); ++c) {
            if (!rep1["checks"][c].contains("grid_csv_path")) continue;
            CHECK(slurp(rep1["checks"][c]["grid_csv_path"].get<std::string>()) ==
                  slurp(rep2["checks"][c]["grid_csv_path"].get<std::string>()));
        }
    }
}

TEST_CASE("sweep: summary columns, epsilon trend and empty ranges") {
    const Run cheng = run_cli({"sweep", "--space", "euclidean", "--param", "fcos=0.001", "--param", "fcos_freq=2",
                               "--theorem", "CHENG", "--R", "1", "--sweep", "delta=0.05:0.5:10"});
    CHECK(cheng.code == 0);
    const auto rows = csv_rows(cheng.out);
    REQUIRE(rows.size() == 11);
    CHECK(rows[0] == std::vector<std::string>{"delta", "min_margin", "verdict", "epsilon"});
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][3]) >= std::stod(rows[i - 1][3]));

    const Run dbl = run_cli({"sweep", "--space", "perturbed_sphere", "--theorem", "DOUBLING", "--alpha", "8",
                             "--sweep", "eps=0:0.1:11"});
    CHECK(dbl.code == 0);
    const auto drows = csv_rows(dbl.out);
    REQUIRE(drows.size() == 12);
    CHECK(drows[0] == std::vector<std::string>{"eps", "min_margin", "verdict", "epsilon"});
    // Applicable entries form a prefix with nonincreasing margins.
    double prev = INFINITY;
    bool gated = false;
    for (std::size_t i = 1; i < drows.size(); ++i) {
        if (drows[i][2] == "NOT-APPLICABLE") {
            gated = true;
            continue;
        }
        CHECK_FALSE(gated);
        const double m = std::stod(drows[i][1]);
        CHECK(m <= prev + 1e-12);
        prev = m;
    }

    const Run two = run_cli({"sweep", "--space", "euclidean", "--theorem", "MC_DRIFT", "--sweep", "H=0:1:2",
                             "--sweep", "drift=0:0.2:3"});
    CHECK(two.code == 0);
    const auto trows = csv_rows(two.out);
    REQUIRE(trows.size() == 7);
    CHECK(trows[0] == std::vector<std::string>{"H", "drift", "min_margin", "verdict"});
    CHECK(trows[1][0] == "0");
    CHECK(trows[4][0] == "1");
    CHECK(trows[2][1] == "0.10000000000000001");

    CHECK(run_cli({"sweep", "--space", "euclidean", "--theorem", "CHENG", "--sweep", "delta=0.05:0.5:0"}).code == 2);
    CHECK(run_cli({"sweep", "--space", "euclidean", "--theorem", "CHENG", "--sweep", "delta=0.5:0.05:3"}).code == 2);
    CHECK(run_cli({"sweep", "--space", "euclidean", "--theorem", "CHENG", "--sweep", "delta=0.05:0.5"}).code == 2);
    CHECK(run_cli({"sweep", "--space", "euclidean", "--theorem", "CHENG"}).code == 2);

    const fs::path out = scratch("sweep.csv");
    CHECK(run_cli({"sweep", "--space", "euclidean", "--theorem", "MC_DRIFT", "--sweep", "drift=0:0.2:2", "--out",
                   out.string()})
              .code == 0);
    CHECK(slurp(out).rfind("drift,min_margin,verdict\n", 0) == 0);
    CHECK(fs::exists(scratch("sweep_0.json")));
    CHECK(fs::exists(scratch("sweep_1.json")));
}
