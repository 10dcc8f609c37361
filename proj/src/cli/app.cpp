#include "becomp/cli.hpp"

#include "becomp/error.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace becomp::cli {

using nlohmann::json;

namespace {

struct Args {
    std::string space;
    int n = 3;
    std::vector<std::string> params;
    std::string custom;
    std::vector<std::string> theorems;
    double H = 0, k = 0, a = 0, delta = 0, alpha = 0, r = 0, R = 0, l = 0;
    std::size_t grid = 256;
    std::string mode = "radial";
    double tol_abs = 1e-8, tol_rel = 1e-6;
    std::string out;
    std::string format = "json";
    std::vector<std::string> sweeps;
};

struct Flags {
    CLI::Option *n, *H, *k, *a, *delta, *alpha, *r, *R, *l;
};

Flags add_common(CLI::App* cmd, Args& a) {
    Flags f{};
    cmd->add_option("--space", a.space, "catalog space name (see list-spaces)");
    f.n = cmd->add_option("--n", a.n, "dimension (default 3)");
    cmd->add_option("--param", a.params, "space parameter K=V (repeatable)");
    cmd->add_option("--custom", a.custom, "JSON file with a custom profile spec or a full space spec");
    cmd->add_option("--theorem", a.theorems, "theorem id (repeatable or comma separated)")->delimiter(',')->required();
    f.H = cmd->add_option("--H", a.H, "comparison curvature (default: the space's H, else 0)");
    f.k = cmd->add_option("--k", a.k, "bound on |f| (default: sup|f| on the space)");
    f.a = cmd->add_option("--a", a.a, "bound on -f' (default: sup(-f') on the space)");
    f.delta = cmd->add_option("--delta", a.delta, "Cheng estimate slack (default 0.1)");
    f.alpha = cmd->add_option("--alpha", a.alpha, "doubling constant (default 2)");
    f.r = cmd->add_option("--r", a.r, "inner radius (r0 for MC_ROUGH)");
    f.R = cmd->add_option("--R", a.R, "outer radius");
    f.l = cmd->add_option("--l", a.l, "override the rho integral l");
    cmd->add_option("--grid", a.grid, "grid points (default 256)");
    cmd->add_option("--mode", a.mode, "rho mode")->check(CLI::IsMember({"radial", "full"}));
    cmd->add_option("--tol-abs", a.tol_abs, "absolute inequality tolerance (default 1e-8)");
    cmd->add_option("--tol-rel", a.tol_rel, "relative inequality tolerance (default 1e-6)");
    cmd->add_option("--out", a.out, "output file");
    cmd->add_option("--format", a.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    return f;
}

std::optional<double> given(CLI::Option* o, double v) {
    if (o->count() == 0) return std::nullopt;
    return v;
}

double parse_real(const std::string& text, const std::string& field) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw SpecError(field + ": '" + text + "' is not a real number");
    }
    if (used != text.size() || !std::isfinite(v)) throw SpecError(field + ": '" + text + "' is not a finite real");
    return v;
}

std::pair<std::string, std::string> split_kv(const std::string& s, const std::string& field) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
        throw SpecError(field + ": expected NAME=VALUE, got '" + s + "'");
    return {s.substr(0, eq), s.substr(eq + 1)};
}

SpaceSpec assemble_spec(const Args& a, const Flags& f) {
    SpaceSpec spec;
    if (!a.custom.empty()) {
        std::ifstream in(a.custom);
        if (!in) throw SpecError("--custom: cannot read '" + a.custom + "'");
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw SpecError(std::string("--custom: invalid JSON: ") + e.what());
        }
        spec = custom_file_spec(j, a.n);
        if (!a.space.empty() && a.space != spec.name)
            throw SpecError("--space: '" + a.space + "' conflicts with the space in --custom ('" + spec.name + "')");
        if (f.n->count()) spec.n = a.n;
    } else {
        if (a.space.empty()) throw SpecError("--space: required (or give --custom FILE.json)");
        if (a.space == "custom") throw SpecError("--space: 'custom' needs --custom FILE.json");
        spec.name = a.space;
        spec.n = a.n;
    }
    if (spec.n < 2) throw SpecError("--n: must be >= 2");
    for (const auto& kv : a.params) {
        const auto [key, value] = split_kv(kv, "--param");
        if (spec.name == "custom") throw SpecError("--param: a custom space takes no parameters");
        spec.params[key] = parse_real(value, "--param " + key);
    }
    return spec;
}

CheckParams assemble_params(const Args& a, const Flags& f) {
    CheckParams p;
    p.H = given(f.H, a.H);
    p.k = given(f.k, a.k);
    p.a = given(f.a, a.a);
    p.delta = given(f.delta, a.delta);
    p.alpha = given(f.alpha, a.alpha);
    p.r = given(f.r, a.r);
    p.R = given(f.R, a.R);
    p.l = given(f.l, a.l);
    if (a.grid < 2) throw SpecError("--grid: must be >= 2");
    p.grid = a.grid;
    p.mode = smms::rho_mode_from_string(a.mode);
    if (!(a.tol_abs >= 0.0)) throw SpecError("--tol-abs: must be >= 0");
    if (!(a.tol_rel >= 0.0)) throw SpecError("--tol-rel: must be >= 0");
    p.tol = {a.tol_abs, a.tol_rel};
    return p;
}

void validate_theorems(const std::vector<std::string>& ids) {
    if (ids.empty()) throw SpecError("--theorem: required");
    const auto& known = theorem_ids();
    for (const auto& id : ids)
        if (std::find(known.begin(), known.end(), id) == known.end())
            throw SpecError("--theorem: unknown id '" + id + "'");
}

std::string stem_of(const std::string& out) {
    const std::filesystem::path p(out);
    return (p.parent_path() / p.stem()).string();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw SpecError("--out: cannot write '" + path + "'");
    os << text;
}

std::string summary_line(const CheckResult& r) {
    std::ostringstream os;
    os.precision(10);
    os << r.theorem_id << " " << comparison::to_string(r.verdict) << " min_margin=" << r.min_margin;
    return os.str();
}

int cmd_check(const Args& a, const Flags& f, std::ostream& out) {
    validate_theorems(a.theorems);
    const SpaceSpec spec = assemble_spec(a, f);
    const CheckParams p = assemble_params(a, f);
    if (a.format == "csv" && a.theorems.size() != 1)
        throw SpecError("--format: csv output takes exactly one --theorem");
    const smms::WarpedSMMS s = build_space(spec);

    std::vector<CheckResult> results;
    for (const auto& id : a.theorems) results.push_back(run_check(s, id, p));

    if (a.format == "csv") {
        if (results.front().csv_header.empty())
            throw SpecError("--format: " + results.front().theorem_id + " has no grid to export as csv");
        const std::string text = grid_csv(results.front());
        if (a.out.empty()) {
            out << text;
        } else {
            write_file(a.out, text);
            out << summary_line(results.front()) << "\n";
        }
        return exit_code(results);
    }

    std::vector<std::string> csv_paths(results.size());
    if (!a.out.empty()) {
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (results[i].csv_header.empty()) continue;
            csv_paths[i] = stem_of(a.out) + "_" + results[i].theorem_id + "_grid.csv";
            write_file(csv_paths[i], grid_csv(results[i]));
        }
    }
    const json report = run_report(resolved_spec(spec, s), results, csv_paths);
    if (a.out.empty()) {
        out << report.dump(2) << "\n";
    } else {
        write_file(a.out, report.dump(2) + "\n");
        for (const auto& r : results) out << summary_line(r) << "\n";
    }
    return exit_code(results);
}

struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

SweepAxis parse_sweep(const std::string& text) {
    const auto [name, range] = split_kv(text, "--sweep");
    std::vector<std::string> parts;
    std::stringstream ss(range);
    for (std::string piece; std::getline(ss, piece, ':');) parts.push_back(piece);
    if (parts.size() != 3) throw SpecError("--sweep " + name + ": expected start:stop:count, got '" + range + "'");
    const double lo = parse_real(parts[0], "--sweep " + name + " start");
    const double hi = parse_real(parts[1], "--sweep " + name + " stop");
    const double cnt = parse_real(parts[2], "--sweep " + name + " count");
    if (!(cnt >= 1.0) || cnt != std::floor(cnt))
        throw SpecError("--sweep " + name + ": empty range (count must be a positive integer)");
    if (hi < lo) throw SpecError("--sweep " + name + ": empty range (stop < start)");
    SweepAxis axis{name, {}};
    const auto count = static_cast<std::size_t>(cnt);
    for (std::size_t i = 0; i < count; ++i)
        axis.values.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    return axis;
}

void apply_axis(const std::string& name, double v, SpaceSpec& spec, CheckParams& p) {
    static const std::set<std::string> check_keys{"H", "k", "a", "delta", "alpha", "r", "R", "l"};
    if (!check_keys.count(name)) {
        if (spec.name == "custom") throw SpecError("--sweep " + name + ": a custom space takes no parameters");
        spec.params[name] = v;
        return;
    }
    std::optional<double>* slot = name == "H"       ? &p.H
                                  : name == "k"     ? &p.k
                                  : name == "a"     ? &p.a
                                  : name == "delta" ? &p.delta
                                  : name == "alpha" ? &p.alpha
                                  : name == "r"     ? &p.r
                                  : name == "R"     ? &p.R
                                                    : &p.l;
    *slot = v;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_sweep(const Args& a, const Flags& f, std::ostream& out) {
    validate_theorems(a.theorems);
    if (a.theorems.size() != 1) throw SpecError("--theorem: a sweep takes exactly one theorem");
    if (a.sweeps.empty()) throw SpecError("--sweep: at least one range is required");
    const std::string& theorem = a.theorems.front();
    const SpaceSpec base = assemble_spec(a, f);
    const CheckParams base_params = assemble_params(a, f);
    std::vector<SweepAxis> axes;
    for (const auto& s : a.sweeps) axes.push_back(parse_sweep(s));

    const bool with_eps = theorem == "CHENG" || theorem == "DOUBLING";
    std::string csv;
    for (const auto& ax : axes) csv += ax.name + ",";
    csv += "min_margin,verdict";
    if (with_eps) csv += ",epsilon";
    csv += "\n";

    std::size_t total = 1;
    for (const auto& ax : axes) total *= ax.values.size();
    std::vector<CheckResult> all;
    for (std::size_t point = 0; point < total; ++point) {
        // Last axis varies fastest.
        std::vector<double> vals(axes.size());
        for (std::size_t i = axes.size(), rest = point; i-- > 0;) {
            vals[i] = axes[i].values[rest % axes[i].values.size()];
            rest /= axes[i].values.size();
        }
        SpaceSpec spec = base;
        CheckParams p = base_params;
        for (std::size_t i = 0; i < axes.size(); ++i) apply_axis(axes[i].name, vals[i], spec, p);
        const smms::WarpedSMMS s = build_space(spec);
        CheckResult r = run_check(s, theorem, p);
        for (double v : vals) csv += fmt(v) + ",";
        csv += fmt(r.min_margin) + "," + comparison::to_string(r.verdict);
        if (with_eps) csv += "," + fmt(r.epsilon);
        csv += "\n";
        if (!a.out.empty())
            write_file(stem_of(a.out) + "_" + std::to_string(point) + ".json",
                       run_report(resolved_spec(spec, s), {r}, {}).dump(2) + "\n");
        all.push_back(std::move(r));
    }

    if (a.out.empty())
        out << csv;
    else
        write_file(a.out, csv);
    return exit_code(all);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Comparison geometry checks on rotationally symmetric weighted spaces", "becomp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    bool list_json = false;
    auto* list = app.add_subcommand("list-spaces", "list the space catalog with parameter schemas");
    list->add_flag("--json", list_json, "emit a JSON array");

    Args check_args, sweep_args;
    auto* check = app.add_subcommand("check", "run theorem checks on one space");
    const Flags check_flags = add_common(check, check_args);
    auto* sweep = app.add_subcommand("sweep", "run one theorem over a parameter grid");
    const Flags sweep_flags = add_common(sweep, sweep_args);
    sweep->add_option("--sweep", sweep_args.sweeps, "NAME=start:stop:count (repeatable)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "becomp: usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (list->parsed()) {
            if (list_json)
                out << list_spaces_json().dump(2) << "\n";
            else
                out << list_spaces_text();
            return 0;
        }
        if (check->parsed()) return cmd_check(check_args, check_flags, out);
        return cmd_sweep(sweep_args, sweep_flags, out);
    } catch (const NumericError& e) {
        err << "becomp: numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "becomp: invalid input: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace becomp::cli
