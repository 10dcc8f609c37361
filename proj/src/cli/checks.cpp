#include "becomp/cli.hpp"

#include "becomp/eigen.hpp"
#include "becomp/error.hpp"
#include "becomp/global.hpp"
#include "becomp/model.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

namespace becomp::cli {

using nlohmann::json;
using comparison::Bound;
using comparison::TheoremId;
using comparison::Verdict;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::map<std::string, std::string>& unit_table() {
    static const std::map<std::string, std::string> units = {
        {"n", "1"},
        {"H", "1/length^2"},
        {"k", "1"},
        {"a", "1/length"},
        {"c", "1"},
        {"l", "1/length"},
        {"r", "length"},
        {"r0", "length"},
        {"R", "length"},
        {"alpha", "1"},
        {"epsilon", "1/length"},
        {"grid_points", "1"},
        {"f0", "1"},
        {"delta", "1"},
        {"lambda", "1/length^2"},
        {"lambda_model", "1/length^2"},
        {"lambda_smms", "1/length^2"},
        {"rayleigh_quotient", "1/length^2"},
        {"ratio", "1"},
        {"r_half", "length"},
        {"C", "1"},
        {"epsilon_rayleigh", "1/length"},
        {"epsilon_doubling", "1/length"},
        {"residual", "1"},
        {"actual_diameter", "length"},
        {"MYERS_F", "length"},
        {"MYERS_GRAD", "length"},
        {"MYERS_INDEX", "length"},
    };
    return units;
}

std::string margin_unit(const std::string& id) {
    if (id.rfind("MC_", 0) == 0) return "1/length";
    if (id == "VOL_R1" || id == "VOL_ABS_NEGH") return "length^n";
    if (id == "MYERS") return "length";
    if (id == "CHENG" || id == "EIGEN") return "1/length^2";
    return "1";
}

json params_json(const std::map<std::string, double>& params, json& units) {
    json p = json::object();
    for (const auto& [key, value] : params) {
        p[key] = value;
        const auto it = unit_table().find(key);
        units[key] = it == unit_table().end() ? "1" : it->second;
    }
    return p;
}

json finish_json(const std::string& id, const std::map<std::string, double>& params,
                 const std::map<std::string, std::string>& notes, double min_margin, double min_margin_at,
                 double tolerance, bool pass, Verdict verdict) {
    json units = json::object();
    json j{{"theorem_id", id}};
    j["params"] = params_json(params, units);
    j["units"] = units;
    j["min_margin"] = min_margin;
    j["min_margin_at"] = min_margin_at;
    j["margin_unit"] = margin_unit(id);
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    j["verdict"] = comparison::to_string(verdict);
    j["notes"] = notes;
    return j;
}

CheckResult from_comparison(const comparison::ComparisonReport& rep) {
    CheckResult out;
    out.theorem_id = comparison::to_string(rep.theorem_id);
    out.json = finish_json(out.theorem_id, rep.params, rep.notes, rep.min_margin, rep.min_margin_at, rep.tolerance,
                           rep.pass, rep.verdict);
    out.json["refinements"] = rep.refinements;
    out.json["equality_points"] = rep.equality_points;
    out.min_margin = rep.min_margin;
    out.pass = rep.pass;
    out.verdict = rep.verdict;
    out.epsilon = kNaN;
    out.csv_header = "r,lhs,rhs,margin";
    for (const auto& g : rep.grid) out.csv_rows.push_back({g.r, g.lhs, g.rhs, g.margin});
    return out;
}

double space_H(const smms::WarpedSMMS& s) {
    const auto it = s.params().find("H");
    if (it != s.params().end()) return it->second;
    return 0.0;
}

std::vector<double> open_grid(double lo, double hi, std::size_t N) {
    std::vector<double> g(N);
    for (std::size_t i = 0; i < N; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i + 1) / static_cast<double>(N);
    g.back() = hi;
    return g;
}

std::vector<double> closed_grid(double lo, double hi, std::size_t N) {
    std::vector<double> g(N);
    for (std::size_t i = 0; i < N; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(N - 1);
    g.back() = hi;
    return g;
}

struct Resolved {
    double H;
    double k;
    double a;
    comparison::CheckOptions opt;
};

Resolved resolve(const smms::WarpedSMMS& s, const CheckParams& p) {
    Resolved r;
    r.H = p.H ? *p.H : space_H(s);
    if (!std::isfinite(r.H)) throw SpecError("--H: must be finite");
    const smms::PotentialBounds pb = smms::potential_bounds(s);
    r.k = p.k ? *p.k : pb.k;
    r.a = p.a ? *p.a : pb.a;
    r.opt.mode = p.mode;
    r.opt.tol = p.tol;
    r.opt.grid_points = p.grid;
    r.opt.l_override = p.l;
    return r;
}

// Default outer radius: the space's extent capped by the admissible range.
double default_R(const smms::WarpedSMMS& s, double H, bool quarter) {
    return std::min(s.r_max(), comparison::range_limit(H, quarter));
}

double require_R(const CheckParams& p) {
    if (!(*p.R > 0.0) || !std::isfinite(*p.R)) throw DomainError("R must be positive and finite");
    return *p.R;
}

CheckResult run_mean_curvature(const smms::WarpedSMMS& s, TheoremId id, const CheckParams& p, const Resolved& c) {
    const std::size_t N = c.opt.grid_points;
    std::vector<double> grid;
    switch (id) {
        case TheoremId::MC_ROUGH: {
            const double r0 = p.r ? *p.r : 0.25 * s.r_max();
            if (p.R) grid = closed_grid(r0, require_R(p), N);
            return from_comparison(comparison::check_mc_rough(s, c.H, r0, grid, c.opt));
        }
        case TheoremId::MC_BOUNDED_F_INNER:
            if (p.R) grid = open_grid(0.0, require_R(p), N);
            return from_comparison(comparison::check_mc_bounded_f_inner(s, c.H, c.k, grid, c.opt));
        case TheoremId::MC_BOUNDED_F_PI2:
            if (p.R && c.H > 0.0) grid = closed_grid(comparison::range_limit(c.H, true), require_R(p), N);
            return from_comparison(comparison::check_mc_bounded_f_pi2(s, c.H, c.k, grid, c.opt));
        default:
            if (p.R) grid = open_grid(0.0, require_R(p), N);
            return from_comparison(comparison::check_mc_drift(s, c.H, c.a, grid, c.opt));
    }
}

CheckResult run_volume(const smms::WarpedSMMS& s, TheoremId id, const CheckParams& p, const Resolved& c) {
    const bool potential = id == TheoremId::AREA_A || id == TheoremId::VOL_A || id == TheoremId::VOL_R1 ||
                           id == TheoremId::VOL_ABS_NEGH;
    const Bound bound = potential ? Bound::potential(c.k) : Bound::drift(c.a);
    const double R = p.R ? require_R(p) : default_R(s, c.H, potential);
    const double r = p.r ? *p.r : 0.25 * R;
    switch (id) {
        case TheoremId::AREA_A:
        case TheoremId::AREA_B: return from_comparison(comparison::check_area_comparison(s, c.H, bound, r, R, c.opt));
        case TheoremId::VOL_A:
        case TheoremId::VOL_B:
            return from_comparison(comparison::check_volume_comparison(s, c.H, bound, r, R, c.opt));
        case TheoremId::VOL_B_ABS: return from_comparison(comparison::check_volume_absolute(s, c.H, c.a, R, c.opt));
        case TheoremId::VOL_R1: return from_comparison(comparison::check_volume_r1(s, c.H, c.k, R, c.opt));
        default: return from_comparison(comparison::check_absolute_volume_negH(s, c.H, c.k, R, c.opt));
    }
}

CheckResult run_doubling(const smms::WarpedSMMS& s, const CheckParams& p, const Resolved& c) {
    // A drift bound is used when only --a is given.
    const bool drift = p.a && !p.k;
    const Bound bound = drift ? Bound::drift(c.a) : Bound::potential(c.k);
    const double R = p.R ? require_R(p) : default_R(s, c.H, !drift);
    const double alpha = p.alpha ? *p.alpha : 2.0;
    if (!(alpha > 1.0)) throw DomainError("alpha must be > 1");
    const comparison::DoublingCertificate cert = comparison::doubling_epsilon(s.n(), bound, c.H, R, alpha);
    CheckResult out = from_comparison(comparison::check_doubling(s, c.H, bound, alpha, R, cert.epsilon, c.opt));
    out.json["params"]["F_at_epsilon"] = cert.F_at_epsilon;
    out.json["units"]["F_at_epsilon"] = "1";
    out.json["params"]["sigma_cap"] = cert.sigma_cap;
    out.json["units"]["sigma_cap"] = "1/length";
    out.epsilon = cert.epsilon;
    return out;
}

CheckResult run_myers(const smms::WarpedSMMS& s, const CheckParams& p, const Resolved& c) {
    const global::DiameterReport rep = global::check_myers(s, c.H, p.mode, p.l);
    std::map<std::string, double> params = rep.bounds;
    params["n"] = rep.n;
    params["H"] = rep.H;
    params["k"] = rep.k;
    params["a"] = rep.a;
    params["l"] = rep.l;
    params["actual_diameter"] = *rep.actual_diameter;
    double margin = std::numeric_limits<double>::infinity();
    std::string tightest;
    for (const auto& [name, b] : rep.bounds) {
        if (b - *rep.actual_diameter < margin) {
            margin = b - *rep.actual_diameter;
            tightest = name;
        }
    }
    std::map<std::string, std::string> notes{{"mode", smms::to_string(rep.mode)},
                                             {"space", s.name()},
                                             {"a_meaning", "sup |f'|"},
                                             {"tightest_bound", tightest},
                                             {"chord_caveat", rep.chord_caveat ? "true" : "false"},
                                             {"hypothesis_coverage", rep.hypothesis_coverage}};
    CheckResult out;
    out.theorem_id = "MYERS";
    out.pass = rep.pass;
    out.verdict = rep.pass ? Verdict::Pass : Verdict::Fail;
    out.min_margin = margin;
    out.epsilon = kNaN;
    out.json = finish_json("MYERS", params, notes, margin, kNaN, 1e-9, out.pass, out.verdict);
    out.json["chord_caveat"] = rep.chord_caveat;
    return out;
}

double eigen_R(const smms::WarpedSMMS& s, const CheckParams& p, double H) {
    if (p.R) return require_R(p);
    const double top = s.closed() ? 0.5 * s.r_max() : s.r_max();
    return std::min(top, comparison::range_limit(H, false));
}

CheckResult run_cheng(const smms::WarpedSMMS& s, const CheckParams& p, const Resolved& c) {
    const double delta = p.delta ? *p.delta : 0.1;
    const double R = eigen_R(s, p, c.H);
    const eigen::ChengReport rep = eigen::check_cheng_estimate(s, c.H, c.a, R, delta, p.mode);
    std::map<std::string, double> params{{"n", rep.n},
                                         {"H", rep.H},
                                         {"a", rep.a},
                                         {"R", rep.R},
                                         {"delta", rep.delta},
                                         {"l", rep.l},
                                         {"epsilon", rep.constants.epsilon},
                                         {"epsilon_rayleigh", rep.constants.from_rayleigh},
                                         {"epsilon_doubling", rep.constants.from_doubling},
                                         {"C", rep.constants.C},
                                         {"r_half", rep.constants.r_half},
                                         {"lambda_smms", rep.lambda_smms},
                                         {"lambda_model", rep.lambda_model},
                                         {"ratio", rep.ratio},
                                         {"rayleigh_quotient", rep.rayleigh_quotient}};
    std::map<std::string, std::string> notes{{"mode", smms::to_string(p.mode)}, {"space", s.name()}};
    if (!rep.note.empty()) notes["note"] = rep.note;
    notes["radial_only"] = "true";
    CheckResult out;
    out.theorem_id = "CHENG";
    out.min_margin = (1.0 + rep.delta) * rep.lambda_model - rep.lambda_smms;
    out.pass = rep.pass;
    out.verdict = rep.verdict;
    out.epsilon = rep.constants.epsilon;
    out.json = finish_json("CHENG", params, notes, out.min_margin, rep.R, rep.tolerance, rep.pass, rep.verdict);
    return out;
}

CheckResult run_eigen(const smms::WarpedSMMS& s, const CheckParams& p, const Resolved& c) {
    const double R = eigen_R(s, p, c.H);
    if (R > s.r_max() * (1.0 + 1e-12)) throw DomainError("EIGEN: R exceeds r_max");
    eigen::EigenOptions eo;
    eo.samples = std::max<std::size_t>(p.grid + 1, 2);
    const eigen::EigenResult ev = eigen::smms_radial_eigenvalue(s, R, eo);
    const eigen::EigenResult mv = eigen::model_eigenvalue(s.n(), c.a, c.H, R);
    const double Q = eigen::rayleigh_quotient_transplant(s, c.a, c.H, R);
    std::map<std::string, double> params{{"n", s.n()},
                                         {"H", c.H},
                                         {"a", c.a},
                                         {"R", R},
                                         {"lambda_smms", ev.lambda},
                                         {"lambda_model", mv.lambda},
                                         {"rayleigh_quotient", Q},
                                         {"residual", ev.residual},
                                         {"r_half", ev.r_half}};
    std::map<std::string, std::string> notes{{"space", s.name()},
                                             {"radial_only", ev.radial_only ? "true" : "false"},
                                             {"margin", "rayleigh_quotient - lambda_smms (min-max)"}};
    CheckResult out;
    out.theorem_id = "EIGEN";
    out.min_margin = Q - ev.lambda;
    const double tol = p.tol.allowed(Q);
    out.pass = out.min_margin >= -tol;
    out.verdict = out.pass ? Verdict::Pass : Verdict::Fail;
    out.epsilon = kNaN;
    out.json = finish_json("EIGEN", params, notes, out.min_margin, R, tol, out.pass, out.verdict);
    out.csv_header = "r,phi";
    for (const auto& e : ev.eigenfunction) out.csv_rows.push_back({e.r, e.phi});
    return out;
}

}  // namespace

const std::vector<std::string>& theorem_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (TheoremId id : comparison::all_theorems()) v.emplace_back(comparison::to_string(id));
        v.emplace_back("MYERS");
        v.emplace_back("CHENG");
        v.emplace_back("EIGEN");
        return v;
    }();
    return ids;
}

CheckResult run_check(const smms::WarpedSMMS& s, const std::string& theorem, const CheckParams& p) {
    const auto t0 = std::chrono::steady_clock::now();
    const Resolved c = resolve(s, p);
    CheckResult out;
    if (theorem == "MYERS") {
        out = run_myers(s, p, c);
    } else if (theorem == "CHENG") {
        out = run_cheng(s, p, c);
    } else if (theorem == "EIGEN") {
        out = run_eigen(s, p, c);
    } else {
        const auto id = comparison::theorem_from_string(theorem);
        if (!id) throw SpecError("--theorem: unknown id '" + theorem + "'");
        switch (*id) {
            case TheoremId::MC_ROUGH:
            case TheoremId::MC_BOUNDED_F_INNER:
            case TheoremId::MC_BOUNDED_F_PI2:
            case TheoremId::MC_DRIFT: out = run_mean_curvature(s, *id, p, c); break;
            case TheoremId::DOUBLING: out = run_doubling(s, p, c); break;
            default: out = run_volume(s, *id, p, c); break;
        }
    }
    out.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace becomp::cli
