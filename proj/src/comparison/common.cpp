#include "detail.hpp"

#include "becomp/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace becomp::comparison {

namespace {

constexpr std::array<std::pair<TheoremId, const char*>, 12> kNames{{
    {TheoremId::MC_ROUGH, "MC_ROUGH"},
    {TheoremId::MC_BOUNDED_F_INNER, "MC_BOUNDED_F_INNER"},
    {TheoremId::MC_BOUNDED_F_PI2, "MC_BOUNDED_F_PI2"},
    {TheoremId::MC_DRIFT, "MC_DRIFT"},
    {TheoremId::AREA_A, "AREA_A"},
    {TheoremId::AREA_B, "AREA_B"},
    {TheoremId::VOL_A, "VOL_A"},
    {TheoremId::VOL_B, "VOL_B"},
    {TheoremId::VOL_B_ABS, "VOL_B_ABS"},
    {TheoremId::VOL_ABS_NEGH, "VOL_ABS_NEGH"},
    {TheoremId::DOUBLING, "DOUBLING"},
    {TheoremId::VOL_R1, "VOL_R1"},
}};

}  // namespace

const char* to_string(TheoremId id) {
    for (const auto& [k, name] : kNames)
        if (k == id) return name;
    return "UNKNOWN";
}

std::optional<TheoremId> theorem_from_string(const std::string& s) {
    for (const auto& [k, name] : kNames)
        if (s == name) return k;
    return std::nullopt;
}

const std::vector<TheoremId>& all_theorems() {
    static const std::vector<TheoremId> ids = [] {
        std::vector<TheoremId> v;
        for (const auto& [k, name] : kNames) v.push_back(k);
        return v;
    }();
    return ids;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::NotApplicable: return "NOT-APPLICABLE";
    }
    return "FAIL";
}

double InequalityTolerance::allowed(double rhs) const { return std::max(abs, rel * std::abs(rhs)); }

double range_limit(double H, bool quarter) {
    if (!(H > 0.0)) return std::numeric_limits<double>::infinity();
    return std::numbers::pi / ((quarter ? 4.0 : 2.0) * std::sqrt(H));
}

double resolve_l(const smms::WarpedSMMS& s, double H, double R, const CheckOptions& opt) {
    if (opt.l_override) {
        if (!(*opt.l_override >= 0.0)) throw DomainError("l must be >= 0");
        return *opt.l_override;
    }
    return smms::integral_rho(s, H, R, opt.mode);
}

namespace detail {

std::vector<double> uniform_open(double lo, double hi, std::size_t N) {
    std::vector<double> g(N);
    for (std::size_t i = 0; i < N; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i + 1) / static_cast<double>(N);
    g.back() = hi;
    return g;
}

std::vector<double> uniform_closed(double lo, double hi, std::size_t N) {
    if (N < 2) return {hi};
    std::vector<double> g(N);
    for (std::size_t i = 0; i < N; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(N - 1);
    g.back() = hi;
    return g;
}

std::vector<double> subdivide(const std::vector<double>& grid, std::size_t factor) {
    if (factor <= 1 || grid.size() < 2) return grid;
    std::vector<double> out;
    out.reserve((grid.size() - 1) * factor + 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        for (std::size_t j = 0; j < factor; ++j)
            out.push_back(grid[i] + (grid[i + 1] - grid[i]) * static_cast<double>(j) / static_cast<double>(factor));
    }
    out.push_back(grid.back());
    return out;
}

GridMaker grid_maker(std::vector<double> user, std::function<std::vector<double>(std::size_t)> fallback,
                     std::size_t points) {
    if (!user.empty())
        return [user = std::move(user)](std::size_t factor) { return subdivide(user, factor); };
    return [fallback = std::move(fallback), points](std::size_t factor) { return fallback(points * factor); };
}

void validate_grid(const std::vector<double>& grid, double lo, double hi, bool lo_open, const char* op) {
    if (grid.empty()) throw DomainError(std::string(op) + ": empty admissible grid");
    const double slack = 1e-12 * std::max(1.0, std::abs(hi));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid[i];
        const bool below = lo_open ? !(r > lo) : !(r >= lo - slack);
        if (below || !(r <= hi + slack)) {
            std::ostringstream os;
            os << op << ": grid point r = " << r << " outside the admissible range " << (lo_open ? "(" : "[") << lo
               << ", " << hi << "]";
            throw DomainError(os.str());
        }
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw DomainError(std::string(op) + ": grid must be strictly increasing");
    }
}

void require_bound(const smms::WarpedSMMS& s, Bound bound, const char* op) {
    if (!(bound.value >= 0.0) || !std::isfinite(bound.value))
        throw DomainError(std::string(op) + (bound.kind == Bound::Kind::Potential ? ": k" : ": a") +
                          " must be finite and >= 0");
    const smms::PotentialBounds pb = smms::potential_bounds(s);
    const double actual = bound.kind == Bound::Kind::Potential ? pb.k : pb.a;
    if (actual > bound.value + 1e-12 * (1.0 + bound.value)) {
        std::ostringstream os;
        os.precision(12);
        if (bound.kind == Bound::Kind::Potential)
            os << op << ": k = " << bound.value << " is below sup|f| = " << actual;
        else
            os << op << ": a = " << bound.value << " is below sup(-f') = " << actual;
        throw HypothesisError(os.str());
    }
}

void set_common_params(ComparisonReport& rep, const smms::WarpedSMMS& s, double H, const CheckOptions& opt) {
    rep.params["n"] = s.n();
    rep.params["H"] = H;
    rep.notes["mode"] = smms::to_string(opt.mode);
    rep.notes["space"] = s.name();
}

void run_grid(ComparisonReport& rep, const GridMaker& make, const Evaluator& ev, const CheckOptions& opt) {
    auto evaluate = [&](const std::vector<double>& grid) {
        rep.grid.clear();
        rep.grid.reserve(grid.size());
        std::size_t worst = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Sample smp = ev(grid[i]);
            const double margin = smp.rhs - smp.lhs;
            // rhs = +inf (an overflowing exponential factor) holds trivially.
            if (!std::isfinite(smp.lhs) || !(smp.rhs > -std::numeric_limits<double>::infinity())) {
                std::ostringstream os;
                os << to_string(rep.theorem_id) << ": non-finite margin at r = " << grid[i];
                throw NumericError(NumericError::Kind::NonFinite, os.str());
            }
            rep.grid.push_back({grid[i], smp.lhs, smp.rhs, margin});
            if (margin < rep.grid[worst].margin) worst = i;
        }
        rep.min_margin = rep.grid[worst].margin;
        rep.min_margin_at = rep.grid[worst].r;
        rep.tolerance = opt.tol.allowed(rep.grid[worst].rhs);
    };

    evaluate(make(1));
    rep.refinements = 0;
    if (opt.refine && std::abs(rep.min_margin) < 10.0 * rep.tolerance) {
        evaluate(make(4));
        rep.refinements = 1;
    }
    rep.pass = rep.min_margin >= -rep.tolerance;
    rep.verdict = rep.pass ? Verdict::Pass : Verdict::Fail;
    rep.equality_points.clear();
    for (const GridPoint& p : rep.grid)
        if (std::abs(p.margin) < rep.tolerance) rep.equality_points.push_back(p.r);
    rep.params["grid_points"] = static_cast<double>(rep.grid.size());
}

}  // namespace detail

}  // namespace becomp::comparison
