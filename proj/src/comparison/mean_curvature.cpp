#include "detail.hpp"

#include "becomp/error.hpp"
#include "becomp/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace becomp::comparison {

using detail::Sample;

namespace {

// Largest radius where m_f is evaluated: closed spaces stop short of the
// antipodal pole, where m_f -> -infinity.
double mc_top(const smms::WarpedSMMS& s) { return s.closed() ? s.r_max() * (1.0 - 1e-3) : s.r_max(); }

double top_of(const std::vector<double>& user, double fallback) { return user.empty() ? fallback : user.back(); }

}  // namespace

ComparisonReport check_mc_rough(const smms::WarpedSMMS& s, double H, double r0, std::vector<double> grid,
                                const CheckOptions& opt) {
    const double top = mc_top(s);
    if (!(r0 > 0.0) || !(r0 < top)) {
        std::ostringstream os;
        os << "MC_ROUGH: r0 = " << r0 << " must lie in (0, " << top << ")";
        throw DomainError(os.str());
    }
    if (!grid.empty()) {
        detail::validate_grid(grid, r0, top, false, "MC_ROUGH");
        if (!(grid.back() > r0)) throw DomainError("MC_ROUGH: grid must extend beyond r0");
    }
    ComparisonReport rep;
    rep.theorem_id = TheoremId::MC_ROUGH;
    detail::set_common_params(rep, s, H, opt);
    rep.params["r0"] = r0;

    const double upper = top_of(grid, top);
    const auto I = smms::cumulative_rho(s, H, upper, opt.mode);
    const double I0 = I(r0);
    const double mf0 = smms::mean_curvature_f(s, r0);
    rep.params["l"] = I(I.upper());
    const int n = s.n();
    auto ev = [&](double r) -> Sample {
        return {smms::mean_curvature_f(s, r), mf0 - (n - 1) * H * (r - r0) + (I(std::min(r, I.upper())) - I0)};
    };
    auto fallback = [r0, top](std::size_t N) { return detail::uniform_closed(r0, top, N); };
    detail::run_grid(rep, detail::grid_maker(std::move(grid), fallback, opt.grid_points), ev, opt);
    return rep;
}

namespace {

ComparisonReport bounded_f_report(const smms::WarpedSMMS& s, double H, double k, std::vector<double> grid,
                                  const CheckOptions& opt, bool inner) {
    const char* op = inner ? "MC_BOUNDED_F_INNER" : "MC_BOUNDED_F_PI2";
    detail::require_bound(s, Bound::potential(k), op);
    const double top_space = mc_top(s);
    double lo = 0.0, hi = 0.0;
    if (inner) {
        hi = std::min(top_space, range_limit(H, true));
    } else {
        if (!(H > 0.0)) throw DomainError("MC_BOUNDED_F_PI2: the second range exists only for H > 0");
        lo = range_limit(H, true);
        hi = std::min(top_space, range_limit(H, false));
        if (!(hi > lo)) throw DomainError("MC_BOUNDED_F_PI2: empty admissible grid (r_max <= pi/(4 sqrt(H)))");
    }
    if (!grid.empty()) {
        for (double r : grid) {
            if (inner && H > 0.0 && r > range_limit(H, true) * (1.0 + 1e-12))
                throw DomainError("MC_BOUNDED_F_INNER: R exceeds pi/(4 sqrt(H))");
            if (!inner && r > range_limit(H, false) * (1.0 + 1e-12))
                throw DomainError("MC_BOUNDED_F_PI2: R exceeds pi/(2 sqrt(H))");
        }
        detail::validate_grid(grid, lo, hi, inner, op);
    }

    ComparisonReport rep;
    rep.theorem_id = inner ? TheoremId::MC_BOUNDED_F_INNER : TheoremId::MC_BOUNDED_F_PI2;
    detail::set_common_params(rep, s, H, opt);
    rep.params["k"] = k;

    const double upper = top_of(grid, hi);
    const auto I = smms::cumulative_rho(s, H, upper, opt.mode);
    rep.params["l"] = I(I.upper());
    const int n = s.n();
    detail::Evaluator ev;
    if (inner) {
        const double d = n + 4.0 * k;
        ev = [&, d](double r) -> Sample {
            return {smms::mean_curvature_f(s, r), model::mean_curvature_model(d, H, r) + I(std::min(r, I.upper()))};
        };
    } else {
        // (1 + 4k/((n-1) sin(2x))) (n-1) sqrt(H) cot x = m_H + 2k sqrt(H)/sin^2 x, x = sqrt(H) r.
        const double sq = std::sqrt(H);
        ev = [&, sq](double r) -> Sample {
            const double sx = std::sin(sq * r);
            const double rhs = (n - 1) * sq * std::cos(sq * r) / sx + 2.0 * k * sq / (sx * sx);
            return {smms::mean_curvature_f(s, r), rhs + I(std::min(r, I.upper()))};
        };
    }
    auto fallback = [inner, lo, hi](std::size_t N) {
        return inner ? detail::uniform_open(lo, hi, N) : detail::uniform_closed(lo, hi, N);
    };
    detail::run_grid(rep, detail::grid_maker(std::move(grid), fallback, opt.grid_points), ev, opt);
    return rep;
}

}  // namespace

ComparisonReport check_mc_bounded_f_inner(const smms::WarpedSMMS& s, double H, double k, std::vector<double> grid,
                                          const CheckOptions& opt) {
    return bounded_f_report(s, H, k, std::move(grid), opt, true);
}

ComparisonReport check_mc_bounded_f_pi2(const smms::WarpedSMMS& s, double H, double k, std::vector<double> grid,
                                        const CheckOptions& opt) {
    return bounded_f_report(s, H, k, std::move(grid), opt, false);
}

std::vector<ComparisonReport> check_mc_bounded_f(const smms::WarpedSMMS& s, double H, double k,
                                                 const CheckOptions& opt) {
    std::vector<ComparisonReport> out;
    out.push_back(check_mc_bounded_f_inner(s, H, k, {}, opt));
    if (H > 0.0 && mc_top(s) > range_limit(H, true)) out.push_back(check_mc_bounded_f_pi2(s, H, k, {}, opt));
    return out;
}

ComparisonReport check_mc_drift(const smms::WarpedSMMS& s, double H, double a, std::vector<double> grid,
                                const CheckOptions& opt) {
    detail::require_bound(s, Bound::drift(a), "MC_DRIFT");
    const double hi = std::min(mc_top(s), range_limit(H, false));
    if (!grid.empty()) {
        for (double r : grid)
            if (H > 0.0 && r > range_limit(H, false) * (1.0 + 1e-12))
                throw DomainError("MC_DRIFT: R exceeds pi/(2 sqrt(H))");
        detail::validate_grid(grid, 0.0, hi, true, "MC_DRIFT");
    }
    ComparisonReport rep;
    rep.theorem_id = TheoremId::MC_DRIFT;
    detail::set_common_params(rep, s, H, opt);
    rep.params["a"] = a;

    const double upper = top_of(grid, hi);
    const auto I = smms::cumulative_rho(s, H, upper, opt.mode);
    rep.params["l"] = I(I.upper());
    const int n = s.n();
    auto ev = [&](double r) -> Sample {
        return {smms::mean_curvature_f(s, r), model::mean_curvature_model(n, H, r) + a + I(std::min(r, I.upper()))};
    };
    auto fallback = [hi](std::size_t N) { return detail::uniform_open(0.0, hi, N); };
    detail::run_grid(rep, detail::grid_maker(std::move(grid), fallback, opt.grid_points), ev, opt);

    // Equality forces radial curvature (n-1)H and f' = -a up to that radius.
    std::size_t consistent = 0, inconsistent = 0;
    double first_bad = 0.0;
    for (double r : rep.equality_points) {
        const double ric = smms::ricci_radial(s, r);
        const double df = s.f().d1(r);
        const bool ok = std::abs(ric - (n - 1) * H) <= 1e-6 * (1.0 + std::abs(ric)) &&
                        std::abs(df + a) <= 1e-6 * (1.0 + a);
        if (ok) {
            ++consistent;
        } else if (inconsistent++ == 0) {
            first_bad = r;
        }
    }
    if (rep.equality_points.empty()) {
        rep.notes["rigidity"] = "no equality points";
    } else if (inconsistent == 0) {
        rep.notes["rigidity"] = "equality points match the model: Ric(dr,dr) = (n-1)H and f' = -a";
    } else {
        std::ostringstream os;
        os << inconsistent << " of " << (consistent + inconsistent)
           << " equality points do not satisfy Ric(dr,dr) = (n-1)H, f' = -a (first at r = " << first_bad << ")";
        rep.notes["rigidity"] = os.str();
    }
    return rep;
}

}  // namespace becomp::comparison
