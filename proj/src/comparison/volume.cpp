#include "detail.hpp"

#include "becomp/error.hpp"
#include "becomp/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace becomp::comparison {

using detail::Sample;

namespace {

// Model dimension, drift and exponent constant matching a hypothesis on f.
struct ModelChoice {
    model::ModelSpace space;
    double c;
};

ModelChoice model_for(int n, Bound bound, double H) {
    if (bound.kind == Bound::Kind::Potential)
        return {model::ModelSpace(n + 4.0 * bound.value, H, 0.0), model::c_const(n, bound.value, H)};
    return {model::ModelSpace(n, H, bound.value), 1.0};
}

void set_bound_params(ComparisonReport& rep, Bound bound, double c) {
    rep.params[bound.kind == Bound::Kind::Potential ? "k" : "a"] = bound.value;
    rep.params["c"] = c;
}

// 0 < r <= R <= min(r_max, range); the potential bound uses pi/(4 sqrt(H)),
// the drift bound pi/(2 sqrt(H)).
void check_radii(const smms::WarpedSMMS& s, double H, Bound bound, double r, double R, const char* op,
                 bool allow_zero_r) {
    std::ostringstream os;
    os << op << ": ";
    if (!(allow_zero_r ? r >= 0.0 : r > 0.0)) {
        os << "inner radius r = " << r << " must be " << (allow_zero_r ? ">= 0" : "> 0");
        throw DomainError(os.str());
    }
    if (!(R >= r)) {
        os << "need r <= R (r = " << r << ", R = " << R << ")";
        throw DomainError(os.str());
    }
    if (R > s.r_max() * (1.0 + 1e-12)) {
        os << "R = " << R << " exceeds r_max = " << s.r_max();
        throw DomainError(os.str());
    }
    const bool quarter = bound.kind == Bound::Kind::Potential;
    if (H > 0.0 && R > range_limit(H, quarter) * (1.0 + 1e-12)) {
        os << "R exceeds " << (quarter ? "pi/(4 sqrt(H))" : "pi/(2 sqrt(H))");
        throw DomainError(os.str());
    }
}

// t -> int_0^t (e^{c l u} - 1) A/V du for the chosen model on [0, T].
numkit::CumulativeIntegral growth_integral(const model::ModelVolume& mv, double cl, double T) {
    return numkit::CumulativeIntegral::uniform([mv, cl](double u) { return mv.growth_integrand(cl, u); }, 0.0, T, 64,
                                               numkit::kPrecise);
}

}  // namespace

ComparisonReport check_area_comparison(const smms::WarpedSMMS& s, double H, Bound bound, double r, double R,
                                       const CheckOptions& opt) {
    const bool potential = bound.kind == Bound::Kind::Potential;
    const char* op = potential ? "AREA_A" : "AREA_B";
    check_radii(s, H, bound, r, R, op, false);
    detail::require_bound(s, bound, op);
    const ModelChoice mc = model_for(s.n(), bound, H);
    const double l = resolve_l(s, H, R, opt);

    ComparisonReport rep;
    rep.theorem_id = potential ? TheoremId::AREA_A : TheoremId::AREA_B;
    detail::set_common_params(rep, s, H, opt);
    set_bound_params(rep, bound, mc.c);
    rep.params["r"] = r;
    rep.params["R"] = R;
    rep.params["l"] = l;

    const double inner = smms::weighted_area(s, r) / model::area_model(mc.space, r);
    const double cl = mc.c * l;
    auto ev = [&](double t) -> Sample {
        return {smms::weighted_area(s, t) / model::area_model(mc.space, t), std::exp(cl * t) * inner};
    };
    auto grid = [r, R](std::size_t N) { return R > r ? detail::uniform_closed(r, R, N) : std::vector<double>{r}; };
    detail::run_grid(rep, detail::grid_maker({}, grid, opt.grid_points), ev, opt);
    return rep;
}

ComparisonReport check_volume_comparison(const smms::WarpedSMMS& s, double H, Bound bound, double r, double R,
                                         const CheckOptions& opt) {
    const bool potential = bound.kind == Bound::Kind::Potential;
    if (!potential && r == 0.0) return check_volume_absolute(s, H, bound.value, R, opt);
    const char* op = potential ? "VOL_A" : "VOL_B";
    if (potential && r == 0.0)
        throw DomainError("VOL_A: r = 0 is not admissible under a bound on |f| (the ratio blows up as r -> 0)");
    check_radii(s, H, bound, r, R, op, false);
    detail::require_bound(s, bound, op);
    const ModelChoice mc = model_for(s.n(), bound, H);
    const double l = resolve_l(s, H, R, opt);

    ComparisonReport rep;
    rep.theorem_id = potential ? TheoremId::VOL_A : TheoremId::VOL_B;
    detail::set_common_params(rep, s, H, opt);
    set_bound_params(rep, bound, mc.c);
    rep.params["r"] = r;
    rep.params["R"] = R;
    rep.params["l"] = l;

    const smms::WeightedVolume vf(s, R);
    const model::ModelVolume mv(mc.space, R);
    const auto G = growth_integral(mv, mc.c * l, R);
    const double inner = vf.volume(r) / mv.volume(r);
    auto ev = [&](double t) -> Sample {
        return {vf.volume(t) / mv.volume(t), inner * std::exp(G(std::min(t, G.upper())))};
    };
    auto grid = [r, R](std::size_t N) { return R > r ? detail::uniform_closed(r, R, N) : std::vector<double>{r}; };
    detail::run_grid(rep, detail::grid_maker({}, grid, opt.grid_points), ev, opt);
    return rep;
}

ComparisonReport check_volume_absolute(const smms::WarpedSMMS& s, double H, double a, double R,
                                       const CheckOptions& opt) {
    const Bound bound = Bound::drift(a);
    check_radii(s, H, bound, 0.0, R, "VOL_B_ABS", true);
    if (!(R > 0.0)) throw DomainError("VOL_B_ABS: R must be > 0");
    detail::require_bound(s, bound, "VOL_B_ABS");
    const ModelChoice mc = model_for(s.n(), bound, H);
    const double l = resolve_l(s, H, R, opt);

    ComparisonReport rep;
    rep.theorem_id = TheoremId::VOL_B_ABS;
    detail::set_common_params(rep, s, H, opt);
    set_bound_params(rep, bound, mc.c);
    rep.params["R"] = R;
    rep.params["l"] = l;
    rep.params["f0"] = s.f().eval(0.0);
    rep.notes["form"] = "V_f(t)/V^a_H(t) <= exp{-f(0) + int_0^t (e^{l u} - 1) A^a_H/V^a_H du}";

    const smms::WeightedVolume vf(s, R);
    const model::ModelVolume mv(mc.space, R);
    const auto G = growth_integral(mv, l, R);
    const double f0 = s.f().eval(0.0);
    auto ev = [&](double t) -> Sample {
        return {vf.volume(t) / mv.volume(t), std::exp(-f0 + G(std::min(t, G.upper())))};
    };
    auto grid = [R](std::size_t N) { return detail::uniform_open(0.0, R, N); };
    detail::run_grid(rep, detail::grid_maker({}, grid, opt.grid_points), ev, opt);
    return rep;
}

ComparisonReport check_volume_r1(const smms::WarpedSMMS& s, double H, double k, double R, const CheckOptions& opt) {
    const Bound bound = Bound::potential(k);
    if (!(R > 1.0)) throw DomainError("VOL_R1: R must exceed 1");
    check_radii(s, H, bound, 1.0, R, "VOL_R1", false);
    detail::require_bound(s, bound, "VOL_R1");
    const ModelChoice mc = model_for(s.n(), bound, H);
    const double l = resolve_l(s, H, R, opt);

    ComparisonReport rep;
    rep.theorem_id = TheoremId::VOL_R1;
    detail::set_common_params(rep, s, H, opt);
    set_bound_params(rep, bound, mc.c);
    rep.params["r"] = 1.0;
    rep.params["R"] = R;
    rep.params["l"] = l;

    const smms::WeightedVolume vf(s, R);
    const model::ModelVolume mv(mc.space, R);
    const auto G = growth_integral(mv, mc.c * l, R);
    const double at_one = vf.volume(1.0) / mv.volume(1.0);
    auto ev = [&](double t) -> Sample {
        return {vf.volume(t), mv.volume(t) * at_one * std::exp(G(std::min(t, G.upper())))};
    };
    auto grid = [R](std::size_t N) { return detail::uniform_closed(1.0, R, N); };
    detail::run_grid(rep, detail::grid_maker({}, grid, opt.grid_points), ev, opt);
    return rep;
}

ComparisonReport check_absolute_volume_negH(const smms::WarpedSMMS& s, double H, double k, double R,
                                            const CheckOptions& opt) {
    if (!(H < 0.0)) throw DomainError("VOL_ABS_NEGH: requires H < 0");
    if (!(R > 0.0)) throw DomainError("VOL_ABS_NEGH: R must be > 0");
    if (R > s.r_max() * (1.0 + 1e-12)) throw DomainError("VOL_ABS_NEGH: R exceeds r_max");
    detail::require_bound(s, Bound::potential(k), "VOL_ABS_NEGH");
    const double l = resolve_l(s, H, R, opt);

    ComparisonReport rep;
    rep.theorem_id = TheoremId::VOL_ABS_NEGH;
    detail::set_common_params(rep, s, H, opt);
    rep.params["k"] = k;
    rep.params["R"] = R;
    rep.params["l"] = l;
    rep.notes["normalization"] = "both sides per unit solid angle (divided by |S^{n-1}|)";

    const smms::WeightedVolume vf(s, R);
    const double omega = numkit::sphere_area(s.n());
    const int n = s.n();
    const double q = 2.0 * std::sqrt(-H);
    const auto J = numkit::CumulativeIntegral::uniform(
        [H, n, q, l](double t) { return std::pow(model::sn(H, t), n - 1) * std::exp(std::cosh(q * t) + l * t); }, 0.0,
        R, 64, numkit::kPrecise);
    const double e3k = std::exp(3.0 * k);
    auto ev = [&](double t) -> Sample {
        if (t == 0.0) return {0.0, 0.0};
        return {vf.volume(t) / omega, e3k * J(std::min(t, J.upper()))};
    };
    auto grid = [R](std::size_t N) { return detail::uniform_open(0.0, R, N); };
    detail::run_grid(rep, detail::grid_maker({}, grid, opt.grid_points), ev, opt);
    return rep;
}

std::vector<double> volume_monotone_quantity(const smms::WarpedSMMS& s, double H, Bound bound, double l,
                                             const std::vector<double>& grid) {
    if (grid.empty()) return {};
    const double hi = std::min(s.r_max(), model::conjugate_radius(H));
    detail::validate_grid(grid, 0.0, hi, true, "volume_monotone_quantity");
    if (!(l >= 0.0)) throw DomainError("volume_monotone_quantity: l must be >= 0");
    const ModelChoice mc = model_for(s.n(), bound, H);
    const double T = grid.back();
    const smms::WeightedVolume vf(s, T);
    const model::ModelVolume mv(mc.space, T);
    const auto G = growth_integral(mv, mc.c * l, T);
    std::vector<double> out;
    out.reserve(grid.size());
    for (double r : grid) out.push_back(vf.volume(r) / mv.volume(r) * std::exp(-G(std::min(r, G.upper()))));
    return out;
}

}  // namespace becomp::comparison
