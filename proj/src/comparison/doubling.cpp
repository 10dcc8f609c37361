#include "detail.hpp"

#include "becomp/error.hpp"
#include "becomp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace becomp::comparison {

namespace {

model::ModelSpace doubling_model(int n, Bound bound, double H) {
    if (bound.kind == Bound::Kind::Potential) return model::ModelSpace(n + 4.0 * bound.value, H, 0.0);
    return model::ModelSpace(n, H, bound.value);
}

double doubling_c(int n, Bound bound, double H) {
    return bound.kind == Bound::Kind::Potential ? model::c_const(n, bound.value, H) : 1.0;
}

void check_doubling_args(int n, Bound bound, double H, double R) {
    if (n < 2) throw DomainError("doubling: n must be >= 2");
    if (!(bound.value >= 0.0) || !std::isfinite(bound.value)) throw DomainError("doubling: k or a must be >= 0");
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("doubling: R must be positive");
    const bool quarter = bound.kind == Bound::Kind::Potential;
    if (H > 0.0 && R > range_limit(H, quarter) * (1.0 + 1e-12))
        throw DomainError(std::string("doubling: R exceeds ") + (quarter ? "pi/(4 sqrt(H))" : "pi/(2 sqrt(H))"));
}

double F_with(const model::ModelVolume& mv, double c, double R, double sigma) {
    const double s = c * sigma;
    return numkit::quad_adaptive([&](double t) { return mv.growth_integrand(s, t); }, 0.0, R, numkit::kPrecise).value;
}

}  // namespace

double doubling_F(int n, Bound bound, double H, double R, double sigma) {
    check_doubling_args(n, bound, H, R);
    if (!(sigma >= 0.0)) throw DomainError("doubling_F: sigma must be >= 0");
    const model::ModelVolume mv(doubling_model(n, bound, H), R);
    return F_with(mv, doubling_c(n, bound, H), R, sigma);
}

DoublingCertificate doubling_epsilon(int n, Bound bound, double H, double R, double alpha) {
    check_doubling_args(n, bound, H, R);
    if (!(alpha > 1.0) || !std::isfinite(alpha)) throw DomainError("doubling_epsilon: alpha must be > 1");
    const model::ModelVolume mv(doubling_model(n, bound, H), R);
    const double c = doubling_c(n, bound, H);
    const double target = std::log(alpha);
    auto F = [&](double sigma) { return F_with(mv, c, R, sigma); };

    // e^{c sigma R} must stay representable.
    const double cap = 700.0 / (c * R);
    double hi = 1.0 / R;
    while (F(hi) < target) {
        if (hi >= cap) {
            std::ostringstream os;
            os << "doubling_epsilon: F(sigma) stays below ln(alpha) up to sigma_cap = " << cap;
            throw NumericError(NumericError::Kind::BracketNotFound, os.str());
        }
        hi = std::min(2.0 * hi, cap);
    }
    const numkit::Tolerance tol{1e-15, 1e-12, 100000};
    const numkit::RootBracket br = numkit::bracket_root([&](double x) { return F(x) - target; }, 0.0, hi, tol);
    // The lower end keeps e^{F(eps)} <= alpha.
    const double Fx = F(br.x);
    double eps = br.lo, Feps = F(br.lo);
    if (Fx <= target && br.x > eps) {
        eps = br.x;
        Feps = Fx;
    }
    return {n, bound, H, R, alpha, eps, Feps, cap};
}

ComparisonReport check_doubling(const smms::WarpedSMMS& s, double H, Bound bound, double alpha, double R,
                                double epsilon, const CheckOptions& opt) {
    check_doubling_args(s.n(), bound, H, R);
    if (!(alpha > 1.0)) throw DomainError("DOUBLING: alpha must be > 1");
    if (!(epsilon >= 0.0)) throw DomainError("DOUBLING: epsilon must be >= 0");
    if (R > s.r_max() * (1.0 + 1e-12)) throw DomainError("DOUBLING: R exceeds r_max");
    detail::require_bound(s, bound, "DOUBLING");
    const double l = resolve_l(s, H, R, opt);

    ComparisonReport rep;
    rep.theorem_id = TheoremId::DOUBLING;
    detail::set_common_params(rep, s, H, opt);
    rep.params[bound.kind == Bound::Kind::Potential ? "k" : "a"] = bound.value;
    rep.params["alpha"] = alpha;
    rep.params["epsilon"] = epsilon;
    rep.params["R"] = R;
    rep.params["l"] = l;

    if (l > epsilon) {
        std::ostringstream os;
        os.precision(12);
        os << "hypothesis l <= epsilon fails: l = " << l << ", epsilon = " << epsilon;
        rep.notes["not_applicable"] = os.str();
        rep.min_margin = std::numeric_limits<double>::quiet_NaN();
        rep.min_margin_at = std::numeric_limits<double>::quiet_NaN();
        rep.tolerance = opt.tol.abs;
        rep.pass = false;
        rep.verdict = Verdict::NotApplicable;
        return rep;
    }

    const smms::WeightedVolume vf(s, R);
    const model::ModelVolume mv(doubling_model(s.n(), bound, H), R);
    rep.notes["pairs"] = "per r2 the r1 < r2 on the grid with the largest ratio";

    // Grid points arrive in increasing order; a new pass (refinement) restarts
    // the running minimum of V_f/V_model over earlier radii.
    double last = std::numeric_limits<double>::infinity();
    double running_min = std::numeric_limits<double>::infinity();
    auto ev = [&](double r2) -> detail::Sample {
        if (!(r2 > last)) running_min = std::numeric_limits<double>::infinity();
        last = r2;
        const double g = vf.volume(r2) / mv.volume(r2);
        const double worst = std::isfinite(running_min) ? g / running_min : 1.0;
        running_min = std::min(running_min, g);
        return {worst, alpha};
    };
    auto grid = [R](std::size_t N) { return detail::uniform_open(0.0, R, N); };
    detail::run_grid(rep, detail::grid_maker({}, grid, opt.grid_points), ev, opt);
    return rep;
}

}  // namespace becomp::comparison
