#include "becomp/eigen.hpp"

#include "becomp/error.hpp"
#include "becomp/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace becomp::eigen {

namespace {

// int_0^R g in 256 panels; the dense output is only piecewise smooth, and
// short panels keep adaptive refinement local to its joints.
double integrate_on_nodes(const std::function<double(double)>& g, const EigenResult& e, double abs_tol = 1e-300) {
    std::vector<double> knots{0.0};
    const std::size_t pieces = 256;
    for (std::size_t i = 1; i <= pieces; ++i) knots.push_back(e.R * static_cast<double>(i) / pieces);
    const numkit::Tolerance tol{abs_tol, 1e-12, 2000000};
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) sum += numkit::quad_adaptive(g, knots[i], knots[i + 1], tol).value;
    return sum;
}

EigenResult transplant_source(const smms::WarpedSMMS& s, double a, double H, double R) {
    if (!(R > 0.0) || !(s.closed() ? R < s.r_max() : R <= s.r_max() * (1.0 + 1e-12)))
        throw DomainError("rayleigh_quotient_transplant: R must lie in (0, r_max)");
    return model_eigenvalue(s.n(), a, H, R);
}

}  // namespace

double rayleigh_quotient_transplant(const smms::WarpedSMMS& s, double a, double H, double R) {
    const EigenResult e = transplant_source(s, a, H, R);
    const double num = integrate_on_nodes(
        [&](double r) {
            const double d = e.dphi(r);
            return d * d * smms::weighted_area(s, r);
        },
        e);
    const double den = integrate_on_nodes(
        [&](double r) {
            const double p = e.phi(r);
            return p * p * smms::weighted_area(s, r);
        },
        e);
    return num / den;
}

double transplant_error_term(const smms::WarpedSMMS& s, double a, double H, double R) {
    const EigenResult e = transplant_source(s, a, H, R);
    const int n = s.n();
    const double r0 = 1e-6 * R;
    const double num = integrate_on_nodes(
        [&](double r) {
            const double x = std::max(r, r0);
            const double excess = smms::mean_curvature_f(s, x) - model::mean_curvature_model(n, H, x) - a;
            return std::max(0.0, excess) * std::abs(e.dphi(r)) * smms::weighted_area(s, r);
        },
        e, 1e-16);
    const double den = integrate_on_nodes(
        [&](double r) {
            const double p = e.phi(r);
            return p * p * smms::weighted_area(s, r);
        },
        e);
    return num / den;
}

ChengConstants cheng_constants(int n, double a, double H, double R, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("cheng_epsilon: delta must be > 0");
    const EigenResult e = model_eigenvalue(n, a, H, R);
    const model::ModelSpace m(n, H, a);
    ChengConstants c{};
    c.lambda_model = e.lambda;
    c.r_half = e.r_half;
    c.C = 4.0 * std::sqrt(model::volume_model(m, R) / model::volume_model(m, e.r_half));
    c.from_rayleigh = delta * std::sqrt(e.lambda) / (c.C * std::sqrt(1.0 + delta));
    c.from_doubling = comparison::doubling_epsilon(n, comparison::Bound::drift(a), H, R, 4.0).epsilon;
    c.epsilon = std::min(c.from_rayleigh, c.from_doubling);
    return c;
}

double cheng_epsilon(int n, double a, double H, double R, double delta) {
    return cheng_constants(n, a, H, R, delta).epsilon;
}

ChengReport check_cheng_estimate(const smms::WarpedSMMS& s, double H, double a, double R, double delta,
                                 smms::RhoMode mode) {
    const smms::PotentialBounds pb = smms::potential_bounds(s);
    if (pb.a > a + 1e-12 * (1.0 + a)) {
        std::ostringstream os;
        os.precision(12);
        os << "check_cheng_estimate: a = " << a << " is below sup(-f') = " << pb.a;
        throw HypothesisError(os.str());
    }
    ChengReport rep;
    rep.n = s.n();
    rep.H = H;
    rep.a = a;
    rep.R = R;
    rep.delta = delta;
    rep.constants = cheng_constants(s.n(), a, H, R, delta);
    rep.l = smms::integral_rho(s, H, s.r_max(), mode);
    rep.lambda_model = rep.constants.lambda_model;
    rep.lambda_smms = smms_radial_eigenvalue(s, R).lambda;
    rep.ratio = rep.lambda_smms / rep.lambda_model;
    rep.rayleigh_quotient = rayleigh_quotient_transplant(s, a, H, R);
    const double rhs = (1.0 + delta) * rep.lambda_model;
    rep.tolerance = comparison::InequalityTolerance{}.allowed(rhs);
    rep.pass = rep.lambda_smms <= rhs + rep.tolerance;
    if (rep.l > rep.constants.epsilon) {
        std::ostringstream os;
        os.precision(12);
        os << "hypothesis l <= epsilon fails: l = " << rep.l << ", epsilon = " << rep.constants.epsilon;
        rep.note = os.str();
        rep.verdict = comparison::Verdict::NotApplicable;
    } else {
        rep.note = "radial eigenfunctions only";
        rep.verdict = rep.pass ? comparison::Verdict::Pass : comparison::Verdict::Fail;
    }
    return rep;
}

}  // namespace becomp::eigen
