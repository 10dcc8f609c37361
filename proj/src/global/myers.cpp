#include "becomp/global.hpp"

#include "becomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace becomp::global {

namespace {

constexpr double pi = std::numbers::pi;

void check_args(const char* op, int n, double H, double b, double l) {
    std::ostringstream os;
    os << op << ": ";
    if (!(H > 0.0) || !std::isfinite(H)) {
        os << "requires H > 0, got " << H;
        throw DomainError(os.str());
    }
    if (n < 2) throw DomainError(os.str() + "n must be >= 2");
    if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError(os.str() + "bound on f must be finite and >= 0");
    if (!(l >= 0.0) || !std::isfinite(l)) throw DomainError(os.str() + "l must be finite and >= 0");
}

}  // namespace

double myers_bound_bounded_f(int n, double H, double k, double l) {
    check_args("myers_bound_bounded_f", n, H, k, l);
    return pi / std::sqrt(H) + (4.0 * k * std::sqrt(H) + 2.0 * l) / ((n - 1) * H);
}

double myers_bound_gradient(int n, double H, double a, double l) {
    check_args("myers_bound_gradient", n, H, a, l);
    return pi / std::sqrt(H) + (2.0 * a + 2.0 * l) / ((n - 1) * H);
}

double myers_bound_indexform(int n, double H, double k, double l) {
    check_args("myers_bound_indexform", n, H, k, l);
    const double m = n - 1;
    const double inner = 1.0 + 8.0 * k / (m * pi) + l * l / (m * m * H * pi * pi);
    return 2.0 * pi / std::sqrt(H) * std::sqrt(inner) + 2.0 * l / (m * H);
}

double actual_diameter(const smms::WarpedSMMS& s) {
    if (!s.closed()) throw DomainError("actual_diameter: space '" + s.name() + "' is not closed");
    return s.r_max();
}

double chord_excess(const smms::WarpedSMMS& s, std::size_t samples) {
    if (!s.closed()) throw DomainError("chord_excess: space '" + s.name() + "' is not closed");
    const double L = s.r_max();
    const std::size_t N = std::max<std::size_t>(samples, 2);
    double worst = -L;
    for (std::size_t i = 0; i < N; ++i) {
        const double r1 = L * static_cast<double>(i) / static_cast<double>(N - 1);
        for (std::size_t j = i; j < N; ++j) {
            const double r2 = L * static_cast<double>(j) / static_cast<double>(N - 1);
            worst = std::max(worst, std::min(r1 + r2, 2.0 * L - r1 - r2) - L);
        }
    }
    return worst;
}

double index_form_total(const smms::WarpedSMMS& s, double L) {
    if (!(L > 0.0) || L > s.r_max() * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "index_form_total: L = " << L << " outside (0, r_max = " << s.r_max() << "]";
        throw DomainError(os.str());
    }
    L = std::min(L, s.r_max());
    const double w = pi / L;
    const int n = s.n();
    auto integrand = [&](double t) {
        const double c = std::cos(w * t), sn = std::sin(w * t);
        return (n - 1) * w * w * c * c - sn * sn * smms::ricci_radial(s, t);
    };
    return numkit::quad_adaptive(integrand, 0.0, L, smms::kRhoTol).value;
}

DiameterReport check_myers(const smms::WarpedSMMS& s, double H, smms::RhoMode mode, std::optional<double> l_override) {
    if (!s.closed()) throw DomainError("check_myers: space '" + s.name() + "' is not closed");
    if (!(H > 0.0)) throw DomainError("check_myers: requires H > 0");
    DiameterReport rep;
    rep.n = s.n();
    rep.H = H;
    rep.mode = mode;
    const smms::PotentialBounds pb = smms::potential_bounds(s);
    rep.k = pb.k;
    rep.a = pb.grad_sup;
    rep.l = l_override ? *l_override : smms::integral_rho(s, H, s.r_max(), mode);
    if (!std::isfinite(rep.l) || !std::isfinite(rep.k) || !std::isfinite(rep.a))
        throw HypothesisError("check_myers: hypotheses (k, a, l) are not finite on this space");

    rep.bounds["MYERS_F"] = myers_bound_bounded_f(rep.n, H, rep.k, rep.l);
    rep.bounds["MYERS_GRAD"] = myers_bound_gradient(rep.n, H, rep.a, rep.l);
    rep.bounds["MYERS_INDEX"] = myers_bound_indexform(rep.n, H, rep.k, rep.l);
    rep.actual_diameter = actual_diameter(s);
    rep.chord_caveat = chord_excess(s) > 1e-12;
    rep.hypothesis_coverage = s.reflection_symmetric()
                                  ? "rho integral verified from the pole and, by reflection symmetry, the antipode"
                                  : "rho integral verified from the pole only";
    rep.pass = true;
    for (const auto& [name, bound] : rep.bounds)
        if (*rep.actual_diameter > bound + 1e-9) rep.pass = false;
    return rep;
}

}  // namespace becomp::global
