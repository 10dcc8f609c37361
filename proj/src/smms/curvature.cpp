#include "becomp/smms.hpp"

#include "becomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace becomp::smms {

namespace {

void check_range(const WarpedSMMS& s, double r, const char* op) {
    if (!(r >= 0.0) || r > s.r_max() * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << op << ": r = " << r << " outside [0, r_max = " << s.r_max() << "]";
        throw DomainError(os.str());
    }
}

// w''/w and (1 - w'^2)/w^2 are even in the distance to a smooth pole but
// lose digits as w -> 0. Inside a cap of 1e-3 r_max they are continued from
// two outside samples by a quadratic in that distance.
double pole_even(const WarpedSMMS& s, double r, const std::function<double(double)>& q) {
    const double cap = 1e-3 * s.r_max();
    double pole = 0.0, dir = 1.0, d = r;
    if (s.closed() && s.r_max() - r < r) {
        pole = s.r_max();
        dir = -1.0;
        d = s.r_max() - r;
    }
    if (d >= cap) return q(r);
    const double q1 = q(pole + dir * cap), q2 = q(pole + dir * 2.0 * cap);
    return q1 + (q2 - q1) * (d * d - cap * cap) / (3.0 * cap * cap);
}

double w2_over_w(const WarpedSMMS& s, double r) {
    return pole_even(s, r, [&s](double x) { return s.w().d2(x) / s.w().eval(x); });
}

}  // namespace

const char* to_string(RhoMode mode) { return mode == RhoMode::Radial ? "radial" : "full"; }

RhoMode rho_mode_from_string(const std::string& s) {
    if (s == "radial") return RhoMode::Radial;
    if (s == "full") return RhoMode::Full;
    throw SpecError("mode must be 'radial' or 'full', got '" + s + "'");
}

double ricci_radial(const WarpedSMMS& s, double r) {
    check_range(s, r, "ricci_radial");
    return -(s.n() - 1) * w2_over_w(s, std::min(r, s.r_max()));
}

double ricci_tangential(const WarpedSMMS& s, double r) {
    check_range(s, r, "ricci_tangential");
    r = std::min(r, s.r_max());
    const double defect = pole_even(s, r, [&s](double x) {
        const double w = s.w().eval(x), w1 = s.w().d1(x);
        return (1.0 - w1) * (1.0 + w1) / (w * w);
    });
    return -w2_over_w(s, r) + (s.n() - 2) * defect;
}

double bakry_emery_radial(const WarpedSMMS& s, double r) {
    check_range(s, r, "bakry_emery_radial");
    r = std::min(r, s.r_max());
    return -(s.n() - 1) * w2_over_w(s, r) + s.f().d2(r);
}

double bakry_emery_tangential(const WarpedSMMS& s, double r) {
    const double ric = ricci_tangential(s, r);
    const double x = s.clamp_interior(r);
    return ric + s.f().d1(x) * s.w().d1(x) / s.w().eval(x);
}

double ricci_f_smallest_eigenvalue(const WarpedSMMS& s, double r) {
    return std::min(bakry_emery_radial(s, r), bakry_emery_tangential(s, r));
}

double mean_curvature(const WarpedSMMS& s, double r) {
    if (!(r > 0.0)) throw DomainError("mean_curvature: r must be positive (pole at r = 0)");
    if (s.closed() && r >= s.r_max()) throw DomainError("mean_curvature: r reaches the antipodal pole");
    check_range(s, r, "mean_curvature");
    return (s.n() - 1) * s.w().d1(r) / s.w().eval(r);
}

double mean_curvature_f(const WarpedSMMS& s, double r) { return mean_curvature(s, r) - s.f().d1(r); }

double rho(const WarpedSMMS& s, double H, double r, RhoMode mode) {
    const double lambda = mode == RhoMode::Radial ? bakry_emery_radial(s, r) : ricci_f_smallest_eigenvalue(s, r);
    return std::max(0.0, (s.n() - 1) * H - lambda);
}

double integral_rho(const WarpedSMMS& s, double H, double r, RhoMode mode, const numkit::Tolerance& tol) {
    if (!(r >= 0.0)) throw DomainError("integral_rho: r must be >= 0");
    const double upper = std::min(r, s.r_max());
    return numkit::quad_adaptive([&](double t) { return rho(s, H, t, mode); }, 0.0, upper, tol).value;
}

numkit::CumulativeIntegral cumulative_rho(const WarpedSMMS& s, double H, double upper, RhoMode mode,
                                          std::size_t panels, const numkit::Tolerance& tol) {
    if (!(upper > 0.0)) throw DomainError("cumulative_rho: upper limit must be positive");
    upper = std::min(upper, s.r_max());
    auto space = std::make_shared<const WarpedSMMS>(s);
    return numkit::CumulativeIntegral::uniform([space, H, mode](double t) { return rho(*space, H, t, mode); }, 0.0,
                                               upper, panels, tol);
}

std::vector<CurvatureSample> sample_curvature(const WarpedSMMS& s, double H, const std::vector<double>& grid,
                                              RhoMode mode) {
    std::vector<CurvatureSample> out;
    if (grid.empty()) return out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1])))
            throw DomainError("sample_curvature: grid must be positive and strictly increasing");
    }
    const auto I = cumulative_rho(s, H, grid.back(), mode);
    out.reserve(grid.size());
    for (double r : grid) {
        CurvatureSample c;
        c.r = r;
        c.ric_radial = ricci_radial(s, r);
        c.ric_f_radial = bakry_emery_radial(s, r);
        c.lambda_min = ricci_f_smallest_eigenvalue(s, r);
        c.m = mean_curvature(s, r);
        c.m_f = mean_curvature_f(s, r);
        c.rho = rho(s, H, r, mode);
        c.rho_integral = I(std::min(r, I.upper()));
        out.push_back(c);
    }
    return out;
}

namespace {

/// Golden-section maximization of g on [lo, hi].
double golden_max(const std::function<double(double)>& g, double lo, double hi, double best) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double g1 = g(x1), g2 = g(x2);
    for (int it = 0; it < 80 && b - a > 1e-14 * (1.0 + std::abs(b)); ++it) {
        if (g1 < g2) {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + phi * (b - a);
            g2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - phi * (b - a);
            g1 = g(x1);
        }
    }
    return std::max({best, g1, g2, g(lo), g(hi)});
}

struct GridMax {
    double value;
    double at;
};

GridMax grid_max(const std::function<double(double)>& g, double r_max, std::size_t N) {
    GridMax m{-1e300, 0.0};
    for (std::size_t i = 0; i <= N; ++i) {
        const double r = r_max * static_cast<double>(i) / static_cast<double>(N);
        const double v = g(r);
        if (v > m.value) m = {v, r};
    }
    return m;
}

}  // namespace

PotentialBounds potential_bounds(const WarpedSMMS& s) {
    const RadialProfile& f = s.f();
    const double R = s.r_max();
    std::function<double(double)> abs_f = [&f](double r) { return std::abs(f.eval(r)); };
    std::function<double(double)> neg_df = [&f](double r) { return -f.d1(r); };
    std::function<double(double)> abs_df = [&f](double r) { return std::abs(f.d1(r)); };

    std::size_t N = 256;
    GridMax k = grid_max(abs_f, R, N), a = grid_max(neg_df, R, N), g = grid_max(abs_df, R, N);
    while (N < 65536) {
        const std::size_t M = 2 * N;
        const GridMax k2 = grid_max(abs_f, R, M), a2 = grid_max(neg_df, R, M), g2 = grid_max(abs_df, R, M);
        const bool settled = std::abs(k2.value - k.value) <= 1e-9 * (1.0 + std::abs(k.value)) &&
                             std::abs(a2.value - a.value) <= 1e-9 * (1.0 + std::abs(a.value)) &&
                             std::abs(g2.value - g.value) <= 1e-9 * (1.0 + std::abs(g.value));
        k = k2;
        a = a2;
        g = g2;
        N = M;
        if (settled) break;
    }
    const double cell = R / static_cast<double>(N);
    auto refine = [&](const std::function<double(double)>& fn, const GridMax& m) {
        return golden_max(fn, std::max(0.0, m.at - cell), std::min(R, m.at + cell), m.value);
    };
    PotentialBounds out;
    out.k = refine(abs_f, k);
    out.a = std::max(0.0, refine(neg_df, a));
    out.grad_sup = refine(abs_df, g);
    out.grid_points = N + 1;
    return out;
}

}  // namespace becomp::smms
