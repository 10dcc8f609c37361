#include "becomp/eigen.hpp"

#include "becomp/error.hpp"
#include "becomp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace becomp::eigen {

namespace {

// phi'' + m(r) phi' + lambda phi = 0 with m(r) = (n-1)/r + b + O(r) at the pole.
struct Problem {
    int n;
    double b;
    std::function<double(double)> m;
    double R;
    double r0;
};

// Regular solution near the pole: 1 - lambda r^2/(2n) + b lambda r^3/(3n(n+1)).
double series_phi(const Problem& p, double lambda, double r) {
    return 1.0 - lambda * r * r / (2.0 * p.n) + p.b * lambda * r * r * r / (3.0 * p.n * (p.n + 1.0));
}

double series_dphi(const Problem& p, double lambda, double r) {
    return -lambda * r / p.n + p.b * lambda * r * r / (p.n * (p.n + 1.0));
}

std::shared_ptr<const numkit::OdeTrajectory> shoot(const Problem& p, double lambda, const numkit::Tolerance& tol) {
    const auto& m = p.m;
    numkit::OdeRhs rhs = [&m, lambda](double r, std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = -m(r) * y[1] - lambda * y[0];
    };
    const numkit::State y0{series_phi(p, lambda, p.r0), series_dphi(p, lambda, p.r0)};
    return std::make_shared<const numkit::OdeTrajectory>(numkit::integrate_ode(rhs, p.r0, y0, p.R, tol));
}

// lambda above the first eigenvalue <=> phi reaches zero on (0, R].
bool vanishes(const numkit::OdeTrajectory& tr) {
    for (const auto& node : tr.nodes())
        if (node.y[0] <= 0.0) return true;
    return false;
}

EigenResult solve(const Problem& p, const EigenOptions& opt) {
    if (!(opt.tol > 0.0 && opt.tol < 1.0)) throw DomainError("eigenvalue: tol must lie in (0, 1)");
    EigenResult res;
    res.R = p.R;
    double lo = 0.0;
    double hi = std::numbers::pi * std::numbers::pi / (p.R * p.R);
    int shots = 0;
    const double cap = 1e8 * hi;
    while (!vanishes(*shoot(p, hi, opt.ode))) {
        ++shots;
        lo = hi;
        hi *= 2.0;
        if (hi > cap) {
            std::ostringstream os;
            os << "eigenvalue: no sign change of phi below lambda_cap = " << cap;
            throw NumericError(NumericError::Kind::BracketNotFound, os.str());
        }
    }
    ++shots;
    while (hi - lo > opt.tol * hi) {
        const double mid = 0.5 * (lo + hi);
        ++shots;
        if (vanishes(*shoot(p, mid, opt.ode)))
            hi = mid;
        else
            lo = mid;
    }
    const double lambda = 0.5 * (lo + hi);
    const auto tr = shoot(p, lambda, opt.ode);
    ++shots;
    res.lambda = lambda;
    res.lambda_lo = lo;
    res.lambda_hi = hi;
    res.residual = std::abs(tr->back()[0]);
    res.shots = shots;

    const Problem prob = p;
    res.phi = [prob, lambda, tr](double r) {
        if (r < prob.r0) return series_phi(prob, lambda, std::max(r, 0.0));
        return tr->at(std::min(r, prob.R), 0);
    };
    res.dphi = [prob, lambda, tr](double r) {
        if (r < prob.r0) return series_dphi(prob, lambda, std::max(r, 0.0));
        return tr->at(std::min(r, prob.R), 1);
    };

    const std::size_t N = std::max<std::size_t>(opt.samples, 2);
    res.eigenfunction.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double r = p.R * static_cast<double>(i) / static_cast<double>(N - 1);
        res.eigenfunction.push_back({r, res.phi(r)});
    }

    // First crossing of 1/2 between consecutive nodes, then a bracketed root.
    const auto& nodes = tr->nodes();
    double a = 0.0, b = p.R;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].y[0] <= 0.5) {
            b = nodes[i].t;
            a = i > 0 ? nodes[i - 1].t : 0.0;
            break;
        }
    }
    auto half = [&res](double r) { return res.phi(r) - 0.5; };
    res.r_half = half(b) == 0.0 ? b : numkit::find_root_bracketed(half, a, b, {1e-15, 1e-12, 100000});
    return res;
}

void check_radius(double R, const char* op) {
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError(std::string(op) + ": R must be positive");
}

}  // namespace

EigenResult model_eigenvalue(int n, double a, double H, double R, const EigenOptions& opt) {
    check_radius(R, "model_eigenvalue");
    if (n < 2) throw DomainError("model_eigenvalue: n must be >= 2");
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("model_eigenvalue: a must be >= 0");
    if (H > 0.0 && R > std::numbers::pi / (2.0 * std::sqrt(H)) * (1.0 + 1e-12))
        throw DomainError("model_eigenvalue: R exceeds pi/(2 sqrt(H))");
    Problem p{n, a, [n, a, H](double r) { return model::mean_curvature_model(n, H, r) + a; }, R, 1e-6 * R};
    return solve(p, opt);
}

EigenResult smms_radial_eigenvalue(const smms::WarpedSMMS& s, double R, const EigenOptions& opt) {
    check_radius(R, "smms_radial_eigenvalue");
    const bool inside = s.closed() ? R < s.r_max() : R <= s.r_max() * (1.0 + 1e-12);
    if (!inside) {
        std::ostringstream os;
        os << "smms_radial_eigenvalue: R = " << R << " must lie below r_max = " << s.r_max();
        throw DomainError(os.str());
    }
    R = std::min(R, s.r_max());
    auto space = std::make_shared<const smms::WarpedSMMS>(s);
    Problem p{s.n(), -s.f().d1(0.0), [space](double r) { return smms::mean_curvature_f(*space, r); }, R, 1e-6 * R};
    return solve(p, opt);
}

}  // namespace becomp::eigen
