#include "becomp/smms.hpp"

#include "becomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace becomp::smms {

namespace {

constexpr double kEndTol = 1e-8;
constexpr int kPositivityGrid = 1024;
constexpr int kConsistencyGrid = 64;

[[noreturn]] void invariant_fail(const std::string& space, const std::string& what) {
    throw InvariantError(space + ": " + what);
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

// Richardson central difference used as the consistency reference.
double central(const std::function<double(double)>& g, double r, double h) {
    auto d = [&](double s) { return (g(r + s) - g(r - s)) / (2.0 * s); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

}  // namespace

WarpedSMMS::WarpedSMMS(int n, RadialProfile w, RadialProfile f, double r_max, bool closed, std::string name,
                       std::map<std::string, double> params)
    : n_(n), r_max_(r_max), closed_(closed), name_(std::move(name)), params_(std::move(params)) {
    if (n < 2) invariant_fail(name_, "n must be >= 2, got " + std::to_string(n));
    if (!(r_max > 0.0) || !std::isfinite(r_max)) invariant_fail(name_, "r_max must be positive and finite");
    const double h = std::max(1e-6, 1e-4 * r_max);
    w_ = w.with_domain(0.0, r_max, h);
    f_ = f.with_domain(0.0, r_max, h);
    validate();
}

double WarpedSMMS::clamp_interior(double r) const {
    const double hi = closed_ ? r_max_ - r0() : r_max_;
    return std::clamp(r, r0(), hi);
}

bool WarpedSMMS::reflection_symmetric() const {
    if (!closed_) return false;
    for (int i = 1; i < 64; ++i) {
        const double r = r_max_ * i / 128.0;
        const double a = w_.eval(r), b = w_.eval(r_max_ - r);
        if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(a))) return false;
    }
    return true;
}

void WarpedSMMS::validate() const {
    const double w0 = w_.eval(0.0), w1 = w_.d1(0.0);
    if (std::abs(w0) > kEndTol) invariant_fail(name_, "w(0) = " + fmt(w0) + ", expected 0");
    if (std::abs(w1 - 1.0) > kEndTol) invariant_fail(name_, "w'(0) = " + fmt(w1) + ", expected 1");
    if (closed_) {
        const double we = w_.eval(r_max_), we1 = w_.d1(r_max_);
        if (std::abs(we) > kEndTol) invariant_fail(name_, "closed space needs w(r_max) = 0, got " + fmt(we));
        if (std::abs(we1 + 1.0) > kEndTol)
            invariant_fail(name_, "closed space needs w'(r_max) = -1, got " + fmt(we1));
    }
    for (int i = 1; i < kPositivityGrid; ++i) {
        const double r = r_max_ * i / kPositivityGrid;
        const double v = w_.eval(r);
        if (!(v > 0.0) || !std::isfinite(v))
            invariant_fail(name_, "w must be positive on (0, r_max); w(" + fmt(r) + ") = " + fmt(v));
    }
    if (!closed_) {
        const double v = w_.eval(r_max_);
        if (!(v > 0.0)) invariant_fail(name_, "w must be positive at r_max for an open space");
    }
    for (int i = 0; i < kPositivityGrid; ++i) {
        const double r = r_max_ * (i + 0.5) / kPositivityGrid;
        if (!std::isfinite(f_.eval(r))) invariant_fail(name_, "f is not finite at r = " + fmt(r));
    }

    // Analytic derivatives must agree with differences of the lower order.
    const double h = 1e-4 * r_max_;
    auto consistent = [&](const RadialProfile& p, const char* label) {
        for (int i = 1; i < kConsistencyGrid; ++i) {
            const double r = r_max_ * i / kConsistencyGrid;
            if (p.has_analytic_d1()) {
                const double want = central([&p](double x) { return p.eval(x); }, r, h);
                const double got = p.d1(r);
                if (std::abs(got - want) > 1e-6 * (1.0 + std::abs(want)))
                    invariant_fail(name_, std::string(label) + "' inconsistent with " + label + " at r = " + fmt(r));
            }
            if (p.has_analytic_d1() && p.has_analytic_d2()) {
                const double want = central([&p](double x) { return p.d1(x); }, r, h);
                const double got = p.d2(r);
                if (std::abs(got - want) > 1e-6 * (1.0 + std::abs(want)))
                    invariant_fail(name_, std::string(label) + "'' inconsistent with " + label + "' at r = " + fmt(r));
            }
        }
    };
    consistent(w_, "w");
    consistent(f_, "f");
}

}  // namespace becomp::smms
