#include "becomp/smms.hpp"

#include "becomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace becomp::smms {

RadialProfile::RadialProfile()
    : eval_([](double) { return 0.0; }), d1_([](double) { return 0.0; }), d2_([](double) { return 0.0; }) {}

RadialProfile::RadialProfile(Fn eval, Fn d1, Fn d2) : eval_(std::move(eval)), d1_(std::move(d1)), d2_(std::move(d2)) {
    if (!eval_) throw SpecError("RadialProfile: missing evaluation function");
}

RadialProfile RadialProfile::with_domain(double lo, double hi, double step) const {
    RadialProfile p = *this;
    p.lo_ = lo;
    p.hi_ = hi;
    p.step_ = step;
    return p;
}

double RadialProfile::d1(double r) const { return d1_ ? d1_(r) : fd1(r); }
double RadialProfile::d2(double r) const { return d2_ ? d2_(r) : fd2(r); }

double RadialProfile::fd1(double r) const {
    const double h = step_;
    const auto& f = eval_;
    if (r - h >= lo_ && r + h <= hi_) {
        auto central = [&](double s) { return (f(r + s) - f(r - s)) / (2.0 * s); };
        return (4.0 * central(0.5 * h) - central(h)) / 3.0;
    }
    // Fourth-order one-sided stencil pointing into the domain.
    const double s = (r - h < lo_) ? h : -h;
    return (-25.0 * f(r) + 48.0 * f(r + s) - 36.0 * f(r + 2 * s) + 16.0 * f(r + 3 * s) - 3.0 * f(r + 4 * s)) /
           (12.0 * s);
}

double RadialProfile::fd2(double r) const {
    const double h = step_;
    if (d1_) {
        // Differentiate the analytic first derivative instead.
        const auto& g = d1_;
        if (r - h >= lo_ && r + h <= hi_) {
            auto central = [&](double s) { return (g(r + s) - g(r - s)) / (2.0 * s); };
            return (4.0 * central(0.5 * h) - central(h)) / 3.0;
        }
        const double s = (r - h < lo_) ? h : -h;
        return (-25.0 * g(r) + 48.0 * g(r + s) - 36.0 * g(r + 2 * s) + 16.0 * g(r + 3 * s) - 3.0 * g(r + 4 * s)) /
               (12.0 * s);
    }
    const auto& f = eval_;
    if (r - h >= lo_ && r + h <= hi_) {
        auto central = [&](double s) { return (f(r + s) - 2.0 * f(r) + f(r - s)) / (s * s); };
        return (4.0 * central(0.5 * h) - central(h)) / 3.0;
    }
    const double s = (r - h < lo_) ? h : -h;
    return (45.0 * f(r) - 154.0 * f(r + s) + 214.0 * f(r + 2 * s) - 156.0 * f(r + 3 * s) + 61.0 * f(r + 4 * s) -
            10.0 * f(r + 5 * s)) /
           (12.0 * s * s);
}

RadialProfile RadialProfile::operator+(const RadialProfile& other) const {
    Fn a = eval_, b = other.eval_;
    Fn d1, d2;
    if (d1_ && other.d1_) d1 = [x = d1_, y = other.d1_](double r) { return x(r) + y(r); };
    if (d2_ && other.d2_) d2 = [x = d2_, y = other.d2_](double r) { return x(r) + y(r); };
    RadialProfile sum([a, b](double r) { return a(r) + b(r); }, d1, d2);
    sum.lo_ = std::max(lo_, other.lo_);
    sum.hi_ = std::min(hi_, other.hi_);
    sum.step_ = std::max(step_, other.step_);
    return sum;
}

RadialProfile RadialProfile::constant(double c) {
    return RadialProfile([c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; });
}

RadialProfile RadialProfile::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw SpecError("polynomial profile: coeffs must not be empty");
    auto horner = [](const std::vector<double>& c, double r) {
        double v = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * r + *it;
        return v;
    };
    std::vector<double> c1, c2;
    for (std::size_t i = 1; i < coeffs.size(); ++i) c1.push_back(static_cast<double>(i) * coeffs[i]);
    for (std::size_t i = 1; i < c1.size(); ++i) c2.push_back(static_cast<double>(i) * c1[i]);
    return RadialProfile([horner, coeffs](double r) { return horner(coeffs, r); },
                         [horner, c1](double r) { return horner(c1, r); },
                         [horner, c2](double r) { return horner(c2, r); });
}

RadialProfile RadialProfile::fourier(std::vector<double> coeffs) {
    if (coeffs.empty()) throw SpecError("fourier profile: coeffs must not be empty");
    auto sum = [coeffs](double r, int order) {
        double v = order == 0 ? coeffs[0] : 0.0;
        for (std::size_t i = 1; i < coeffs.size(); ++i) {
            const double j = static_cast<double>((i + 1) / 2);
            const bool is_cos = (i % 2) == 1;
            const double c = std::cos(j * r), s = std::sin(j * r);
            double term;
            switch (order) {
                case 0: term = is_cos ? c : s; break;
                case 1: term = is_cos ? -j * s : j * c; break;
                default: term = is_cos ? -j * j * c : -j * j * s; break;
            }
            v += coeffs[i] * term;
        }
        return v;
    };
    return RadialProfile([sum](double r) { return sum(r, 0); }, [sum](double r) { return sum(r, 1); },
                         [sum](double r) { return sum(r, 2); });
}

namespace {

struct Spline {
    std::vector<double> x, y, m;  // m = second derivatives at the nodes

    std::size_t interval(double r) const {
        auto it = std::upper_bound(x.begin(), x.end(), r);
        std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
        return std::min(i, x.size() - 2);
    }

    double eval(double r, int order) const {
        if (r < x.front() || r > x.back()) {
            // Linear continuation (natural end conditions make this C^2).
            const bool left = r < x.front();
            const double x0 = left ? x.front() : x.back();
            const double y0 = left ? y.front() : y.back();
            const double s = eval(x0, 1);
            if (order == 0) return y0 + s * (r - x0);
            return order == 1 ? s : 0.0;
        }
        const std::size_t i = interval(r);
        const double h = x[i + 1] - x[i];
        const double a = (x[i + 1] - r) / h, b = (r - x[i]) / h;
        switch (order) {
            case 0: return a * y[i] + b * y[i + 1] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
            case 1:
                return (y[i + 1] - y[i]) / h - (3.0 * a * a - 1.0) / 6.0 * h * m[i] +
                       (3.0 * b * b - 1.0) / 6.0 * h * m[i + 1];
            default: return a * m[i] + b * m[i + 1];
        }
    }
};

}  // namespace

RadialProfile RadialProfile::table(std::vector<double> nodes, std::vector<double> values) {
    if (nodes.size() < 8) throw SpecError("table profile: at least 8 nodes are required");
    if (values.size() != nodes.size()) throw SpecError("table profile: values must have the same length as nodes");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1])) throw SpecError("table profile: nodes must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw SpecError("table profile: values must be finite");

    auto sp = std::make_shared<Spline>();
    sp->x = std::move(nodes);
    sp->y = std::move(values);
    const std::size_t n = sp->x.size();
    sp->m.assign(n, 0.0);
    // Natural spline: tridiagonal system for interior second derivatives.
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = sp->x[i] - sp->x[i - 1], h1 = sp->x[i + 1] - sp->x[i];
        const double diag = 2.0 * (h0 + h1);
        const double rhs = 6.0 * ((sp->y[i + 1] - sp->y[i]) / h1 - (sp->y[i] - sp->y[i - 1]) / h0);
        const double denom = diag - h0 * c[i - 1];
        c[i] = h1 / denom;
        d[i] = (rhs - h0 * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) sp->m[i] = d[i] - c[i] * sp->m[i + 1];

    return RadialProfile([sp](double r) { return sp->eval(r, 0); }, [sp](double r) { return sp->eval(r, 1); },
                         [sp](double r) { return sp->eval(r, 2); });
}

}  // namespace becomp::smms
