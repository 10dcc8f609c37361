#include "becomp/numkit.hpp"

#include "becomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace becomp::numkit {

namespace {

constexpr int kInitialPanels = 8;

class Simpson {
public:
    Simpson(const std::function<double(double)>& f, const Tolerance& tol) : f_(f), tol_(tol) {}

    double eval(double x) {
        if (++evals_ > tol_.max_steps) {
            std::ostringstream os;
            os << "quad_adaptive: evaluation budget " << tol_.max_steps << " exhausted";
            throw NumericError(NumericError::Kind::QuadratureLimit, os.str());
        }
        const double v = f_(x);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "quad_adaptive: non-finite integrand at x = " << x;
            throw NumericError(NumericError::Kind::NonFinite, os.str());
        }
        return v;
    }

    double refine(double a, double b, double fa, double fm, double fb, double whole, double eps, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        if (!(a < lm && lm < m && m < rm && rm < b)) {
            // Panel below floating-point resolution.
            return whole;
        }
        const double flm = eval(lm), frm = eval(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() *
                                (std::abs(left) + std::abs(right));
        if (std::abs(delta) <= 15.0 * eps || std::abs(delta) <= roundoff) {
            err_ += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        if (depth >= kSimpsonMaxDepth) {
            failed_ = true;
            fail_at_ = m;
            err_ += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
    }

    double err() const { return err_; }
    bool failed() const { return failed_; }
    double fail_at() const { return fail_at_; }

private:
    const std::function<double(double)>& f_;
    const Tolerance& tol_;
    long evals_ = 0;
    double err_ = 0.0;
    bool failed_ = false;
    double fail_at_ = 0.0;
};

}  // namespace

QuadResult quad_adaptive(const std::function<double(double)>& f, double a, double b, const Tolerance& tol) {
    tol.validate();
    if (!(std::isfinite(a) && std::isfinite(b))) throw std::invalid_argument("quad_adaptive: non-finite limits");
    if (a > b) throw std::invalid_argument("quad_adaptive: requires a <= b");
    if (a == b) return {0.0, 0.0};

    Simpson s(f, tol);
    const int np = kInitialPanels;
    const double h = (b - a) / np;
    std::vector<double> x(2 * np + 1), fx(2 * np + 1);
    for (int i = 0; i <= 2 * np; ++i) {
        x[i] = (i == 2 * np) ? b : a + 0.5 * h * i;
        fx[i] = s.eval(x[i]);
    }
    double estimate = 0.0;
    std::vector<double> whole(np);
    for (int p = 0; p < np; ++p) {
        whole[p] = (x[2 * p + 2] - x[2 * p]) / 6.0 * (fx[2 * p] + 4.0 * fx[2 * p + 1] + fx[2 * p + 2]);
        estimate += whole[p];
    }
    const double target = std::max(tol.abs_tol, tol.rel_tol * std::abs(estimate));

    double total = 0.0;
    for (int p = 0; p < np; ++p) {
        total += s.refine(x[2 * p], x[2 * p + 2], fx[2 * p], fx[2 * p + 1], fx[2 * p + 2], whole[p], target / np, 1);
    }
    if (s.failed()) {
        std::ostringstream os;
        os << "quad_adaptive: subdivision limit " << kSimpsonMaxDepth << " reached near x = " << s.fail_at()
           << " with unmet tolerance";
        throw NumericError(NumericError::Kind::QuadratureLimit, os.str());
    }
    return {total, s.err()};
}

CumulativeIntegral::CumulativeIntegral(std::function<double(double)> f, std::vector<double> knots,
                                       const Tolerance& tol)
    : f_(std::move(f)), knots_(std::move(knots)), tol_(tol) {
    if (knots_.size() < 2) throw std::invalid_argument("CumulativeIntegral: need at least two knots");
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (!(knots_[i] >= knots_[i - 1])) throw std::invalid_argument("CumulativeIntegral: knots must not decrease");
    }
    Tolerance panel = tol_;
    panel.abs_tol = std::max(tol_.abs_tol / static_cast<double>(knots_.size()), 1e-300);
    tol_ = panel;
    prefix_.assign(knots_.size(), 0.0);
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        prefix_[i] = prefix_[i - 1] + quad_adaptive(f_, knots_[i - 1], knots_[i], tol_).value;
    }
}

CumulativeIntegral CumulativeIntegral::uniform(std::function<double(double)> f, double a, double b,
                                               std::size_t panels, const Tolerance& tol) {
    if (panels == 0) throw std::invalid_argument("CumulativeIntegral: zero panels");
    std::vector<double> k(panels + 1);
    for (std::size_t i = 0; i <= panels; ++i) k[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(panels);
    k.back() = b;
    return CumulativeIntegral(std::move(f), std::move(k), tol);
}

double CumulativeIntegral::operator()(double t) const {
    const double lo = knots_.front(), hi = knots_.back();
    const double slack = 1e-12 * std::max(1.0, std::abs(hi - lo));
    if (t < lo - slack || t > hi + slack) {
        std::ostringstream os;
        os << "CumulativeIntegral: t = " << t << " outside [" << lo << ", " << hi << "]";
        throw DomainError(os.str());
    }
    t = std::clamp(t, lo, hi);
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(std::distance(knots_.begin(), it)) - 1;
    if (i + 1 >= knots_.size() || t == knots_[i]) return prefix_[std::min(i, prefix_.size() - 1)];
    return prefix_[i] + quad_adaptive(f_, knots_[i], t, tol_).value;
}

}  // namespace becomp::numkit
