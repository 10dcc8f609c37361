#pragma once

// Deterministic numerical kernels: embedded Runge-Kutta integration with
// dense output, adaptive Simpson quadrature, bracketed root finding and the
// real Gamma function.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace becomp::numkit {

struct Tolerance {
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;
    int max_steps = 100000;

    /// Throws std::invalid_argument unless abs_tol, rel_tol in (0, 1) and
    /// max_steps >= 16.
    void validate() const;
};

/// Tight tolerance used internally by the geometric checkers so that the
/// kernels' own error stays far below the inequality tolerances.
inline constexpr Tolerance kPrecise{1e-14, 1e-12, 2000000};

// ---------------------------------------------------------------------------
// ODE integration
// ---------------------------------------------------------------------------

using State = std::vector<double>;
using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Accepted steps of an integration together with the data required for
/// fourth-order continuous (dense) output between nodes.
class OdeTrajectory {
public:
    struct Node {
        double t;
        State y;
        double error_estimate;  ///< weighted local error of the step ending here (0 at start)
    };

    static constexpr int kDenseOrder = 4;

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::size_t dimension() const noexcept { return nodes_.empty() ? 0 : nodes_.front().y.size(); }
    double t_begin() const { return nodes_.front().t; }
    double t_end() const { return nodes_.back().t; }
    const State& back() const { return nodes_.back().y; }

    /// Dense evaluation at any t in [t_begin, t_end].
    State at(double t) const;
    double at(double t, std::size_t component) const;

private:
    friend OdeTrajectory integrate_ode(const OdeRhs&, double, const State&, double, const Tolerance&);

    // Per step: five coefficient vectors of the Dormand-Prince continuous extension.
    struct Segment {
        double t0;
        double h;
        std::vector<double> coeffs;  // 5 * dim
    };

    std::size_t locate(double t) const;

    std::vector<Node> nodes_;
    std::vector<Segment> segments_;
};

/// Dormand-Prince 5(4) with step-size control on a mixed abs/rel error norm.
/// Throws NumericError(StepLimit) when max_steps is exhausted and
/// NumericError(NonFinite) when the right-hand side stops being finite.
OdeTrajectory integrate_ode(const OdeRhs& rhs, double t0, const State& y0, double t1, const Tolerance& tol);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadResult {
    double value;
    double err_estimate;
};

inline constexpr int kSimpsonMaxDepth = 40;

/// Adaptive Simpson quadrature. Target error is max(abs_tol, rel_tol*|value|).
/// a == b returns {0, 0}. Throws NumericError(QuadratureLimit) if some panel
/// reaches the recursion cap without meeting its share of the tolerance, or
/// if the evaluation budget (tol.max_steps) runs out.
QuadResult quad_adaptive(const std::function<double(double)>& f, double a, double b, const Tolerance& tol);

/// Running integral t -> int_a^t f on [a, b]. Prefix sums are stored at the
/// knots; evaluation between knots adds one short adaptive panel.
class CumulativeIntegral {
public:
    CumulativeIntegral(std::function<double(double)> f, std::vector<double> knots, const Tolerance& tol);

    /// Uniform knots on [a, b].
    static CumulativeIntegral uniform(std::function<double(double)> f, double a, double b, std::size_t panels,
                                      const Tolerance& tol);

    double operator()(double t) const;
    const std::vector<double>& knots() const noexcept { return knots_; }
    const std::vector<double>& prefix() const noexcept { return prefix_; }
    double lower() const { return knots_.front(); }
    double upper() const { return knots_.back(); }

private:
    std::function<double(double)> f_;
    std::vector<double> knots_;
    std::vector<double> prefix_;
    Tolerance tol_;
};

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

struct RootBracket {
    double x;   ///< best estimate
    double lo;  ///< final bracket, f(lo) and f(hi) of opposite sign (or zero)
    double hi;
    double f_x;
    int iterations;
};

/// Bisection safeguarded with secant steps. Stops when the bracket is no
/// wider than abs_tol or |f(x)| <= abs_tol. Throws NumericError(InvalidBracket)
/// when f(lo) and f(hi) share a sign.
RootBracket bracket_root(const std::function<double(double)>& f, double lo, double hi, const Tolerance& tol,
                         bool secant = true);

double find_root_bracketed(const std::function<double(double)>& f, double lo, double hi, const Tolerance& tol);

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Gamma(x) for x > 0 (Lanczos, g = 7). Throws DomainError otherwise.
double gamma_real(double x);

/// Area of the unit (d-1)-sphere, 2 pi^{d/2} / Gamma(d/2), for real d >= 1.
double sphere_area(double d);

}  // namespace becomp::numkit
