#include "becomp/numkit.hpp"

#include "becomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace becomp::numkit {

void Tolerance::validate() const {
    if (!(abs_tol > 0.0 && abs_tol < 1.0))
        throw std::invalid_argument("Tolerance: abs_tol must lie in (0, 1)");
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw std::invalid_argument("Tolerance: rel_tol must lie in (0, 1)");
    if (max_steps < 16)
        throw std::invalid_argument("Tolerance: max_steps must be >= 16");
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension (Hairer, Norsett & Wanner).
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

void eval_rhs(const OdeRhs& rhs, double t, std::span<const double> y, std::span<double> dy) {
    rhs(t, y, dy);
    for (double v : dy) {
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "integrate_ode: non-finite right-hand side at t = " << t;
            throw NumericError(NumericError::Kind::NonFinite, os.str());
        }
    }
}

double weighted_rms(std::span<const double> v, std::span<const double> ya, std::span<const double> yb,
                    const Tolerance& tol) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double sk = tol.abs_tol + tol.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
        const double q = v[i] / sk;
        s += q * q;
    }
    return std::sqrt(s / static_cast<double>(v.size()));
}

double initial_step(const OdeRhs& rhs, double t0, const State& y0, const State& f0, double span,
                    const Tolerance& tol) {
    const std::size_t n = y0.size();
    const double d0 = weighted_rms(y0, y0, y0, tol);
    const double d1n = weighted_rms(f0, y0, y0, tol);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, span);
    State y1(n), f1(n), diff(n);
    for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
    eval_rhs(rhs, t0 + h0, y1, f1);
    for (std::size_t i = 0; i < n; ++i) diff[i] = (f1[i] - f0[i]) / h0;
    const double d2 = weighted_rms(diff, y0, y0, tol);
    const double dm = std::max(d1n, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / 5.0);
    return std::min({100.0 * h0, h1, span});
}

}  // namespace

OdeTrajectory integrate_ode(const OdeRhs& rhs, double t0, const State& y0, double t1, const Tolerance& tol) {
    tol.validate();
    if (!(t1 > t0)) throw std::invalid_argument("integrate_ode: requires t1 > t0");
    if (y0.empty()) throw std::invalid_argument("integrate_ode: empty state");

    const std::size_t n = y0.size();
    OdeTrajectory traj;
    traj.nodes_.push_back({t0, y0, 0.0});

    State y = y0, ynew(n), ytmp(n), err(n);
    State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    eval_rhs(rhs, t0, y, k1);

    double t = t0;
    double h = initial_step(rhs, t0, y0, k1, t1 - t0, tol);
    bool rejected_last = false;
    int steps = 0;

    while (t < t1) {
        if (++steps > tol.max_steps) {
            std::ostringstream os;
            os << "integrate_ode: step limit " << tol.max_steps << " exhausted at t = " << t;
            throw NumericError(NumericError::Kind::StepLimit, os.str());
        }
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            std::ostringstream os;
            os << "integrate_ode: step size underflow at t = " << t;
            throw NumericError(NumericError::Kind::StepLimit, os.str());
        }
        bool last = false;
        if (t + h >= t1 || t1 - (t + h) < 1e-12 * std::abs(t1)) {
            h = t1 - t;
            last = true;
        }

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        eval_rhs(rhs, t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        eval_rhs(rhs, t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        eval_rhs(rhs, t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        eval_rhs(rhs, t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        eval_rhs(rhs, t + h, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        eval_rhs(rhs, t + h, ynew, k7);

        for (std::size_t i = 0; i < n; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double enorm = weighted_rms(err, y, ynew, tol);

        if (!std::isfinite(enorm)) {
            throw NumericError(NumericError::Kind::NonFinite, "integrate_ode: non-finite error estimate");
        }

        if (enorm <= 1.0) {
            OdeTrajectory::Segment seg{t, h, std::vector<double>(5 * n)};
            for (std::size_t i = 0; i < n; ++i) {
                const double r1 = y[i];
                const double r2 = ynew[i] - y[i];
                const double r3 = h * k1[i] - r2;
                const double r4 = r2 - h * k7[i] - r3;
                const double r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
                seg.coeffs[5 * i + 0] = r1;
                seg.coeffs[5 * i + 1] = r2;
                seg.coeffs[5 * i + 2] = r3;
                seg.coeffs[5 * i + 3] = r4;
                seg.coeffs[5 * i + 4] = r5;
            }
            traj.segments_.push_back(std::move(seg));

            t = last ? t1 : t + h;
            y = ynew;
            k1 = k7;  // FSAL
            traj.nodes_.push_back({t, y, enorm});

            double fac = enorm == 0.0 ? 5.0 : 0.9 * std::pow(enorm, -0.2);
            fac = std::clamp(fac, 0.2, 5.0);
            if (rejected_last) fac = std::min(fac, 1.0);
            h *= fac;
            rejected_last = false;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(enorm, -0.2));
            rejected_last = true;
        }
    }
    return traj;
}

std::size_t OdeTrajectory::locate(double t) const {
    if (segments_.empty()) throw std::logic_error("OdeTrajectory: no steps");
    const double tb = t_begin(), te = t_end();
    const double slack = 1e-12 * std::max(1.0, std::abs(te - tb));
    if (t < tb - slack || t > te + slack) {
        std::ostringstream os;
        os << "OdeTrajectory: t = " << t << " outside [" << tb << ", " << te << "]";
        throw DomainError(os.str());
    }
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double v, const Segment& s) { return v < s.t0; });
    if (it == segments_.begin()) return 0;
    return static_cast<std::size_t>(std::distance(segments_.begin(), it)) - 1;
}

double OdeTrajectory::at(double t, std::size_t component) const {
    const Segment& s = segments_[locate(t)];
    const double th = std::clamp((t - s.t0) / s.h, 0.0, 1.0);
    const double th1 = 1.0 - th;
    const double* c = &s.coeffs[5 * component];
    return c[0] + th * (c[1] + th1 * (c[2] + th * (c[3] + th1 * c[4])));
}

State OdeTrajectory::at(double t) const {
    State out(dimension());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(t, i);
    return out;
}

}  // namespace becomp::numkit
