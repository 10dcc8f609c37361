#include "becomp/numkit.hpp"

#include "becomp/error.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace becomp::numkit {

namespace {

double checked(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    if (std::isnan(v)) {
        std::ostringstream os;
        os << "find_root_bracketed: NaN at x = " << x;
        throw NumericError(NumericError::Kind::NonFinite, os.str());
    }
    return v;
}

}  // namespace

RootBracket bracket_root(const std::function<double(double)>& f, double lo, double hi, const Tolerance& tol,
                         bool secant) {
    tol.validate();
    if (lo > hi) std::swap(lo, hi);
    double flo = checked(f, lo), fhi = checked(f, hi);
    if (flo == 0.0) return {lo, lo, lo, 0.0, 0};
    if (fhi == 0.0) return {hi, hi, hi, 0.0, 0};
    if ((flo > 0.0) == (fhi > 0.0)) {
        std::ostringstream os;
        os << "find_root_bracketed: f(" << lo << ") = " << flo << " and f(" << hi << ") = " << fhi
           << " have the same sign";
        throw NumericError(NumericError::Kind::InvalidBracket, os.str());
    }

    double x = 0.5 * (lo + hi), fx = 0.0;
    int it = 0;
    bool use_secant = secant;
    while (it < tol.max_steps) {
        ++it;
        x = 0.5 * (lo + hi);
        if (use_secant && std::isfinite(flo) && std::isfinite(fhi)) {
            const double xs = hi - fhi * (hi - lo) / (fhi - flo);
            const double guard = 1e-3 * (hi - lo);
            if (xs > lo + guard && xs < hi - guard) x = xs;
        }
        // Secant steps alternate with plain bisection, so the bracket at least
        // halves every second iteration.
        if (secant) use_secant = !use_secant;

        if (!(x > lo && x < hi)) break;  // bracket below resolution
        fx = checked(f, x);
        if (fx == 0.0) return {x, x, x, 0.0, it};
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        if (hi - lo <= tol.abs_tol || std::abs(fx) <= tol.abs_tol) break;
    }
    const bool lo_better = std::abs(flo) <= std::abs(fhi);
    return {lo_better ? lo : hi, lo, hi, lo_better ? flo : fhi, it};
}

double find_root_bracketed(const std::function<double(double)>& f, double lo, double hi, const Tolerance& tol) {
    return bracket_root(f, lo, hi, tol).x;
}

}  // namespace becomp::numkit
