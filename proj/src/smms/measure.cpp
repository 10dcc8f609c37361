#include "becomp/smms.hpp"

#include "becomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace becomp::smms {

double weighted_area(const WarpedSMMS& s, double r) {
    if (!(r >= 0.0) || r > s.r_max() * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "weighted_area: r = " << r << " outside [0, " << s.r_max() << "]";
        throw DomainError(os.str());
    }
    r = std::min(r, s.r_max());
    const double w = std::max(0.0, s.w().eval(r));
    return numkit::sphere_area(s.n()) * std::pow(w, s.n() - 1) * std::exp(-s.f().eval(r));
}

double weighted_volume(const WarpedSMMS& s, double R, const numkit::Tolerance& tol) {
    if (!(R >= 0.0) || R > s.r_max() * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "weighted_volume: R = " << R << " outside [0, " << s.r_max() << "]";
        throw DomainError(os.str());
    }
    R = std::min(R, s.r_max());
    return numkit::quad_adaptive([&](double t) { return weighted_area(s, t); }, 0.0, R, tol).value;
}

WeightedVolume::WeightedVolume(const WarpedSMMS& s, double T, std::size_t panels, const numkit::Tolerance& tol)
    : s_(std::make_shared<const WarpedSMMS>(s)), T_(std::min(T, s.r_max())) {
    if (!(T > 0.0)) throw DomainError("WeightedVolume: upper limit must be positive");
    if (T > s.r_max() * (1.0 + 1e-12)) throw DomainError("WeightedVolume: upper limit beyond r_max");
    auto space = s_;
    // Panels are refined to relative accuracy: volumes near the pole are tiny.
    const numkit::Tolerance relative{1e-300, tol.rel_tol, tol.max_steps};
    cumulative_ = std::make_shared<const numkit::CumulativeIntegral>(numkit::CumulativeIntegral::uniform(
        [space](double t) { return weighted_area(*space, t); }, 0.0, T_, panels, relative));
}

double WeightedVolume::volume(double t) const {
    if (t <= 0.0) return 0.0;
    if (t > T_ * (1.0 + 1e-12)) throw DomainError("WeightedVolume: t beyond the tabulated range");
    t = std::min(t, T_);
    if (t < cumulative_->knots()[1]) {
        // V_f ~ t^n near the pole: relative accuracy only.
        const numkit::Tolerance rel{1e-300, numkit::kPrecise.rel_tol, numkit::kPrecise.max_steps};
        return numkit::quad_adaptive([this](double x) { return weighted_area(*s_, x); }, 0.0, t, rel).value;
    }
    return (*cumulative_)(t);
}

}  // namespace becomp::smms
