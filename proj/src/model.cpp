#include "becomp/model.hpp"

#include "becomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace becomp::model {

namespace {

constexpr double kConjugateGuard = 1e-12;

[[noreturn]] void domain_fail(const char* what, double r, double limit) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": r = " << r << " outside the domain (limit " << limit << ")";
    throw DomainError(os.str());
}

}  // namespace

ModelSpace::ModelSpace(double dim, double H, double drift) : dim_(dim), H_(H), drift_(drift) {
    if (!(dim >= 1.0) || !std::isfinite(dim)) throw DomainError("ModelSpace: dimension must be >= 1");
    if (!std::isfinite(H)) throw DomainError("ModelSpace: H must be finite");
    if (!(drift >= 0.0) || !std::isfinite(drift)) throw DomainError("ModelSpace: drift must be >= 0");
}

double ModelSpace::conjugate_radius() const noexcept { return model::conjugate_radius(H_); }

double conjugate_radius(double H) noexcept {
    return H > 0.0 ? std::numbers::pi / std::sqrt(H) : std::numeric_limits<double>::infinity();
}

double sn(double H, double r) {
    if (H > 0.0) {
        const double s = std::sqrt(H);
        return std::sin(s * r) / s;
    }
    if (H < 0.0) {
        const double s = std::sqrt(-H);
        return std::sinh(s * r) / s;
    }
    return r;
}

double sn_prime(double H, double r) {
    if (H > 0.0) return std::cos(std::sqrt(H) * r);
    if (H < 0.0) return std::cosh(std::sqrt(-H) * r);
    return 1.0;
}

double mean_curvature_model(double d, double H, double r) {
    if (!(r > 0.0)) domain_fail("mean_curvature_model", r, 0.0);
    if (H > 0.0 && r >= conjugate_radius(H) - kConjugateGuard)
        domain_fail("mean_curvature_model (conjugate point)", r, conjugate_radius(H));
    const double scale = H == 0.0 ? 1.0 : 1.0 / std::sqrt(std::abs(H));
    if (r < 1e-4 * scale) {
        const double r2 = r * r;
        return (d - 1.0) * (1.0 / r - H * r / 3.0 - H * H * r * r2 / 45.0);
    }
    return (d - 1.0) * sn_prime(H, r) / sn(H, r);
}

double area_model(const ModelSpace& m, double r) {
    if (!(r >= 0.0)) domain_fail("area_model", r, 0.0);
    const double rc = m.conjugate_radius();
    if (r > rc + kConjugateGuard) domain_fail("area_model", r, rc);
    const double s = std::max(0.0, sn(m.H(), std::min(r, rc)));
    const double power = m.dim() == 1.0 ? 1.0 : std::pow(s, m.dim() - 1.0);
    return numkit::sphere_area(m.dim()) * std::exp(m.drift() * r) * power;
}

double volume_model(const ModelSpace& m, double R, const numkit::Tolerance& tol) {
    if (!(R >= 0.0)) domain_fail("volume_model", R, 0.0);
    const double rc = m.conjugate_radius();
    if (R > rc + kConjugateGuard) domain_fail("volume_model", R, rc);
    R = std::min(R, rc);
    return numkit::quad_adaptive([&](double t) { return area_model(m, t); }, 0.0, R, tol).value;
}

double c_const(int n, double k, double /*H*/) {
    if (n < 2) throw DomainError("c_const: n must be >= 2");
    if (!(k >= 0.0)) throw DomainError("c_const: k must be >= 0");
    if (k == 0.0) return 1.0;
    return numkit::sphere_area(n + 4.0 * k) / numkit::sphere_area(n);
}

namespace {

constexpr std::size_t kSeriesTerms = 40;

// Coefficients of e^{a u} (sn_H(u)/u)^{d-1} by power-series log and exp.
std::vector<double> pole_series(const ModelSpace& m) {
    const std::size_t J = kSeriesTerms;
    std::vector<double> h(J, 0.0), lg(J, 0.0), g(J, 0.0), e(J, 0.0);
    double fact = 1.0, hp = 1.0;
    for (std::size_t j = 0; 2 * j < J; ++j) {
        if (j > 0) {
            fact *= static_cast<double>((2 * j) * (2 * j + 1));
            hp *= -m.H();
        }
        h[2 * j] = hp / fact;
    }
    for (std::size_t n = 1; n < J; ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k < n; ++k) acc += static_cast<double>(k) * lg[k] * h[n - k];
        lg[n] = h[n] - acc / static_cast<double>(n);
    }
    for (std::size_t n = 0; n < J; ++n) g[n] = (m.dim() - 1.0) * lg[n];
    g[1] += m.drift();
    e[0] = 1.0;
    for (std::size_t n = 1; n < J; ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * g[k] * e[n - k];
        e[n] = acc / static_cast<double>(n);
    }
    return e;
}

}  // namespace

ModelVolume::ModelVolume(const ModelSpace& m, double T, std::size_t panels, const numkit::Tolerance& tol)
    : m_(m), T_(T) {
    if (!(T > 0.0)) throw DomainError("ModelVolume: upper limit must be positive");
    if (T > m.conjugate_radius() + kConjugateGuard) domain_fail("ModelVolume", T, m.conjugate_radius());
    const ModelSpace copy = m_;
    // Panels are refined to relative accuracy: volumes near the pole are tiny.
    const numkit::Tolerance relative{1e-300, tol.rel_tol, tol.max_steps};
    cumulative_ = std::make_shared<const numkit::CumulativeIntegral>(numkit::CumulativeIntegral::uniform(
        [copy](double t) { return area_model(copy, t); }, 0.0, T, panels, relative));
    series_ = pole_series(m_);
    // The series replaces the tabulated integral wherever its tail is
    // negligible; the tabulation's absolute tolerance is poor relative to tiny V.
    auto converged = [this](double t) {
        double sum = 0.0, tail = 0.0, p = 1.0;
        for (std::size_t j = 0; j < series_.size(); ++j, p *= t) {
            sum += std::abs(series_[j]) * p;
            if (j + 4 >= series_.size()) tail += std::abs(series_[j]) * p;
        }
        return tail <= 1e-17 * sum;
    };
    double t = T_;
    while (t > 1e-6 * T_ && !converged(t)) t *= 0.5;
    series_limit_ = converged(t) ? t : 0.0;
}

double ModelVolume::series_volume(double t) const {
    double acc = 0.0, p = 1.0;
    for (std::size_t j = 0; j < series_.size(); ++j, p *= t) acc += series_[j] * p / (m_.dim() + static_cast<double>(j));
    return numkit::sphere_area(m_.dim()) * std::pow(t, m_.dim()) * acc;
}

double ModelVolume::series_log_derivative(double t) const {
    double num = 0.0, den = 0.0, p = 1.0;
    for (std::size_t j = 0; j < series_.size(); ++j, p *= t) {
        num += series_[j] * p;
        den += series_[j] * p / (m_.dim() + static_cast<double>(j));
    }
    return num / (den * t);
}

double ModelVolume::volume(double t) const {
    if (t <= 0.0) return 0.0;
    if (t < series_limit_) return series_volume(t);
    const auto& knots = cumulative_->knots();
    if (t < knots[1]) {
        // Near the pole V ~ t^d: ask for relative accuracy only.
        const numkit::Tolerance rel{1e-300, numkit::kPrecise.rel_tol, numkit::kPrecise.max_steps};
        return numkit::quad_adaptive([this](double x) { return area_model(m_, x); }, 0.0, t, rel).value;
    }
    return (*cumulative_)(t);
}

double ModelVolume::log_derivative(double t) const {
    if (!(t > 0.0)) domain_fail("ModelVolume::log_derivative", t, 0.0);
    if (t < series_limit_) return series_log_derivative(t);
    if (t < 1e-9 * T_) return m_.dim() / t;
    return area(t) / volume(t);
}

double ModelVolume::growth_integrand(double s, double t) const {
    if (t <= 0.0) return s * m_.dim();
    if (t < series_limit_) return std::expm1(s * t) * series_log_derivative(t);
    if (t < 1e-9 * T_) return std::expm1(s * t) / t * m_.dim();
    return std::expm1(s * t) * log_derivative(t);
}

}  // namespace becomp::model
