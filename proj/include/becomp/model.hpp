#pragma once

// Constant-curvature model spaces M^d_{H,a}: the generalized sine sn_H, the
// model mean curvature, and the drifted sphere areas and ball volumes every
// comparison theorem is measured against.

#include "becomp/numkit.hpp"

#include <memory>
#include <vector>

namespace becomp::model {

/// Effective dimension d (real, d = n or n + 4k), curvature H (1/length^2)
/// and drift a >= 0 (1/length): the measure is e^{a r} dv_H.
class ModelSpace {
public:
    ModelSpace(double dim, double H, double drift = 0.0);

    double dim() const noexcept { return dim_; }
    double H() const noexcept { return H_; }
    double drift() const noexcept { return drift_; }

    /// pi / sqrt(H) when H > 0, +infinity otherwise.
    double conjugate_radius() const noexcept;

private:
    double dim_;
    double H_;
    double drift_;
};

/// sn_H(r): solution of sn'' + H sn = 0, sn(0) = 0, sn'(0) = 1.
double sn(double H, double r);
/// sn_H'(r).
double sn_prime(double H, double r);

/// pi / sqrt(H) for H > 0, +infinity otherwise.
double conjugate_radius(double H) noexcept;

/// (d - 1) sn'/sn. Throws DomainError for r <= 0 and, when H > 0, for
/// r >= pi/sqrt(H) - 1e-12. Uses the pole series below 1e-4 length scales.
double mean_curvature_model(double d, double H, double r);

/// sphere_area(d) * e^{a r} * sn_H(r)^{d-1}. Defined on [0, pi/sqrt(H)].
double area_model(const ModelSpace& m, double r);

/// Ball volume int_0^R area_model by adaptive quadrature.
double volume_model(const ModelSpace& m, double R, const numkit::Tolerance& tol = numkit::kPrecise);

/// c(n, k, H) = |S^{n+4k-1}| / |S^{n-1}|. Exactly 1 for k = 0. H does not
/// enter; it is kept in the signature to mirror the theorem constant.
double c_const(int n, double k, double H);

/// Tabulated V(t) and A(t)/V(t) for one model on [0, T]; the ratio uses its
/// d/t pole limit so integrands like (e^{s t} - 1) A/V stay finite at t = 0.
class ModelVolume {
public:
    ModelVolume(const ModelSpace& m, double T, std::size_t panels = 64,
                const numkit::Tolerance& tol = numkit::kPrecise);

    const ModelSpace& space() const noexcept { return m_; }
    double upper() const noexcept { return T_; }

    double area(double t) const { return area_model(m_, t); }
    double volume(double t) const;
    /// A(t)/V(t) for t > 0.
    double log_derivative(double t) const;
    /// expm1(s t) * A(t)/V(t), with value s*d at t = 0.
    double growth_integrand(double s, double t) const;

private:
    // Taylor coefficients of e^{a u} (sn_H(u)/u)^{d-1}; below series_limit_
    // V and A/V come from the term-wise integrated series, smooth in t.
    double series_volume(double t) const;
    double series_log_derivative(double t) const;

    ModelSpace m_;
    double T_;
    std::shared_ptr<const numkit::CumulativeIntegral> cumulative_;
    std::vector<double> series_;
    double series_limit_ = 0.0;
};

}  // namespace becomp::model
