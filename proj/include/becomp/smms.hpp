#pragma once

// Rotationally symmetric smooth metric measure spaces
//   g = dr^2 + w(r)^2 g_{S^{n-1}},   measure e^{-f(r)} dv_g,
// with the pole at r = 0, and the radial curvature and measure quantities
// the comparison checkers consume.

#include "becomp/numkit.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace becomp::smms {

/// Scalar function of arc length with first and second derivatives. Missing
/// derivatives are produced by Richardson-extrapolated central differences
/// (one-sided near the ends of the declared domain).
class RadialProfile {
public:
    using Fn = std::function<double(double)>;

    RadialProfile();  // identically zero
    explicit RadialProfile(Fn eval, Fn d1 = {}, Fn d2 = {});

    double eval(double r) const { return eval_(r); }
    double d1(double r) const;
    double d2(double r) const;
    double operator()(double r) const { return eval_(r); }

    bool has_analytic_d1() const noexcept { return static_cast<bool>(d1_); }
    bool has_analytic_d2() const noexcept { return static_cast<bool>(d2_); }

    /// Domain used for one-sided stencils and the finite-difference step.
    RadialProfile with_domain(double lo, double hi, double step) const;
    double fd_step() const noexcept { return step_; }

    RadialProfile operator+(const RadialProfile& other) const;

    static RadialProfile constant(double c);
    /// sum_i c_i r^i
    static RadialProfile polynomial(std::vector<double> coeffs);
    /// c_0 + sum_j (c_{2j-1} cos(j r) + c_{2j} sin(j r))
    static RadialProfile fourier(std::vector<double> coeffs);
    /// Natural cubic spline through (nodes_i, values_i); needs >= 8 strictly
    /// increasing nodes. Linear continuation outside the node range.
    static RadialProfile table(std::vector<double> nodes, std::vector<double> values);

private:
    double fd1(double r) const;
    double fd2(double r) const;

    Fn eval_, d1_, d2_;
    double lo_ = -1e300;
    double hi_ = 1e300;
    double step_ = 1e-6;
};

/// Closed flag means the warping function closes up at r_max (a second pole),
/// so the space is compact and r_max is the pole-to-pole distance. For open
/// spaces r_max only bounds the region examined.
class WarpedSMMS {
public:
    /// Runs the construction checks; throws InvariantError on violation.
    WarpedSMMS(int n, RadialProfile w, RadialProfile f, double r_max, bool closed, std::string name = "custom",
               std::map<std::string, double> params = {});

    int n() const noexcept { return n_; }
    const RadialProfile& w() const noexcept { return w_; }
    const RadialProfile& f() const noexcept { return f_; }
    double r_max() const noexcept { return r_max_; }
    bool closed() const noexcept { return closed_; }
    const std::string& name() const noexcept { return name_; }
    const std::map<std::string, double>& params() const noexcept { return params_; }

    /// Inner cut-off 1e-6 r_max used instead of the pole itself.
    double r0() const noexcept { return 1e-6 * r_max_; }
    /// Clamp into [r0, r_max] (or [r0, r_max - r0] when closed).
    double clamp_interior(double r) const;

    /// w(r) = w(r_max - r) on a test grid (closed spaces only).
    bool reflection_symmetric() const;

private:
    void validate() const;

    int n_;
    RadialProfile w_;
    RadialProfile f_;
    double r_max_;
    bool closed_;
    std::string name_;
    std::map<std::string, double> params_;
};

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

struct ParamInfo {
    std::string name;
    double default_value;
    std::string unit;
    std::string description;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    std::vector<ParamInfo> params;
};

/// Catalog in listing order (custom last; it takes profiles, not params).
const std::vector<CatalogEntry>& catalog();

/// Builds a catalog space. Unknown names or parameter keys throw SpecError.
/// Potential modifiers accepted by every entry: drift, fquad, fcos,
/// fcos_freq, fsin, fsin_freq (f += -drift r + fquad r^2 + fcos cos + fsin sin).
WarpedSMMS make_space(const std::string& name, int n, const std::map<std::string, double>& params = {});

// ---------------------------------------------------------------------------
// Curvature
// ---------------------------------------------------------------------------

enum class RhoMode { Radial, Full };

const char* to_string(RhoMode mode);
RhoMode rho_mode_from_string(const std::string& s);

/// -(n-1) w''/w. Accepts r in [0, r_max]; near a pole the ratio is continued
/// as an even function of the distance to it (assumes w odd there).
double ricci_radial(const WarpedSMMS& s, double r);
/// -w''/w + (n-2)(1 - w'^2)/w^2
double ricci_tangential(const WarpedSMMS& s, double r);
/// Ric(d_r, d_r) + f''
double bakry_emery_radial(const WarpedSMMS& s, double r);
/// Tangential eigenvalue of Ric_f: ricci_tangential + f' w'/w.
double bakry_emery_tangential(const WarpedSMMS& s, double r);
/// min of the radial and tangential eigenvalues of Ric_f.
double ricci_f_smallest_eigenvalue(const WarpedSMMS& s, double r);
/// (n-1) w'/w
double mean_curvature(const WarpedSMMS& s, double r);
/// (n-1) w'/w - f'. Throws DomainError at r <= 0 and, on closed spaces, at r >= r_max.
double mean_curvature_f(const WarpedSMMS& s, double r);

/// [(n-1)H - lambda]_+ with lambda the radial Ric_f component or its smallest eigenvalue.
double rho(const WarpedSMMS& s, double H, double r, RhoMode mode = RhoMode::Radial);

/// Quadrature tolerance for rho integrals. rho has kinks where it switches
/// on and carries rounding noise near a pole, so kPrecise is out of reach.
inline constexpr numkit::Tolerance kRhoTol{1e-12, 1e-10, 2000000};

/// int_0^{min(r, r_max)} rho dt.
double integral_rho(const WarpedSMMS& s, double H, double r, RhoMode mode = RhoMode::Radial,
                    const numkit::Tolerance& tol = kRhoTol);

/// Tabulated t -> int_0^t rho on [0, upper] for repeated evaluation.
numkit::CumulativeIntegral cumulative_rho(const WarpedSMMS& s, double H, double upper, RhoMode mode,
                                          std::size_t panels = 64, const numkit::Tolerance& tol = kRhoTol);

struct CurvatureSample {
    double r;
    double ric_radial;
    double ric_f_radial;
    double lambda_min;
    double m;
    double m_f;
    double rho;
    double rho_integral;
};

/// Curvature data on a strictly increasing grid inside (0, r_max).
std::vector<CurvatureSample> sample_curvature(const WarpedSMMS& s, double H, const std::vector<double>& grid,
                                              RhoMode mode = RhoMode::Radial);

struct PotentialBounds {
    double k;           ///< sup |f|
    double a;           ///< max(0, -inf f')
    double grad_sup;    ///< sup |f'|
    std::size_t grid_points;  ///< resolution at which the maxima settled
};

/// sup |f| and the drift bound on [0, r_max] by grid doubling followed by
/// local golden-section refinement of each extremum.
PotentialBounds potential_bounds(const WarpedSMMS& s);

// ---------------------------------------------------------------------------
// Weighted measure
// ---------------------------------------------------------------------------

/// sphere_area(n) w^{n-1} e^{-f}
double weighted_area(const WarpedSMMS& s, double r);
/// int_0^R weighted_area
double weighted_volume(const WarpedSMMS& s, double R, const numkit::Tolerance& tol = numkit::kPrecise);

/// Tabulated V_f on [0, T] with relative accuracy near the pole.
class WeightedVolume {
public:
    WeightedVolume(const WarpedSMMS& s, double T, std::size_t panels = 64,
                   const numkit::Tolerance& tol = numkit::kPrecise);

    double area(double t) const { return weighted_area(*s_, t); }
    double volume(double t) const;
    double upper() const noexcept { return T_; }

private:
    std::shared_ptr<const WarpedSMMS> s_;
    double T_;
    std::shared_ptr<const numkit::CumulativeIntegral> cumulative_;
};

}  // namespace becomp::smms
