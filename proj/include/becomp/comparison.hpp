#pragma once

// Grid verification of the weighted comparison inequalities: mean curvature,
// area, volume, volume doubling and the absolute volume bound for H < 0.
// Every check evaluates lhs and rhs on a grid and reports margin = rhs - lhs.

#include "becomp/smms.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace becomp::comparison {

enum class TheoremId {
    MC_ROUGH,
    MC_BOUNDED_F_INNER,
    MC_BOUNDED_F_PI2,
    MC_DRIFT,
    AREA_A,
    AREA_B,
    VOL_A,
    VOL_B,
    VOL_B_ABS,
    VOL_ABS_NEGH,
    DOUBLING,
    VOL_R1,
};

const char* to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(const std::string& s);
const std::vector<TheoremId>& all_theorems();

enum class Verdict { Pass, Fail, NotApplicable };
const char* to_string(Verdict v);

/// A check passes when min_margin >= -max(abs, rel * |rhs at the minimum|).
struct InequalityTolerance {
    double abs = 1e-8;
    double rel = 1e-6;
    double allowed(double rhs) const;
};

/// Hypothesis on the potential: |f| <= k (Potential) or f' >= -a (Drift).
struct Bound {
    enum class Kind { Potential, Drift };
    Kind kind;
    double value;

    static Bound potential(double k) { return {Kind::Potential, k}; }
    static Bound drift(double a) { return {Kind::Drift, a}; }
};

struct CheckOptions {
    smms::RhoMode mode = smms::RhoMode::Radial;
    InequalityTolerance tol;
    std::size_t grid_points = 256;
    /// Replaces the l computed from the space.
    std::optional<double> l_override;
    /// x4 refinement when |min_margin| < 10 * tolerance.
    bool refine = true;
};

struct GridPoint {
    double r;
    double lhs;
    double rhs;
    double margin;
};

struct ComparisonReport {
    TheoremId theorem_id;
    std::map<std::string, double> params;
    std::map<std::string, std::string> notes;
    std::vector<GridPoint> grid;
    double min_margin = 0.0;
    double min_margin_at = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    Verdict verdict = Verdict::Fail;
    /// Grid radii with |margin| below the tolerance.
    std::vector<double> equality_points;
    int refinements = 0;
};

// ---------------------------------------------------------------------------
// Mean curvature
// ---------------------------------------------------------------------------

/// m_f(r) <= m_f(r0) - (n-1)H(r - r0) + int_{r0}^r rho. Empty grid: uniform on [r0, r_max).
ComparisonReport check_mc_rough(const smms::WarpedSMMS& s, double H, double r0, std::vector<double> grid = {},
                                const CheckOptions& opt = {});

/// m_f <= m_H^{n+4k} + int_0^r rho on r <= pi/(4 sqrt(H)).
ComparisonReport check_mc_bounded_f_inner(const smms::WarpedSMMS& s, double H, double k,
                                          std::vector<double> grid = {}, const CheckOptions& opt = {});

/// m_f <= (1 + 4k/((n-1) sin(2 sqrt(H) r))) m_H^n + int_0^r rho on
/// [pi/(4 sqrt(H)), pi/(2 sqrt(H))], evaluated as m_H + 2k sqrt(H)/sin^2(sqrt(H) r)
/// (identical algebraically, finite at the right end).
ComparisonReport check_mc_bounded_f_pi2(const smms::WarpedSMMS& s, double H, double k,
                                        std::vector<double> grid = {}, const CheckOptions& opt = {});

/// Both ranges of the bounded-f estimate (the second only when H > 0).
std::vector<ComparisonReport> check_mc_bounded_f(const smms::WarpedSMMS& s, double H, double k,
                                                 const CheckOptions& opt = {});

/// m_f <= m_H^n + a + int_0^r rho on (0, min(r_max, pi/(2 sqrt(H)))].
ComparisonReport check_mc_drift(const smms::WarpedSMMS& s, double H, double a, std::vector<double> grid = {},
                                const CheckOptions& opt = {});

// ---------------------------------------------------------------------------
// Area and volume
// ---------------------------------------------------------------------------

/// Ratio A_f/A_model at the outer radius t in [r, R] against the bound from
/// the inner radius r. Potential bound: model dimension n+4k, factor
/// e^{c(n,k,H) t l}; drift bound: drifted model M^n_{H,a}, factor e^{t l}.
ComparisonReport check_area_comparison(const smms::WarpedSMMS& s, double H, Bound bound, double r, double R,
                                       const CheckOptions& opt = {});

/// V_f/V_model at t in [r, R] against (V_f/V_model)(r) exp{int_0^t (e^{c l u} - 1) A/V du}.
ComparisonReport check_volume_comparison(const smms::WarpedSMMS& s, double H, Bound bound, double r, double R,
                                         const CheckOptions& opt = {});

/// Drift bound with r = 0: V_f(t)/V^a_H(t) <= exp{-f(0) + int_0^t (e^{l u} - 1) A^a/V^a du}, t in (0, R].
ComparisonReport check_volume_absolute(const smms::WarpedSMMS& s, double H, double a, double R,
                                       const CheckOptions& opt = {});

/// V_f(t) <= V_f(1)/V^{n+4k}(1) V^{n+4k}(t) exp{int_0^t ...} for t in [1, R].
ComparisonReport check_volume_r1(const smms::WarpedSMMS& s, double H, double k, double R,
                                 const CheckOptions& opt = {});

/// V_f(R)/|S^{n-1}| <= e^{3k} int_0^R sn_H^{n-1} e^{cosh(2 sqrt(-H) t) + l t} dt on a grid of R,
/// both sides per unit solid angle.
ComparisonReport check_absolute_volume_negH(const smms::WarpedSMMS& s, double H, double k, double R,
                                            const CheckOptions& opt = {});

/// r -> (V_f/V_model)(r) exp{-int_0^r (e^{c l t} - 1) A/V dt} on the grid;
/// nonincreasing whenever the volume comparison holds in differential form.
std::vector<double> volume_monotone_quantity(const smms::WarpedSMMS& s, double H, Bound bound, double l,
                                             const std::vector<double>& grid);

// ---------------------------------------------------------------------------
// Volume doubling
// ---------------------------------------------------------------------------

struct DoublingCertificate {
    int n;
    Bound bound;
    double H;
    double R;
    double alpha;
    double epsilon;
    double F_at_epsilon;
    double sigma_cap;
};

/// F(sigma) = int_0^R (e^{c sigma t} - 1) A/V dt for the model matching the bound.
double doubling_F(int n, Bound bound, double H, double R, double sigma);

/// Largest epsilon (to root-finder accuracy) with exp(F(epsilon)) <= alpha.
DoublingCertificate doubling_epsilon(int n, Bound bound, double H, double R, double alpha);

/// V_f(r2)/V_f(r1) <= alpha V_model(r2)/V_model(r1) for 0 < r1 < r2 <= R. The
/// grid records, per r2, the worst r1 below it. NotApplicable when l > epsilon.
ComparisonReport check_doubling(const smms::WarpedSMMS& s, double H, Bound bound, double alpha, double R,
                                double epsilon, const CheckOptions& opt = {});

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

/// pi/(4 sqrt(H)) or pi/(2 sqrt(H)) for H > 0, +infinity otherwise.
double range_limit(double H, bool quarter);

/// l used by a check: the override when present, else int_0^R rho.
double resolve_l(const smms::WarpedSMMS& s, double H, double R, const CheckOptions& opt);

}  // namespace becomp::comparison
