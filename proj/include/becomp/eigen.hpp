#pragma once

// First Dirichlet eigenvalue of the weighted Laplacian on balls about the
// pole: the drifted model M^n_{H,a} and radial balls of a WarpedSMMS, by
// shooting on phi'' + m phi' + lambda phi = 0 with phi(0) = 1, phi(R) = 0.

#include "becomp/comparison.hpp"
#include "becomp/smms.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace becomp::eigen {

struct EigenOptions {
    /// Relative width of the final lambda bracket.
    double tol = 1e-10;
    /// ODE tolerance of each shot.
    numkit::Tolerance ode{1e-13, 1e-11, 2000000};
    /// Eigenfunction samples on [0, R], endpoints included.
    std::size_t samples = 65;
};

struct EigenSample {
    double r;
    double phi;
};

struct EigenResult {
    double lambda = 0.0;
    double residual = 0.0;  ///< |phi(R)| at lambda
    std::vector<EigenSample> eigenfunction;
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    double r_half = 0.0;  ///< first radius with phi = 1/2
    double R = 0.0;
    /// Only radial eigenfunctions were searched (always true here; reported).
    bool radial_only = true;
    int shots = 0;

    /// phi and phi' at any r in [0, R] (series below the start radius).
    std::function<double(double)> phi;
    std::function<double(double)> dphi;
};

/// lambda^D_1(n, a, H, R) of Delta_h, h = -a d(pole, .), on the model ball.
EigenResult model_eigenvalue(int n, double a, double H, double R, const EigenOptions& opt = {});

/// First radial Dirichlet eigenvalue of Delta_f on B(pole, R).
EigenResult smms_radial_eigenvalue(const smms::WarpedSMMS& s, double R, const EigenOptions& opt = {});

/// Q = int phi'^2 A_f / int phi^2 A_f on [0, R] for the model eigenfunction of (s.n(), a, H, R).
double rayleigh_quotient_transplant(const smms::WarpedSMMS& s, double a, double H, double R);

/// int (m_f - m_H - a)_+ |phi'| A_f / int phi^2 A_f; Q <= lambda_model + this term.
double transplant_error_term(const smms::WarpedSMMS& s, double a, double H, double R);

struct ChengConstants {
    double lambda_model;
    double r_half;
    double C;               ///< 4 sqrt(V^a_H(R)/V^a_H(r_half))
    double from_rayleigh;   ///< delta sqrt(lambda)/(C sqrt(1 + delta))
    double from_doubling;   ///< doubling epsilon for alpha = 4 under the drift bound
    double epsilon;         ///< min of the two
};

ChengConstants cheng_constants(int n, double a, double H, double R, double delta);
double cheng_epsilon(int n, double a, double H, double R, double delta);

struct ChengReport {
    int n = 0;
    double H = 0.0;
    double a = 0.0;
    double R = 0.0;
    double delta = 0.0;
    double l = 0.0;  ///< int_0^{r_max} rho
    ChengConstants constants{};
    double lambda_smms = 0.0;
    double lambda_model = 0.0;
    double ratio = 0.0;
    double rayleigh_quotient = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    comparison::Verdict verdict = comparison::Verdict::Fail;
    std::string note;
};

/// lambda^D_1(B(pole, R)) <= (1 + delta) lambda^D_1(n, a, H, R) when l <= epsilon;
/// NotApplicable (ratio still reported) otherwise.
ChengReport check_cheng_estimate(const smms::WarpedSMMS& s, double H, double a, double R, double delta,
                                 smms::RhoMode mode = smms::RhoMode::Radial);

}  // namespace becomp::eigen
