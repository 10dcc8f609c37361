#pragma once

// Myers-type diameter bounds for weighted spaces and their comparison with
// the actual diameter of closed rotationally symmetric spaces.

#include "becomp/smms.hpp"

#include <map>
#include <optional>
#include <string>

namespace becomp::global {

/// pi/sqrt(H) + (4k sqrt(H) + 2l)/((n-1)H), for |f| <= k.
double myers_bound_bounded_f(int n, double H, double k, double l);
/// pi/sqrt(H) + (2a + 2l)/((n-1)H), for |grad f| <= a.
double myers_bound_gradient(int n, double H, double a, double l);
/// (2 pi/sqrt(H)) sqrt(1 + 8k/((n-1)pi) + l^2/((n-1)^2 H pi^2)) + 2l/((n-1)H), for |f| <= k.
double myers_bound_indexform(int n, double H, double k, double l);

/// Pole-to-pole distance r_max of a closed space. Any point lies within
/// min(r1 + r2, 2 r_max - r1 - r2) <= r_max of any other via one of the poles.
double actual_diameter(const smms::WarpedSMMS& s);

/// Largest upper bound min(r1 + r2, 2 r_max - r1 - r2) over a grid of radius
/// pairs minus r_max; <= 0 means no pair can be farther apart than the poles.
double chord_excess(const smms::WarpedSMMS& s, std::size_t samples = 257);

/// int_0^L [(n-1) phi'^2 - phi^2 Ric(d_r, d_r)] dt with phi = sin(pi t/L),
/// the index form summed over the n-1 parallel normal fields along the
/// radial geodesic from the pole.
double index_form_total(const smms::WarpedSMMS& s, double L);

struct DiameterReport {
    std::map<std::string, double> bounds;  ///< MYERS_F, MYERS_GRAD, MYERS_INDEX
    std::optional<double> actual_diameter;
    int n = 0;
    double H = 0.0;
    double k = 0.0;
    double a = 0.0;  ///< sup |f'|
    double l = 0.0;
    smms::RhoMode mode = smms::RhoMode::Radial;
    /// True when the chord check could not confirm r_max as the diameter.
    bool chord_caveat = false;
    /// Where the l hypothesis was verified (pole, antipode by symmetry).
    std::string hypothesis_coverage;
    bool pass = false;
};

/// Bounds with (k, sup|f'|, l) measured on the space, l = int_0^{r_max} rho.
DiameterReport check_myers(const smms::WarpedSMMS& s, double H, smms::RhoMode mode = smms::RhoMode::Radial,
                           std::optional<double> l_override = std::nullopt);

}  // namespace becomp::global
