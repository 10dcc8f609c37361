#pragma once

#include "becomp/comparison.hpp"

#include <functional>
#include <vector>

namespace becomp::comparison::detail {

struct Sample {
    double lhs;
    double rhs;
};

using Evaluator = std::function<Sample(double r)>;
/// Grid at refinement factor 1 or 4.
using GridMaker = std::function<std::vector<double>(std::size_t factor)>;

/// Evaluates, refines once when the minimum margin is near the tolerance,
/// and fills min_margin, tolerance, pass, verdict and equality points.
void run_grid(ComparisonReport& rep, const GridMaker& make, const Evaluator& ev, const CheckOptions& opt);

/// N points lo + (hi - lo) i/N, i = 1..N (lo itself excluded).
std::vector<double> uniform_open(double lo, double hi, std::size_t N);
/// N points from lo to hi inclusive.
std::vector<double> uniform_closed(double lo, double hi, std::size_t N);
/// Splits every interval of a strictly increasing grid into `factor` pieces.
std::vector<double> subdivide(const std::vector<double>& grid, std::size_t factor);

/// User grid or a default one, refined consistently.
GridMaker grid_maker(std::vector<double> user, std::function<std::vector<double>(std::size_t)> fallback,
                     std::size_t points);

/// Throws DomainError unless the grid is nonempty, strictly increasing and inside [lo, hi].
void validate_grid(const std::vector<double>& grid, double lo, double hi, bool lo_open, const char* op);

/// HypothesisError unless sup|f| <= k (Potential) or sup(-f') <= a (Drift).
void require_bound(const smms::WarpedSMMS& s, Bound bound, const char* op);

void set_common_params(ComparisonReport& rep, const smms::WarpedSMMS& s, double H, const CheckOptions& opt);

}  // namespace becomp::comparison::detail
