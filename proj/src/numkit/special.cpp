#include "becomp/numkit.hpp"

#include "becomp/error.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace becomp::numkit {

namespace {

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

}  // namespace

double gamma_real(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        std::ostringstream os;
        os << "gamma_real: argument must be positive and finite, got " << x;
        throw DomainError(os.str());
    }
    if (x < 0.5) return gamma_real(x + 1.0) / x;

    const double z = x - 1.0;
    double series = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) series += kLanczos[i] / (z + static_cast<double>(i));
    const double t = z + kLanczosG + 0.5;
    // t^(z+1/2) split in two halves to stay in range for large x.
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half * std::exp(-t) * half * series;
}

double sphere_area(double d) {
    if (!(d >= 1.0) || !std::isfinite(d)) {
        std::ostringstream os;
        os << "sphere_area: dimension must be >= 1, got " << d;
        throw DomainError(os.str());
    }
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / gamma_real(0.5 * d);
}

}  // namespace becomp::numkit
