#include "becomp/smms.hpp"

#include "becomp/error.hpp"
#include "becomp/model.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace becomp::smms {

namespace {

const std::vector<ParamInfo>& potential_params() {
    static const std::vector<ParamInfo> p = {
        {"drift", 0.0, "1/length", "adds -drift*r to f"},
        {"fquad", 0.0, "1/length^2", "adds fquad*r^2 to f"},
        {"fcos", 0.0, "dimensionless", "adds fcos*cos(fcos_freq*r) to f"},
        {"fcos_freq", 1.0, "1/length", "frequency of the cosine term"},
        {"fsin", 0.0, "dimensionless", "adds fsin*sin(fsin_freq*r) to f"},
        {"fsin_freq", 1.0, "1/length", "frequency of the sine term"},
    };
    return p;
}

std::vector<ParamInfo> with_potential(std::vector<ParamInfo> own) {
    const auto& common = potential_params();
    own.insert(own.end(), common.begin(), common.end());
    return own;
}

const CatalogEntry* find_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return &e;
    return nullptr;
}

/// Resolved parameters: defaults overridden by the caller, unknown keys rejected.
std::map<std::string, double> resolve(const CatalogEntry& entry, const std::map<std::string, double>& given) {
    std::map<std::string, double> out;
    std::set<std::string> known;
    for (const auto& p : entry.params) {
        out[p.name] = p.default_value;
        known.insert(p.name);
    }
    for (const auto& [key, value] : given) {
        if (!known.count(key)) throw SpecError("space '" + entry.name + "' has no parameter '" + key + "'");
        if (!std::isfinite(value)) throw SpecError("parameter '" + key + "' must be finite");
        out[key] = value;
    }
    return out;
}

RadialProfile sn_profile(double H) {
    return RadialProfile([H](double r) { return model::sn(H, r); }, [H](double r) { return model::sn_prime(H, r); },
                         [H](double r) { return -H * model::sn(H, r); });
}

/// f = quad r^2 - drift r + fcos cos(wc r) + fsin sin(ws r)
RadialProfile potential(double quad, double drift, double fcos, double wc, double fsin, double ws) {
    return RadialProfile(
        [=](double r) { return quad * r * r - drift * r + fcos * std::cos(wc * r) + fsin * std::sin(ws * r); },
        [=](double r) { return 2 * quad * r - drift - fcos * wc * std::sin(wc * r) + fsin * ws * std::cos(ws * r); },
        [=](double r) { return 2 * quad - fcos * wc * wc * std::cos(wc * r) - fsin * ws * ws * std::sin(ws * r); });
}

double require_positive(const std::map<std::string, double>& p, const std::string& key, const std::string& space) {
    const double v = p.at(key);
    if (!(v > 0.0)) throw SpecError("space '" + space + "': parameter '" + key + "' must be positive");
    return v;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"euclidean", "flat R^n, w = r",
         with_potential({{"r_max", 4.0, "length", "outer radius examined"}})},
        {"sphere", "round sphere of curvature H, w = sn_H(r), closed with r_max = pi/sqrt(H)",
         with_potential({{"H", 1.0, "1/length^2", "curvature, > 0"}})},
        {"hyperbolic", "hyperbolic space of curvature H, w = sn_H(r)",
         with_potential({{"H", -1.0, "1/length^2", "curvature, < 0"},
                         {"r_max", 3.0, "length", "outer radius examined"}})},
        {"gaussian_soliton", "flat R^n with f = c r^2 (Ric_f = 2c g)",
         with_potential({{"c", 0.25, "1/length^2", "quadratic coefficient"},
                         {"r_max", 4.0, "length", "outer radius examined"}})},
        {"linear_drift", "space form of curvature H with f = -a r",
         with_potential({{"a", 0.5, "1/length", "drift, f = -a r"},
                         {"H", 0.0, "1/length^2", "curvature of the base"},
                         {"r_max", 4.0, "length", "outer radius examined (ignored when H > 0)"}})},
        {"perturbed_sphere", "w = sn_H(r) (1 + eps sin^2(omega r)); closed when H > 0 (needs omega/sqrt(H) integer)",
         with_potential({{"H", 1.0, "1/length^2", "curvature of the unperturbed profile"},
                         {"eps", 0.05, "dimensionless", "perturbation amplitude, > -1"},
                         {"omega", 3.0, "1/length", "perturbation frequency"},
                         {"r_max", 4.0, "length", "outer radius examined (ignored when H > 0)"}})},
        {"custom", "profiles w and f given as poly, fourier or table specs", {}},
    };
    return entries;
}

WarpedSMMS make_space(const std::string& name, int n, const std::map<std::string, double>& params) {
    const CatalogEntry* entry = find_entry(name);
    if (!entry) throw SpecError("unknown space '" + name + "'");
    if (name == "custom") throw SpecError("space 'custom' is built from profile specs, not parameters");
    auto p = resolve(*entry, params);

    double quad = p.at("fquad"), drift = p.at("drift");
    const double fcos = p.at("fcos"), wc = p.at("fcos_freq"), fsin = p.at("fsin"), ws = p.at("fsin_freq");

    RadialProfile w;
    double r_max = 0.0;
    bool closed = false;

    if (name == "euclidean") {
        w = sn_profile(0.0);
        r_max = require_positive(p, "r_max", name);
    } else if (name == "sphere") {
        const double H = require_positive(p, "H", name);
        w = sn_profile(H);
        r_max = std::numbers::pi / std::sqrt(H);
        closed = true;
    } else if (name == "hyperbolic") {
        const double H = p.at("H");
        if (!(H < 0.0)) throw SpecError("space 'hyperbolic': parameter 'H' must be negative");
        w = sn_profile(H);
        r_max = require_positive(p, "r_max", name);
    } else if (name == "gaussian_soliton") {
        quad += p.at("c");
        w = sn_profile(0.0);
        r_max = require_positive(p, "r_max", name);
    } else if (name == "linear_drift") {
        const double H = p.at("H");
        drift += p.at("a");
        w = sn_profile(H);
        if (H > 0.0) {
            r_max = std::numbers::pi / std::sqrt(H);
            closed = true;
        } else {
            r_max = require_positive(p, "r_max", name);
        }
    } else if (name == "perturbed_sphere") {
        const double H = p.at("H"), eps = p.at("eps"), om = p.at("omega");
        if (!(eps > -1.0)) throw SpecError("space 'perturbed_sphere': parameter 'eps' must exceed -1");
        w = RadialProfile(
            [=](double r) {
                const double s = std::sin(om * r);
                return model::sn(H, r) * (1.0 + eps * s * s);
            },
            [=](double r) {
                const double s = std::sin(om * r);
                return model::sn_prime(H, r) * (1.0 + eps * s * s) + model::sn(H, r) * eps * om * std::sin(2 * om * r);
            },
            [=](double r) {
                const double s = std::sin(om * r);
                const double pp = 1.0 + eps * s * s, dp = eps * om * std::sin(2 * om * r),
                             ddp = 2.0 * eps * om * om * std::cos(2 * om * r);
                return -H * model::sn(H, r) * pp + 2.0 * model::sn_prime(H, r) * dp + model::sn(H, r) * ddp;
            });
        if (H > 0.0) {
            r_max = std::numbers::pi / std::sqrt(H);
            closed = true;
        } else {
            r_max = require_positive(p, "r_max", name);
        }
    }

    if (closed) p.erase("r_max");
    return WarpedSMMS(n, std::move(w), potential(quad, drift, fcos, wc, fsin, ws), r_max, closed, name, std::move(p));
}

}  // namespace becomp::smms
