#include "becomp/cli.hpp"

#include "becomp/error.hpp"

#include <cmath>

namespace becomp::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) { throw SpecError(field + ": " + what); }

std::vector<double> real_array(const json& j, const std::string& field) {
    if (!j.is_array()) fail(field, "must be an array of reals");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) fail(field + "[" + std::to_string(i) + "]", "must be a real number");
        const double v = j[i].get<double>();
        if (!std::isfinite(v)) fail(field + "[" + std::to_string(i) + "]", "must be finite");
        out.push_back(v);
    }
    return out;
}

ProfileSpec profile_from_json(const json& j, const std::string& field) {
    if (!j.is_object()) fail(field, "must be an object {\"type\", \"coeffs\"|\"nodes\"}");
    if (!j.contains("type") || !j["type"].is_string()) fail(field + ".type", "missing or not a string");
    ProfileSpec p;
    p.type = j["type"].get<std::string>();
    if (p.type == "poly" || p.type == "fourier") {
        if (!j.contains("coeffs")) fail(field + ".coeffs", "required for type '" + p.type + "'");
        p.coeffs = real_array(j["coeffs"], field + ".coeffs");
        if (p.coeffs.empty()) fail(field + ".coeffs", "must not be empty");
    } else if (p.type == "table") {
        if (!j.contains("nodes")) fail(field + ".nodes", "required for type 'table'");
        if (!j.contains("values")) fail(field + ".values", "required for type 'table'");
        p.nodes = real_array(j["nodes"], field + ".nodes");
        p.values = real_array(j["values"], field + ".values");
        if (p.nodes.size() < 8) fail(field + ".nodes", "a table needs at least 8 nodes");
        for (std::size_t i = 1; i < p.nodes.size(); ++i)
            if (!(p.nodes[i] > p.nodes[i - 1])) fail(field + ".nodes", "must be strictly increasing");
        if (p.values.size() != p.nodes.size()) fail(field + ".values", "must have as many entries as nodes");
    } else {
        fail(field + ".type", "unknown profile type '" + p.type + "' (poly, fourier, table)");
    }
    return p;
}

json profile_to_json(const ProfileSpec& p) {
    json j{{"type", p.type}};
    if (p.type == "table") {
        j["nodes"] = p.nodes;
        j["values"] = p.values;
    } else {
        j["coeffs"] = p.coeffs;
    }
    return j;
}

CustomSpec custom_from_json(const json& j, const std::string& field) {
    if (!j.is_object()) fail(field, "must be an object");
    CustomSpec c;
    if (!j.contains("w")) fail(field + ".w", "required");
    c.w = profile_from_json(j["w"], field + ".w");
    if (j.contains("f") && !j["f"].is_null()) c.f = profile_from_json(j["f"], field + ".f");
    if (!j.contains("r_max") || !j["r_max"].is_number()) fail(field + ".r_max", "missing or not a number");
    c.r_max = j["r_max"].get<double>();
    if (!(c.r_max > 0.0) || !std::isfinite(c.r_max)) fail(field + ".r_max", "must be positive and finite");
    if (j.contains("closed")) {
        if (!j["closed"].is_boolean()) fail(field + ".closed", "must be a boolean");
        c.closed = j["closed"].get<bool>();
    }
    for (const auto& [key, value] : j.items())
        if (key != "w" && key != "f" && key != "r_max" && key != "closed") fail(field + "." + key, "unknown field");
    return c;
}

smms::RadialProfile make_profile(const ProfileSpec& p) {
    if (p.type == "poly") return smms::RadialProfile::polynomial(p.coeffs);
    if (p.type == "fourier") return smms::RadialProfile::fourier(p.coeffs);
    return smms::RadialProfile::table(p.nodes, p.values);
}

}  // namespace

SpaceSpec space_spec_from_json(const json& j) {
    if (!j.is_object()) fail("spec", "must be a JSON object");
    SpaceSpec spec;
    if (!j.contains("name") || !j["name"].is_string()) fail("spec.name", "missing or not a string");
    spec.name = j["name"].get<std::string>();
    if (!j.contains("n") || !j["n"].is_number_integer()) fail("spec.n", "missing or not an integer");
    spec.n = j["n"].get<int>();
    if (spec.n < 2) fail("spec.n", "must be >= 2");
    if (j.contains("params")) {
        if (!j["params"].is_object()) fail("spec.params", "must be an object of reals");
        for (const auto& [key, value] : j["params"].items()) {
            if (!value.is_number()) fail("spec.params." + key, "must be a real number");
            spec.params[key] = value.get<double>();
        }
    }
    const bool has_custom = j.contains("custom") && !j["custom"].is_null();
    if (has_custom) spec.custom = custom_from_json(j["custom"], "spec.custom");
    if (spec.name == "custom" && !has_custom) fail("spec.custom", "required when name is 'custom'");
    if (spec.name != "custom" && has_custom) fail("spec.custom", "only allowed when name is 'custom'");
    if (spec.name == "custom" && !spec.params.empty()) fail("spec.params", "not used by a custom space");
    for (const auto& [key, value] : j.items())
        if (key != "name" && key != "n" && key != "params" && key != "custom") fail("spec." + key, "unknown field");
    return spec;
}

SpaceSpec custom_file_spec(const json& j, int n) {
    if (j.is_object() && j.contains("name")) return space_spec_from_json(j);
    SpaceSpec spec;
    spec.name = "custom";
    spec.n = n;
    spec.custom = custom_from_json(j, "custom");
    return spec;
}

json to_json(const SpaceSpec& spec) {
    json j{{"name", spec.name}, {"n", spec.n}, {"params", json::object()}};
    for (const auto& [key, value] : spec.params) j["params"][key] = value;
    if (spec.custom) {
        json c{{"w", profile_to_json(spec.custom->w)}, {"r_max", spec.custom->r_max}, {"closed", spec.custom->closed}};
        if (spec.custom->f) c["f"] = profile_to_json(*spec.custom->f);
        j["custom"] = c;
    }
    return j;
}

smms::WarpedSMMS build_space(const SpaceSpec& spec) {
    if (spec.n < 2) fail("n", "must be >= 2");
    if (spec.name != "custom") return smms::make_space(spec.name, spec.n, spec.params);
    if (!spec.custom) fail("custom", "profile specs required for a custom space");
    const CustomSpec& c = *spec.custom;
    smms::RadialProfile w = make_profile(c.w);
    smms::RadialProfile f = c.f ? make_profile(*c.f) : smms::RadialProfile::constant(0.0);
    return smms::WarpedSMMS(spec.n, std::move(w), std::move(f), c.r_max, c.closed, "custom");
}

SpaceSpec resolved_spec(const SpaceSpec& spec, const smms::WarpedSMMS& s) {
    SpaceSpec out = spec;
    if (spec.name != "custom") out.params = s.params();
    return out;
}

}  // namespace becomp::cli
