#pragma once
// Minimal JSON Schema subset: type, enum, required, properties,
// additionalProperties, items. Enough for the report schema.
#include <json.hpp>

#include <string>
#include <vector>

namespace becomp::testing {

inline bool type_matches(const nlohmann::json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "integer") return v.is_number_integer() || (v.is_number_float() && v.get<double>() == static_cast<long long>(v.get<double>()));
    if (t == "number") return v.is_number();
    if (t == "null") return v.is_null();
    return false;
}

inline void schema_errors(const nlohmann::json& schema, const nlohmann::json& v, const std::string& path,
                          std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(v, t.get<std::string>());
        } else {
            for (const auto& alt : t) ok = ok || type_matches(v, alt.get<std::string>());
        }
        if (!ok) {
            errors.push_back(path + ": type mismatch, expected " + t.dump());
            return;
        }
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& e : schema["enum"]) found = found || e == v;
        if (!found) errors.push_back(path + ": value " + v.dump() + " not in enum");
    }
    if (v.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!v.contains(key.get<std::string>())) errors.push_back(path + ": missing " + key.get<std::string>());
        const nlohmann::json props = schema.value("properties", nlohmann::json::object());
        for (const auto& [key, value] : v.items()) {
            if (props.contains(key)) {
                schema_errors(props[key], value, path + "." + key, errors);
            } else if (schema.contains("additionalProperties")) {
                const auto& extra = schema["additionalProperties"];
                if (extra.is_boolean()) {
                    if (!extra.get<bool>()) errors.push_back(path + ": unexpected property " + key);
                } else {
                    schema_errors(extra, value, path + "." + key, errors);
                }
            }
        }
    }
    if (v.is_array() && schema.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i)
            schema_errors(schema["items"], v[i], path + "[" + std::to_string(i) + "]", errors);
}

inline std::vector<std::string> validate_schema(const nlohmann::json& schema, const nlohmann::json& v) {
    std::vector<std::string> errors;
    schema_errors(schema, v, "$", errors);
    return errors;
}

}  // namespace becomp::testing
