#pragma once

// Validator for the JSON Schema keywords used by data/report.schema.json.
// Unknown keywords are rejected so the schema cannot silently outgrow it.

#include <cmath>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace testsupport {

class SchemaValidator {
public:
    explicit SchemaValidator(nlohmann::json schema) : root_(std::move(schema)) {}

    /// Empty when `doc` conforms; otherwise one message per violation.
    std::vector<std::string> validate(const nlohmann::json& doc) const {
        std::vector<std::string> errors;
        check(root_, doc, "$", errors);
        return errors;
    }

private:
    const nlohmann::json& resolve(const std::string& ref) const {
        const std::string prefix = "#/$defs/";
        if (ref.rfind(prefix, 0) != 0) throw std::invalid_argument("unsupported $ref " + ref);
        return root_.at("$defs").at(ref.substr(prefix.size()));
    }

    static bool has_type(const nlohmann::json& v, const std::string& t) {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "boolean") return v.is_boolean();
        if (t == "null") return v.is_null();
        if (t == "number") return v.is_number();
        if (t == "integer") {
            return v.is_number_integer() || (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>());
        }
        throw std::invalid_argument("unsupported type " + t);
    }

    bool ok(const nlohmann::json& schema, const nlohmann::json& v, const std::string& at) const {
        std::vector<std::string> errs;
        check(schema, v, at, errs);
        return errs.empty();
    }

    void check(const nlohmann::json& schema, const nlohmann::json& v, const std::string& at,
               std::vector<std::string>& errors) const {
        if (schema.is_boolean()) {
            if (!schema.get<bool>()) errors.push_back(at + ": no value allowed");
            return;
        }
        for (const auto& [kw, arg] : schema.items()) {
            if (kw == "$schema" || kw == "title" || kw == "description" || kw == "$defs") continue;
            if (kw == "$ref") {
                check(resolve(arg.get<std::string>()), v, at, errors);
            } else if (kw == "type") {
                if (!has_type(v, arg.get<std::string>())) errors.push_back(at + ": expected " + arg.get<std::string>());
            } else if (kw == "enum") {
                bool found = false;
                for (const auto& e : arg) found = found || e == v;
                if (!found) errors.push_back(at + ": not in enum");
            } else if (kw == "const") {
                if (arg != v) errors.push_back(at + ": const mismatch");
            } else if (kw == "required") {
                if (!v.is_object()) continue;
                for (const auto& k : arg) {
                    if (!v.contains(k.get<std::string>())) errors.push_back(at + ": missing " + k.get<std::string>());
                }
            } else if (kw == "properties") {
                if (!v.is_object()) continue;
                for (const auto& [k, sub] : arg.items()) {
                    if (v.contains(k)) check(sub, v.at(k), at + "." + k, errors);
                }
            } else if (kw == "additionalProperties") {
                if (!v.is_object()) continue;
                const nlohmann::json props = schema.value("properties", nlohmann::json::object());
                for (const auto& [k, sub] : v.items()) {
                    if (!props.contains(k)) check(arg, sub, at + "." + k, errors);
                }
            } else if (kw == "items") {
                if (!v.is_array()) continue;
                for (std::size_t i = 0; i < v.size(); ++i) check(arg, v[i], at + "[" + std::to_string(i) + "]", errors);
            } else if (kw == "minItems") {
                if (v.is_array() && v.size() < arg.get<std::size_t>()) errors.push_back(at + ": too few items");
            } else if (kw == "maxItems") {
                if (v.is_array() && v.size() > arg.get<std::size_t>()) errors.push_back(at + ": too many items");
            } else if (kw == "minimum") {
                if (v.is_number() && v.get<double>() < arg.get<double>()) errors.push_back(at + ": below minimum");
            } else if (kw == "maximum") {
                if (v.is_number() && v.get<double>() > arg.get<double>()) errors.push_back(at + ": above maximum");
            } else if (kw == "minLength") {
                if (v.is_string() && v.get<std::string>().size() < arg.get<std::size_t>()) {
                    errors.push_back(at + ": string too short");
                }
            } else if (kw == "pattern") {
                if (v.is_string() && !std::regex_search(v.get<std::string>(), std::regex(arg.get<std::string>()))) {
                    errors.push_back(at + ": pattern mismatch");
                }
            } else if (kw == "oneOf") {
                int matched = 0;
                for (const auto& sub : arg) matched += ok(sub, v, at) ? 1 : 0;
                if (matched != 1) errors.push_back(at + ": oneOf matched " + std::to_string(matched));
            } else if (kw == "anyOf") {
                bool any = false;
                for (const auto& sub : arg) any = any || ok(sub, v, at);
                if (!any) errors.push_back(at + ": anyOf matched none");
            } else if (kw == "not") {
                if (ok(arg, v, at)) errors.push_back(at + ": matched a forbidden schema");
            } else {
                throw std::invalid_argument("unsupported keyword " + kw);
            }
        }
    }

    nlohmann::json root_;
};

}  // namespace testsupport
