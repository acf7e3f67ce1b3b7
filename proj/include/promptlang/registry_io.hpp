#pragma once

// Registry declaration files: the one sanctioned way to introduce
// extension modules and custom scenarios.
//
//   {"modules": [{"name": ..., "description": ..., "scenarios": [...] | "all"}],
//    "scenarios": [{"name": ..., "defined": [...]}]}

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

#include "promptlang/core.hpp"
#include "promptlang/registry.hpp"

namespace promptlang {

inline ScenarioMatrix load_registry(std::string_view source,
                                    ScenarioMatrix matrix = ScenarioMatrix::builtin()) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(source);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("registry file is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("registry file must be a JSON object");

    // custom scenarios first so module declarations may reference them
    if (root.contains("scenarios")) {
        if (!root["scenarios"].is_array())
            throw ConfigError("registry \"scenarios\" must be an array");
        for (const auto& s : root["scenarios"]) {
            if (!s.is_object() || !s.contains("name") || !s["name"].is_string())
                throw ConfigError("registry scenario entries need a string \"name\"");
            std::vector<std::string> defined;
            if (s.contains("defined")) {
                if (!s["defined"].is_array())
                    throw ConfigError("registry scenario \"defined\" must be an array");
                for (const auto& m : s["defined"]) {
                    if (!m.is_string())
                        throw ConfigError("registry scenario \"defined\" entries must be strings");
                    defined.push_back(m.get<std::string>());
                }
            }
            matrix = matrix.register_scenario(s["name"].get<std::string>(), defined);
        }
    }

    if (root.contains("modules")) {
        if (!root["modules"].is_array())
            throw ConfigError("registry \"modules\" must be an array");
        for (const auto& m : root["modules"]) {
            if (!m.is_object() || !m.contains("name") || !m["name"].is_string())
                throw ConfigError("registry module entries need a string \"name\"");
            ExtensionModuleDecl decl;
            decl.name = m["name"].get<std::string>();
            if (m.contains("description") && m["description"].is_string())
                decl.description = m["description"].get<std::string>();
            if (!m.contains("scenarios"))
                throw ConfigError("registry module '" + decl.name +
                                  "' needs \"scenarios\" (an array or \"all\")");
            const auto& scen = m["scenarios"];
            if (scen.is_string() && scen.get<std::string>() == "all") {
                decl.all_scenarios = true;
            } else if (scen.is_array()) {
                for (const auto& s : scen) {
                    if (!s.is_string())
                        throw ConfigError("registry module scenarios must be strings");
                    decl.scenarios.push_back(resolve_scenario(s.get<std::string>()));
                }
            } else {
                throw ConfigError("registry module '" + decl.name +
                                  "' has invalid \"scenarios\"");
            }
            matrix = matrix.register_extension(decl);
        }
    }
    return matrix;
}

}  // namespace promptlang
