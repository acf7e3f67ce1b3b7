#pragma once

// Diagnostic rules over parsed documents. The rule families map the four
// prompt design principles onto checkable structure: P1 regularised
// format, P2 extensibility hygiene, P3 clarity/completeness, P4
// flexibility-preserving advisories (never above Info).

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "promptlang/core.hpp"
#include "promptlang/parser.hpp"
#include "promptlang/registry.hpp"
#include "promptlang/templating.hpp"

namespace promptlang {

struct LintConfig {
    std::set<std::string, CaseInsensitiveLess> required_modules{"Profile", "Goal"};
    bool scenario_strict = false;  // escalates P3-OFF-MATRIX to Error
    int max_element_length = 500;
    std::optional<std::set<std::string>> enabled_rules;  // nullopt = all
};

struct RuleInfo {
    std::string_view code;
    std::string_view principle;
    std::string_view description;
};

// The published rule registry. Every diagnostic this toolkit emits,
// whether from the parsers, the linter, or templating, uses one of
// these codes.
inline const std::vector<RuleInfo>& rule_table() {
    static const std::vector<RuleInfo> rules = {
        {"P1-NO-TITLE", "Principle 1: prompts should have a regularised format",
         "The document must begin with a `# <name>` title line."},
        {"P1-DUP-MODULE", "Principle 1: prompts should have a regularised format",
         "Module names must be unique within a document (case-insensitive)."},
        {"P1-EMPTY-PROC", "Principle 1: prompts should have a regularised format",
         "A procedure must list at least one action; a `Return` bullet may not "
         "stand alone."},
        {"P1-STRAY-TEXT", "Principle 1: prompts should have a regularised format",
         "Every line must be a title, header, module or procedure heading, or "
         "bullet; prose outside the grammar is rejected rather than silently "
         "ignored."},
        {"P1-EMPTY-BODY", "Principle 1: prompts should have a regularised format",
         "A document with no modules should extend a base template."},
        {"P1-EMPTY-MODULE", "Principle 1: prompts should have a regularised format",
         "A module must contain at least one element."},
        {"P1-JSON-SYNTAX", "Principle 1: prompts should have a regularised format",
         "The JSON form must be syntactically valid."},
        {"P1-JSON-SCHEMA", "Principle 1: prompts should have a regularised format",
         "The JSON form must follow the document schema; unknown fields are "
         "warnings, wrong types and missing required fields are errors."},
        {"P1-NONCANON-ORDER", "Principle 1: prompts should have a regularised format",
         "Modules deviate from the canonical order (Profile, Constraint, Goal, "
         "Initialization, Example, Workflow, Skill, Suggestion, Background, "
         "Style, OutputFormat); run `fmt --order canonical` to normalize."},
        {"P2-UNREGISTERED-EXT", "Principle 2: the structure of prompts should be extensible",
         "Extension modules should be declared in a registry file so their "
         "intent and scenarios are recorded."},
        {"P2-BAD-EXT-NAME", "Principle 2: the structure of prompts should be extensible",
         "An extension module name shadows an accepted alias of an inherent "
         "module, which would make the document ambiguous."},
        {"P3-MISSING-REQUIRED", "Principle 3: specific requirements must be clear and complete",
         "A required module (by default Profile and Goal) is absent."},
        {"P3-UNBOUND-PLACEHOLDER", "Principle 3: specific requirements must be clear and complete",
         "The document still contains placeholders; bind them before handing "
         "the prompt to a model."},
        {"P3-EMPTY-PROC-RESULT", "Principle 3: specific requirements must be clear and complete",
         "A procedure promises output (an action starts with `Return`) but "
         "declares no result bullet."},
        {"P3-OFF-MATRIX", "Principle 3: specific requirements must be clear and complete",
         "The module is not designed for the declared scenario in the "
         "scenario-module definition matrix; it is allowed but likely "
         "unintended."},
        {"P3-OVERLONG", "Principle 3: specific requirements must be clear and complete",
         "An element exceeds the configured maximum length; long instructions "
         "are hard to follow and usually hide several requirements."},
        {"P3-UNUSED-BINDING", "Principle 3: specific requirements must be clear and complete",
         "A binding was supplied for a placeholder that does not occur in the "
         "document."},
        {"P4-PATTERN-INFO", "Principle 4: languages should be flexible",
         "A freeform line looks like an assignment; the canonical `The "
         "<property> is <value>.` pattern is machine-checkable, but adapted "
         "phrasing is always accepted (this advisory never escalates)."},
    };
    return rules;
}

inline const RuleInfo* find_rule(std::string_view code) {
    for (const auto& r : rule_table())
        if (r.code == code) return &r;
    return nullptr;
}

inline std::string explain_rule(std::string_view code) {
    const RuleInfo* rule = find_rule(code);
    if (!rule) throw UnknownRuleError("unknown rule code: " + std::string(code));
    std::string out(rule->code);
    out += " — ";
    out += rule->principle;
    out += "\n";
    out += rule->description;
    return out;
}

namespace detail {

inline bool looks_like_assignment(std::string_view text) {
    std::string_view t = trim(text);
    if (!(t.substr(0, 4) == "The " || t.substr(0, 4) == "the ")) return false;
    for (std::string_view verb : {" is ", " are ", " should be ", " must be "})
        if (t.find(verb) != std::string_view::npos) return true;
    return false;
}

}  // namespace detail

// Runs the full rule set over a parsed document. `source_map` supplies
// spans when the document came from a file; synthesized documents lint
// with default spans.
inline std::vector<Diagnostic> lint(const PromptDocument& doc, const ScenarioMatrix& matrix,
                                    const LintConfig& config = {},
                                    const SourceMap* source_map = nullptr,
                                    const std::string& file = "") {
    if (config.enabled_rules) {
        for (const auto& code : *config.enabled_rules)
            if (!find_rule(code)) throw ConfigError("unknown rule code: " + code);
    }
    if (config.max_element_length < 1)
        throw ConfigError("max_element_length must be >= 1");
    for (const auto& name : config.required_modules)
        if (!resolve_inherent(name) && !matrix.find_extension(name))
            throw ConfigError("required module is not a known module name: " + name);

    std::vector<Diagnostic> diags;
    auto enabled = [&](std::string_view code) {
        return !config.enabled_rules || config.enabled_rules->count(std::string(code)) > 0;
    };
    auto report = [&](Severity sev, std::string_view code, std::string message, Span span) {
        if (enabled(code))
            diags.push_back({sev, std::string(code), std::move(message), span, file});
    };
    auto module_span = [&](size_t mi) {
        return source_map ? source_map->module_span(mi) : Span{};
    };
    auto element_span = [&](size_t mi, size_t ei) {
        return source_map ? source_map->element_span(mi, ei) : Span{};
    };

    // P1-DUP-MODULE / P1-EMPTY-MODULE (re-checked for synthesized docs)
    for (size_t mi = 0; mi < doc.modules.size(); ++mi) {
        const auto& mod = doc.modules[mi];
        for (size_t mj = 0; mj < mi; ++mj) {
            if (iequals(doc.modules[mj].name, mod.name)) {
                report(Severity::Error, "P1-DUP-MODULE",
                       "duplicate module '" + mod.name + "'", module_span(mi));
                break;
            }
        }
        if (mod.elements.empty())
            report(Severity::Error, "P1-EMPTY-MODULE",
                   "module '" + mod.name + "' has no elements", module_span(mi));
    }

    // P1-NONCANON-ORDER
    {
        int last_rank = -1;
        for (size_t mi = 0; mi < doc.modules.size(); ++mi) {
            if (doc.modules[mi].kind != ModuleKind::Inherent) continue;
            int rank = canonical_module_rank(doc.modules[mi].name);
            if (rank < last_rank) {
                report(Severity::Info, "P1-NONCANON-ORDER",
                       "module '" + doc.modules[mi].name +
                           "' is out of canonical order",
                       module_span(mi));
                break;
            }
            last_rank = rank;
        }
    }

    // P2 family
    for (size_t mi = 0; mi < doc.modules.size(); ++mi) {
        const auto& mod = doc.modules[mi];
        if (mod.kind != ModuleKind::Extension) continue;
        if (shadows_inherent_alias(mod.name)) {
            report(Severity::Warning, "P2-BAD-EXT-NAME",
                   "extension module '" + mod.name +
                       "' shadows an alias of an inherent module",
                   module_span(mi));
        } else if (!matrix.find_extension(mod.name)) {
            report(Severity::Warning, "P2-UNREGISTERED-EXT",
                   "extension module '" + mod.name + "' is not registered",
                   module_span(mi));
        }
    }

    // P3-MISSING-REQUIRED
    for (const auto& required : config.required_modules) {
        if (!doc.find_module(required))
            report(Severity::Warning, "P3-MISSING-REQUIRED",
                   "required module '" + required + "' is absent", Span{1, 1, 0});
    }

    // P3-UNBOUND-PLACEHOLDER: one finding per placeholder name
    for (const auto& ph : list_placeholders(doc)) {
        const auto& first = ph.occurrences.front();
        size_t mi = 0;
        for (size_t i = 0; i < doc.modules.size(); ++i)
            if (doc.modules[i].name == first.module) mi = i;
        report(Severity::Info, "P3-UNBOUND-PLACEHOLDER",
               "placeholder <" + ph.name + "> is not yet populated (" +
                   std::to_string(ph.occurrences.size()) + " occurrence" +
                   (ph.occurrences.size() == 1 ? "" : "s") + ", first in " +
                   first.module + ")",
               element_span(mi, first.element_index));
    }

    // per-element rules
    for (size_t mi = 0; mi < doc.modules.size(); ++mi) {
        const auto& mod = doc.modules[mi];
        if (doc.scenario && matrix.has_scenario(*doc.scenario) &&
            !matrix.is_defined(*doc.scenario, mod.name)) {
            report(config.scenario_strict ? Severity::Error : Severity::Warning,
                   "P3-OFF-MATRIX",
                   "module '" + mod.name + "' is not defined for scenario '" +
                       *doc.scenario + "'",
                   module_span(mi));
        }
        for (size_t ei = 0; ei < mod.elements.size(); ++ei) {
            const Element& elem = mod.elements[ei];
            size_t length = 0;
            detail::for_each_text(elem, [&](const std::string& t) { length += t.size(); });
            if (length > static_cast<size_t>(config.max_element_length))
                report(Severity::Warning, "P3-OVERLONG",
                       "element is " + std::to_string(length) +
                           " characters long (limit " +
                           std::to_string(config.max_element_length) + ")",
                       element_span(mi, ei));
            if (const auto* p = std::get_if<Procedure>(&elem)) {
                if (!p->result) {
                    for (const auto& action : p->actions) {
                        if (trim(action).substr(0, 6) == "Return") {
                            report(Severity::Warning, "P3-EMPTY-PROC-RESULT",
                                   "procedure '" + p->name +
                                       "' promises output but declares no result "
                                       "bullet",
                                   element_span(mi, ei));
                            break;
                        }
                    }
                }
            } else if (std::holds_alternative<Freeform>(elem)) {
                if (detail::looks_like_assignment(*element_text(elem)))
                    report(Severity::Info, "P4-PATTERN-INFO",
                           "line reads like an assignment; the canonical form is "
                           "`The <property> is <value>.`",
                           element_span(mi, ei));
            }
        }
    }

    sort_diagnostics(diags);
    return diags;
}

// ---------------------------------------------------------------------------
// Config file (promptlang.toml, flat key = value subset)

inline LintConfig parse_lint_config(std::string_view source) {
    LintConfig config;
    auto parse_string_list = [](std::string_view v,
                                const std::string& key) -> std::vector<std::string> {
        v = trim(v);
        if (v.empty() || v.front() != '[' || v.back() != ']')
            throw ConfigError(key + " must be an array of strings");
        v = v.substr(1, v.size() - 2);
        std::vector<std::string> out;
        size_t i = 0;
        while (i < v.size()) {
            while (i < v.size() && (std::isspace(static_cast<unsigned char>(v[i])) || v[i] == ','))
                ++i;
            if (i >= v.size()) break;
            if (v[i] != '"') throw ConfigError(key + " must contain quoted strings");
            size_t end = v.find('"', i + 1);
            if (end == std::string_view::npos)
                throw ConfigError(key + " has an unterminated string");
            out.emplace_back(v.substr(i + 1, end - i - 1));
            i = end + 1;
        }
        return out;
    };

    int line_no = 0;
    size_t start = 0;
    for (size_t i = 0; i <= source.size(); ++i) {
        if (i != source.size() && source[i] != '\n') continue;
        std::string_view line = trim(source.substr(start, i - start));
        start = i + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (key == "required_modules") {
            config.required_modules.clear();
            for (auto& name : parse_string_list(value, key))
                config.required_modules.insert(std::move(name));
        } else if (key == "scenario_strict") {
            if (value == "true")
                config.scenario_strict = true;
            else if (value == "false")
                config.scenario_strict = false;
            else
                throw ConfigError("scenario_strict must be true or false");
        } else if (key == "max_element_length") {
            try {
                config.max_element_length = std::stoi(std::string(value));
            } catch (...) {
                throw ConfigError("max_element_length must be an integer");
            }
            if (config.max_element_length < 1)
                throw ConfigError("max_element_length must be >= 1");
        } else if (key == "enabled_rules") {
            std::set<std::string> rules;
            for (auto& code : parse_string_list(value, key)) {
                if (!find_rule(code)) throw ConfigError("unknown rule code: " + code);
                rules.insert(std::move(code));
            }
            config.enabled_rules = std::move(rules);
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
    return config;
}

// Machine-readable form: one JSON record per line.
inline std::string diagnostic_to_json_line(const Diagnostic& d) {
    nlohmann::ordered_json j;
    j["file"] = d.file;
    j["line"] = d.span.line;
    j["column"] = d.span.column;
    j["severity"] = std::string(severity_name(d.severity));
    j["code"] = d.code;
    j["message"] = d.message;
    return j.dump();
}

inline std::string diagnostic_to_text(const Diagnostic& d) {
    std::string out;
    if (!d.file.empty()) out += d.file + ":";
    out += std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": ";
    out += severity_name(d.severity);
    out += " [" + d.code + "] " + d.message;
    return out;
}

}  // namespace promptlang
