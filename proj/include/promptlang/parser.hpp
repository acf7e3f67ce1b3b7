#pragma once

// Parsers for the two document formats. Both produce a ParseResult whose
// document is present exactly when no Error-severity diagnostic was
// emitted; parsing keeps going after errors so independent findings in
// the same source are all reported in one pass.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "promptlang/core.hpp"
#include "promptlang/registry.hpp"

namespace promptlang {

// Source locations for a parsed document, parallel to its modules and
// their elements. Kept outside PromptDocument so structural equality
// never depends on where a document came from.
struct SourceMap {
    std::vector<Span> module_spans;
    std::vector<std::vector<Span>> element_spans;

    Span module_span(size_t module_index) const {
        return module_index < module_spans.size() ? module_spans[module_index] : Span{};
    }
    Span element_span(size_t module_index, size_t element_index) const {
        if (module_index < element_spans.size() &&
            element_index < element_spans[module_index].size())
            return element_spans[module_index][element_index];
        return module_span(module_index);
    }
};

struct ParseResult {
    std::optional<PromptDocument> document;
    std::vector<Diagnostic> diagnostics;
    SourceMap source_map;

    bool ok() const { return document.has_value(); }
};

inline std::string detect_format(std::string_view source,
                                 std::optional<std::string> hint = std::nullopt) {
    if (hint) return *hint;
    for (char c : source) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? "json" : "md";
    }
    return "md";
}

namespace detail {

struct LineView {
    std::string_view text;  // without trailing newline / carriage return
    int number = 1;
};

inline std::vector<LineView> split_lines(std::string_view source) {
    std::vector<LineView> lines;
    int n = 1;
    size_t start = 0;
    for (size_t i = 0; i <= source.size(); ++i) {
        if (i == source.size() || source[i] == '\n') {
            std::string_view line = source.substr(start, i - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines.push_back({line, n++});
            start = i + 1;
        }
    }
    if (!lines.empty() && lines.back().text.empty()) lines.pop_back();
    return lines;
}

inline Span line_span(const LineView& line) {
    size_t col = line.text.find_first_not_of(" \t");
    if (col == std::string_view::npos) col = 0;
    return Span{line.number, static_cast<int>(col) + 1,
                static_cast<int>(trim(line.text).size())};
}

constexpr std::string_view kLeadPrefix = "For the given ";
constexpr std::string_view kLeadSuffix = ", please execute the following actions:";

// Parses the optional procedure lead clause. Accepts
//   For the given <property> of <value>, please execute ... :
// as well as the form where the value is a placeholder standing directly
// after the property ("For the given article <ARTICLE>, ...").
inline std::optional<ProcedureInput> parse_lead_clause(std::string_view text) {
    if (text.substr(0, kLeadPrefix.size()) != kLeadPrefix) return std::nullopt;
    if (text.empty() || text.back() != ':') return std::nullopt;
    std::string_view core = text.substr(kLeadPrefix.size());
    if (core.size() >= kLeadSuffix.size() &&
        core.substr(core.size() - kLeadSuffix.size()) == kLeadSuffix) {
        core.remove_suffix(kLeadSuffix.size());
    } else {
        core.remove_suffix(1);  // bare trailing colon
        core = trim(core);
        if (!core.empty() && core.back() == ',') core.remove_suffix(1);
    }
    core = trim(core);
    size_t of = core.find(" of ");
    if (of != std::string_view::npos) {
        std::string_view property = trim(core.substr(0, of));
        std::string_view value = trim(core.substr(of + 4));
        if (!property.empty() && !value.empty())
            return ProcedureInput{std::string(property), std::string(value)};
    }
    // trailing placeholder form
    size_t lt = core.rfind('<');
    if (lt != std::string_view::npos && is_placeholder_token(core.substr(lt))) {
        std::string_view property = trim(core.substr(0, lt));
        if (!property.empty())
            return ProcedureInput{std::string(property), std::string(core.substr(lt))};
    }
    return std::nullopt;
}

// Canonical rendering of a lead clause; the renderer and scaffolder share it.
inline std::string render_lead_clause(const ProcedureInput& input) {
    std::string out(kLeadPrefix);
    out += input.property;
    out += is_placeholder_token(input.value) ? " " : " of ";
    out += input.value;
    out += kLeadSuffix;
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Markdown dialect

inline ParseResult parse_markdown(std::string_view source, std::string file = "") {
    ParseResult result;
    auto& diags = result.diagnostics;
    auto report = [&](Severity sev, std::string code, std::string message, Span span) {
        diags.push_back({sev, std::move(code), std::move(message), span, file});
    };

    PromptDocument doc;
    SourceMap map;
    bool saw_title = false;
    bool in_header = true;  // before the first `##`

    struct OpenModule {
        ModuleKind kind;
        std::string name;
        std::vector<Element> elements;
        std::vector<Span> spans;
        Span span;
    };
    struct OpenProcedure {
        Procedure proc;
        Span span;
        bool saw_lead = false;
    };
    std::optional<OpenModule> module;
    std::optional<OpenProcedure> procedure;

    auto close_procedure = [&]() {
        if (!procedure) return;
        if (procedure->proc.actions.empty()) {
            report(Severity::Error, "P1-EMPTY-PROC",
                   "procedure '" + procedure->proc.name + "' has no actions",
                   procedure->span);
        } else if (module) {
            module->elements.push_back(procedure->proc);
            module->spans.push_back(procedure->span);
        }
        procedure.reset();
    };
    auto close_module = [&]() {
        close_procedure();
        if (!module) return;
        if (module->elements.empty()) {
            report(Severity::Error, "P1-EMPTY-MODULE",
                   "module '" + module->name + "' has no elements", module->span);
        } else if (doc.find_module(module->name)) {
            report(Severity::Error, "P1-DUP-MODULE",
                   "duplicate module '" + module->name + "'", module->span);
        } else {
            doc.modules.push_back(
                ModuleInstance{module->kind, module->name, std::move(module->elements)});
            map.module_spans.push_back(module->span);
            map.element_spans.push_back(std::move(module->spans));
        }
        module.reset();
    };

    for (const auto& line : detail::split_lines(source)) {
        std::string_view raw = line.text;
        std::string_view t = trim(raw);
        Span span = detail::line_span(line);
        if (t.empty()) continue;

        if (!saw_title) {
            if (t.substr(0, 2) == "# " && !trim(t.substr(2)).empty()) {
                doc.name = std::string(trim(t.substr(2)));
                saw_title = true;
                continue;
            }
            report(Severity::Error, "P1-NO-TITLE",
                   "expected `# <name>` on the first line", span);
            saw_title = true;  // report once, keep parsing the rest
            // fall through so the offending line is still interpreted
        }

        size_t indent = raw.find_first_not_of(' ');
        if (indent == std::string_view::npos) indent = 0;

        if (t.substr(0, 3) == "## " && t.substr(0, 4) != "### ") {
            close_module();
            in_header = false;
            std::string_view name = trim(t.substr(3));
            if (name.empty()) {
                report(Severity::Error, "P1-STRAY-TEXT", "module heading has no name",
                       span);
                continue;
            }
            OpenModule m;
            if (auto inh = resolve_inherent(name)) {
                m.kind = ModuleKind::Inherent;
                m.name = std::string(inherent_name(*inh));
            } else {
                m.kind = ModuleKind::Extension;
                m.name = std::string(name);
            }
            m.span = span;
            module = std::move(m);
            continue;
        }

        if (t.substr(0, 4) == "### ") {
            if (!module) {
                report(Severity::Error, "P1-STRAY-TEXT",
                       "procedure heading outside of a module", span);
                continue;
            }
            close_procedure();
            std::string_view name = trim(t.substr(4));
            if (name.empty()) {
                report(Severity::Error, "P1-STRAY-TEXT",
                       "procedure heading has no name", span);
                continue;
            }
            OpenProcedure p;
            p.proc.name = std::string(name);
            p.span = span;
            procedure = std::move(p);
            continue;
        }

        if (t.substr(0, 2) == "- ") {
            std::string_view body = trim(t.substr(2));
            if (body.empty()) {
                report(Severity::Error, "P1-STRAY-TEXT", "empty bullet", span);
                continue;
            }
            if (indent >= 2) {
                if (procedure) {
                    procedure->proc.actions.push_back(std::string(body));
                } else {
                    report(Severity::Error, "P1-STRAY-TEXT",
                           "indented bullet outside of a procedure", span);
                }
                continue;
            }
            if (indent == 1) {
                report(Severity::Error, "P1-STRAY-TEXT",
                       "bullet indented by a single space (use 2 or more for "
                       "procedure actions)",
                       span);
                continue;
            }
            if (!module) {
                report(Severity::Error, "P1-STRAY-TEXT", "bullet outside of a module",
                       span);
                continue;
            }
            if (procedure) {
                if (!procedure->saw_lead && procedure->proc.actions.empty() &&
                    body.substr(0, detail::kLeadPrefix.size()) == detail::kLeadPrefix) {
                    if (auto input = detail::parse_lead_clause(body)) {
                        procedure->proc.input = std::move(*input);
                        procedure->saw_lead = true;
                    } else {
                        report(Severity::Error, "P1-STRAY-TEXT",
                               "malformed procedure lead clause", span);
                    }
                    continue;
                }
                if (body.substr(0, 7) == "Return ") {
                    if (procedure->proc.actions.empty()) {
                        report(Severity::Error, "P1-EMPTY-PROC",
                               "`Return` bullet without preceding actions", span);
                        procedure.reset();
                    } else {
                        procedure->proc.result = std::string(trim(body.substr(7)));
                        close_procedure();
                    }
                    continue;
                }
                // a plain bullet after the actions ends the procedure
                close_procedure();
            }
            module->elements.push_back(classify_element_line(body));
            module->spans.push_back(span);
            continue;
        }

        if (in_header) {
            if (t.substr(0, 9) == "Scenario:") {
                std::string_view value = trim(t.substr(9));
                if (value.empty() || doc.scenario) {
                    report(Severity::Error, "P1-STRAY-TEXT",
                           doc.scenario ? "duplicate Scenario header"
                                        : "Scenario header has no value",
                           span);
                } else {
                    doc.scenario = resolve_scenario(value);
                }
                continue;
            }
            if (t.substr(0, 8) == "Extends:") {
                std::string_view value = trim(t.substr(8));
                if (value.empty() || doc.extends) {
                    report(Severity::Error, "P1-STRAY-TEXT",
                           doc.extends ? "duplicate Extends header"
                                       : "Extends header has no value",
                           span);
                } else {
                    doc.extends = std::string(value);
                }
                continue;
            }
        }

        report(Severity::Error, "P1-STRAY-TEXT",
               "unrecognized line: " + std::string(t.substr(0, 40)), span);
    }
    close_module();

    if (!saw_title)
        report(Severity::Error, "P1-NO-TITLE", "expected `# <name>` on the first line",
               Span{1, 1, 0});
    if (saw_title && doc.modules.empty() && !doc.extends && !has_errors(diags))
        report(Severity::Warning, "P1-EMPTY-BODY",
               "document has no modules and does not extend a base", Span{1, 1, 0});

    if (!has_errors(diags)) {
        result.document = std::move(doc);
        result.source_map = std::move(map);
    }
    return result;
}

// ---------------------------------------------------------------------------
// JSON format

namespace detail {

inline Span offset_to_span(std::string_view source, size_t offset, int length = 1) {
    int line = 1, column = 1;
    for (size_t i = 0; i < offset && i < source.size(); ++i) {
        if (source[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return Span{line, column, length};
}

inline void skip_json_ws(std::string_view s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline void skip_json_string(std::string_view s, size_t& i) {
    ++i;  // opening quote
    while (i < s.size() && s[i] != '"') {
        if (s[i] == '\\') ++i;
        ++i;
    }
    if (i < s.size()) ++i;  // closing quote
}

inline void skip_json_value(std::string_view s, size_t& i) {
    skip_json_ws(s, i);
    if (i >= s.size()) return;
    if (s[i] == '"') {
        skip_json_string(s, i);
        return;
    }
    if (s[i] == '{' || s[i] == '[') {
        char open = s[i], close = (open == '{') ? '}' : ']';
        int depth = 0;
        while (i < s.size()) {
            if (s[i] == '"') {
                skip_json_string(s, i);
                continue;
            }
            if (s[i] == open) ++depth;
            if (s[i] == close && --depth == 0) {
                ++i;
                return;
            }
            ++i;
        }
        return;
    }
    while (i < s.size() && s[i] != ',' && s[i] != '}' && s[i] != ']' &&
           !std::isspace(static_cast<unsigned char>(s[i])))
        ++i;
}

// Byte offset of the value addressed by a JSON-pointer-like segment list.
// Best effort: falls back to the enclosing value when a segment is absent.
inline size_t locate_json_segments(std::string_view s, size_t i,
                                   const std::vector<std::string>& segments,
                                   size_t seg) {
    skip_json_ws(s, i);
    if (seg >= segments.size()) return i;
    if (i >= s.size()) return i;
    if (s[i] == '{') {
        ++i;
        while (i < s.size()) {
            skip_json_ws(s, i);
            if (i >= s.size() || s[i] == '}') break;
            size_t key_start = i;
            if (s[i] != '"') break;
            size_t k = i;
            skip_json_string(s, k);
            std::string key(s.substr(i + 1, k - i - 2));
            i = k;
            skip_json_ws(s, i);
            if (i < s.size() && s[i] == ':') ++i;
            skip_json_ws(s, i);
            if (key == segments[seg]) {
                if (seg + 1 == segments.size()) return i;
                return locate_json_segments(s, i, segments, seg + 1);
            }
            (void)key_start;
            skip_json_value(s, i);
            skip_json_ws(s, i);
            if (i < s.size() && s[i] == ',') ++i;
        }
        return i;
    }
    if (s[i] == '[') {
        size_t index = 0;
        try {
            index = std::stoul(segments[seg]);
        } catch (...) {
            return i;
        }
        ++i;
        for (size_t n = 0;; ++n) {
            skip_json_ws(s, i);
            if (i >= s.size() || s[i] == ']') return i;
            if (n == index) {
                if (seg + 1 == segments.size()) return i;
                return locate_json_segments(s, i, segments, seg + 1);
            }
            skip_json_value(s, i);
            skip_json_ws(s, i);
            if (i < s.size() && s[i] == ',') ++i;
        }
    }
    return i;
}

inline Span json_pointer_span(std::string_view source, const std::vector<std::string>& segments) {
    size_t offset = locate_json_segments(source, 0, segments, 0);
    return offset_to_span(source, offset);
}

inline std::string join_pointer(const std::vector<std::string>& segments) {
    if (segments.empty()) return "/";
    std::string out;
    for (const auto& s : segments) {
        out += '/';
        out += s;
    }
    return out;
}

}  // namespace detail

inline ParseResult parse_json(std::string_view source, std::string file = "") {
    using json = nlohmann::ordered_json;
    ParseResult result;
    auto& diags = result.diagnostics;
    std::vector<std::string> path;
    auto report = [&](Severity sev, std::string code, std::string message) {
        Span span = detail::json_pointer_span(source, path);
        diags.push_back({sev, std::move(code),
                         message + " (at " + detail::join_pointer(path) + ")", span,
                         file});
    };
    auto with = [&](std::string segment, auto&& fn) {
        path.push_back(std::move(segment));
        fn();
        path.pop_back();
    };

    json root;
    try {
        root = json::parse(source);
    } catch (const json::parse_error& e) {
        size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        diags.push_back({Severity::Error, "P1-JSON-SYNTAX", e.what(),
                         detail::offset_to_span(source, offset), file});
        return result;
    }

    auto require_string = [&](const json& obj, const char* key, bool allow_empty,
                              std::string* out) -> bool {
        if (!obj.contains(key)) {
            report(Severity::Error, "P1-JSON-SCHEMA",
                   std::string("missing required field \"") + key + "\"");
            return false;
        }
        bool ok = true;
        with(key, [&] {
            if (!obj[key].is_string()) {
                report(Severity::Error, "P1-JSON-SCHEMA",
                       std::string("field \"") + key + "\" must be a string");
                ok = false;
                return;
            }
            std::string v = obj[key].get<std::string>();
            if (!allow_empty && trim(v).empty()) {
                report(Severity::Error, "P1-JSON-SCHEMA",
                       std::string("field \"") + key + "\" must be non-empty");
                ok = false;
                return;
            }
            if (v.find('\n') != std::string::npos) {
                report(Severity::Error, "P1-JSON-SCHEMA",
                       std::string("field \"") + key + "\" must be a single line");
                ok = false;
                return;
            }
            *out = std::move(v);
        });
        return ok;
    };
    auto warn_unknown = [&](const json& obj, std::initializer_list<std::string_view> known) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool found = false;
            for (auto k : known) found = found || (it.key() == k);
            if (!found)
                with(it.key(), [&] {
                    report(Severity::Warning, "P1-JSON-SCHEMA",
                           "unknown field \"" + it.key() + "\"");
                });
        }
    };

    if (!root.is_object()) {
        report(Severity::Error, "P1-JSON-SCHEMA", "top-level value must be an object");
        return result;
    }

    PromptDocument doc;
    SourceMap map;
    warn_unknown(root, {"name", "scenario", "extends", "modules"});
    require_string(root, "name", false, &doc.name);

    for (const char* key : {"scenario", "extends"}) {
        if (!root.contains(key) || root[key].is_null()) continue;
        with(key, [&] {
            if (!root[key].is_string()) {
                report(Severity::Error, "P1-JSON-SCHEMA",
                       std::string("field \"") + key + "\" must be a string or null");
                return;
            }
            std::string v = root[key].get<std::string>();
            if (trim(v).empty()) {
                report(Severity::Error, "P1-JSON-SCHEMA",
                       std::string("field \"") + key + "\" must be non-empty");
                return;
            }
            if (std::string_view(key) == "scenario")
                doc.scenario = resolve_scenario(v);
            else
                doc.extends = v;
        });
    }

    if (!root.contains("modules") || !root["modules"].is_array()) {
        report(Severity::Error, "P1-JSON-SCHEMA",
               "field \"modules\" must be an array");
        return result;
    }

    with("modules", [&] {
        size_t mi = 0;
        for (const auto& mobj : root["modules"]) {
            with(std::to_string(mi++), [&] {
                Span mspan = detail::json_pointer_span(source, path);
                if (!mobj.is_object()) {
                    report(Severity::Error, "P1-JSON-SCHEMA", "module must be an object");
                    return;
                }
                warn_unknown(mobj, {"kind", "name", "elements"});
                ModuleInstance mod;
                std::string kind, name;
                if (!require_string(mobj, "kind", false, &kind)) return;
                if (!require_string(mobj, "name", false, &name)) return;
                if (kind == "inherent") {
                    mod.kind = ModuleKind::Inherent;
                    auto inh = resolve_inherent(name);
                    if (!inh) {
                        with("name", [&] {
                            report(Severity::Error, "P1-JSON-SCHEMA",
                                   "\"" + name + "\" is not an inherent module");
                        });
                        return;
                    }
                    mod.name = std::string(inherent_name(*inh));
                } else if (kind == "extension") {
                    mod.kind = ModuleKind::Extension;
                    bool canonical_inherent = false;
                    for (InherentModule m : kInherentOrder)
                        canonical_inherent =
                            canonical_inherent || iequals(name, inherent_name(m));
                    if (canonical_inherent) {
                        with("name", [&] {
                            report(Severity::Error, "P1-JSON-SCHEMA",
                                   "extension module \"" + name +
                                       "\" shadows an inherent module name");
                        });
                        return;
                    }
                    mod.name = std::string(trim(name));
                } else {
                    with("kind", [&] {
                        report(Severity::Error, "P1-JSON-SCHEMA",
                               "\"kind\" must be \"inherent\" or \"extension\"");
                    });
                    return;
                }
                if (!mobj.contains("elements") || !mobj["elements"].is_array()) {
                    report(Severity::Error, "P1-JSON-SCHEMA",
                           "field \"elements\" must be an array");
                    return;
                }
                std::vector<Span> espans;
                with("elements", [&] {
                    size_t ei = 0;
                    for (const auto& eobj : mobj["elements"]) {
                        with(std::to_string(ei++), [&] {
                            espans.push_back(detail::json_pointer_span(source, path));
                            if (!eobj.is_object()) {
                                report(Severity::Error, "P1-JSON-SCHEMA",
                                       "element must be an object");
                                return;
                            }
                            std::string type;
                            if (!require_string(eobj, "type", false, &type)) return;
                            if (type == "assignment") {
                                warn_unknown(eobj, {"type", "property", "value", "text"});
                                Assignment a;
                                bool ok = require_string(eobj, "property", false, &a.property);
                                ok = require_string(eobj, "value", false, &a.value) && ok;
                                ok = require_string(eobj, "text", false, &a.text) && ok;
                                if (ok) mod.elements.push_back(std::move(a));
                            } else if (type == "freeform") {
                                warn_unknown(eobj, {"type", "text"});
                                Freeform f;
                                if (require_string(eobj, "text", false, &f.text))
                                    mod.elements.push_back(std::move(f));
                            } else if (type == "procedure") {
                                warn_unknown(eobj, {"type", "procedureName", "input",
                                                    "actions", "result"});
                                Procedure p;
                                if (!require_string(eobj, "procedureName", false, &p.name))
                                    return;
                                if (eobj.contains("input") && !eobj["input"].is_null()) {
                                    with("input", [&] {
                                        const auto& in = eobj["input"];
                                        if (!in.is_object()) {
                                            report(Severity::Error, "P1-JSON-SCHEMA",
                                                   "\"input\" must be an object or null");
                                            return;
                                        }
                                        warn_unknown(in, {"property", "value"});
                                        ProcedureInput pin;
                                        if (require_string(in, "property", false, &pin.property) &&
                                            require_string(in, "value", false, &pin.value))
                                            p.input = std::move(pin);
                                    });
                                }
                                if (!eobj.contains("actions") || !eobj["actions"].is_array()) {
                                    report(Severity::Error, "P1-JSON-SCHEMA",
                                           "field \"actions\" must be an array");
                                    return;
                                }
                                bool actions_ok = true;
                                with("actions", [&] {
                                    size_t ai = 0;
                                    for (const auto& act : eobj["actions"]) {
                                        with(std::to_string(ai++), [&] {
                                            if (!act.is_string() ||
                                                trim(act.get<std::string>()).empty() ||
                                                act.get<std::string>().find('\n') !=
                                                    std::string::npos) {
                                                report(Severity::Error, "P1-JSON-SCHEMA",
                                                       "action must be a non-empty "
                                                       "single-line string");
                                                actions_ok = false;
                                                return;
                                            }
                                            p.actions.push_back(act.get<std::string>());
                                        });
                                    }
                                });
                                if (p.actions.empty() && actions_ok) {
                                    report(Severity::Error, "P1-EMPTY-PROC",
                                           "procedure '" + p.name + "' has no actions");
                                    return;
                                }
                                if (!actions_ok) return;
                                if (eobj.contains("result") && !eobj["result"].is_null()) {
                                    std::string r;
                                    if (require_string(eobj, "result", false, &r))
                                        p.result = std::move(r);
                                }
                                mod.elements.push_back(std::move(p));
                            } else {
                                with("type", [&] {
                                    report(Severity::Error, "P1-JSON-SCHEMA",
                                           "unknown element type \"" + type + "\"");
                                });
                            }
                        });
                    }
                });
                if (mobj["elements"].empty())
                    report(Severity::Error, "P1-EMPTY-MODULE",
                           "module '" + mod.name + "' has no elements");
                if (mod.elements.empty()) return;
                if (doc.find_module(mod.name)) {
                    report(Severity::Error, "P1-DUP-MODULE",
                           "duplicate module '" + mod.name + "'");
                    return;
                }
                doc.modules.push_back(std::move(mod));
                map.module_spans.push_back(mspan);
                map.element_spans.push_back(std::move(espans));
            });
        }
    });

    if (trim(doc.name).empty() && !has_errors(diags))
        report(Severity::Error, "P1-JSON-SCHEMA", "document name is empty");

    if (!has_errors(diags)) {
        result.document = std::move(doc);
        result.source_map = std::move(map);
    }
    return result;
}

inline ParseResult parse(std::string_view source, std::string file = "",
                         std::optional<std::string> format_hint = std::nullopt) {
    return detect_format(source, format_hint) == "json" ? parse_json(source, file)
                                                        : parse_markdown(source, file);
}

inline void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.file != b.file) return a.file < b.file;
        if (a.span.line != b.span.line) return a.span.line < b.span.line;
        if (a.span.column != b.span.column) return a.span.column < b.span.column;
        return a.code < b.code;
    });
}

}  // namespace promptlang
