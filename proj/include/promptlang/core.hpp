#pragma once

// Document object model for dual-layer prompts (modules containing
// elements) plus the placeholder and element-line primitives shared by
// the parser, renderer, templating and lint layers.

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace promptlang {

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownScenarioError : Error {
    using Error::Error;
};
struct CollisionError : Error {
    using Error::Error;
};
struct DuplicateRegistrationError : Error {
    using Error::Error;
};
struct CycleError : Error {
    using Error::Error;
};
struct MissingBaseError : Error {
    using Error::Error;
};
struct DepthExceededError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct UnknownRuleError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Source locations and diagnostics

struct Span {
    int line = 1;    // 1-based
    int column = 1;  // 1-based
    int length = 0;

    friend bool operator==(const Span&, const Span&) = default;
};

enum class Severity { Info, Warning, Error };

inline std::string_view severity_name(Severity s) {
    switch (s) {
        case Severity::Info: return "info";
        case Severity::Warning: return "warning";
        case Severity::Error: return "error";
    }
    return "error";
}

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    Span span;
    std::string file;  // empty when not file-backed

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Case-insensitive ASCII helpers

inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string lowercase(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = ascii_lower(c);
    return out;
}

inline bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (ascii_lower(a[i]) != ascii_lower(b[i])) return false;
    return true;
}

struct CaseInsensitiveLess {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const {
        size_t n = a.size() < b.size() ? a.size() : b.size();
        for (size_t i = 0; i < n; ++i) {
            char x = ascii_lower(a[i]), y = ascii_lower(b[i]);
            if (x != y) return x < y;
        }
        return a.size() < b.size();
    }
};

inline std::string_view trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// ---------------------------------------------------------------------------
// Elements

struct Assignment {
    std::string property;
    std::string value;
    std::string text;  // source line, preserved verbatim

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Freeform {
    std::string text;

    friend bool operator==(const Freeform&, const Freeform&) = default;
};

struct ProcedureInput {
    std::string property;
    std::string value;

    friend bool operator==(const ProcedureInput&, const ProcedureInput&) = default;
};

struct Procedure {
    std::string name;
    std::optional<ProcedureInput> input;
    std::vector<std::string> actions;  // length >= 1
    std::optional<std::string> result;

    friend bool operator==(const Procedure&, const Procedure&) = default;
};

using Element = std::variant<Assignment, Freeform, Procedure>;

inline const std::string* element_text(const Element& e) {
    if (const auto* a = std::get_if<Assignment>(&e)) return &a->text;
    if (const auto* f = std::get_if<Freeform>(&e)) return &f->text;
    return nullptr;  // procedures carry several text fields
}

// ---------------------------------------------------------------------------
// Modules and documents

enum class ModuleKind { Inherent, Extension };

struct ModuleInstance {
    ModuleKind kind = ModuleKind::Extension;
    std::string name;  // canonical casing
    std::vector<Element> elements;

    friend bool operator==(const ModuleInstance&, const ModuleInstance&) = default;
};

struct PromptDocument {
    std::string name;
    std::optional<std::string> scenario;  // canonical scenario name
    std::optional<std::string> extends;   // file path or template name
    std::vector<ModuleInstance> modules;

    friend bool operator==(const PromptDocument&, const PromptDocument&) = default;

    const ModuleInstance* find_module(std::string_view module_name) const {
        for (const auto& m : modules)
            if (iequals(m.name, module_name)) return &m;
        return nullptr;
    }
};

// Rejects the constructions the model forbids outright (the parser reports
// the same conditions as diagnostics with spans instead).
inline ModuleInstance make_module(ModuleKind kind, std::string name,
                                  std::vector<Element> elements) {
    if (trim(name).empty()) throw std::invalid_argument("module name is empty");
    if (elements.empty())
        throw std::invalid_argument("module '" + name + "' has no elements");
    return ModuleInstance{kind, std::move(name), std::move(elements)};
}

// ---------------------------------------------------------------------------
// Placeholder scanning

struct PlaceholderHit {
    std::string name;
    Span span;  // line 1, column at the '<', length includes the brackets

    friend bool operator==(const PlaceholderHit&, const PlaceholderHit&) = default;
};

inline bool is_placeholder_name(std::string_view name) {
    if (name.empty()) return false;
    if (name[0] < 'A' || name[0] > 'Z') return false;
    for (char c : name.substr(1)) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

inline bool is_placeholder_token(std::string_view token) {
    return token.size() >= 3 && token.front() == '<' && token.back() == '>' &&
           is_placeholder_name(token.substr(1, token.size() - 2));
}

// Scans a single line for `<NAME>` tokens (NAME in [A-Z][A-Z0-9_]*).
// Occurrences escaped as `\<` are skipped. Total function.
inline std::vector<PlaceholderHit> scan_placeholders(std::string_view text) {
    std::vector<PlaceholderHit> hits;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '<') continue;
        if (i > 0 && text[i - 1] == '\\') continue;
        size_t j = i + 1;
        while (j < text.size() &&
               ((text[j] >= 'A' && text[j] <= 'Z') ||
                (text[j] >= '0' && text[j] <= '9') || text[j] == '_'))
            ++j;
        if (j < text.size() && text[j] == '>' && j > i + 1 &&
            text[i + 1] >= 'A' && text[i + 1] <= 'Z') {
            hits.push_back({std::string(text.substr(i + 1, j - i - 1)),
                            Span{1, static_cast<int>(i) + 1,
                                 static_cast<int>(j - i) + 1}});
            i = j;
        }
    }
    return hits;
}

// ---------------------------------------------------------------------------
// Element line classification

// Recognizes the strict assignment pattern `The <property> is <value>.`
// (leading "The ", split at the first " is ", trailing period optional).
// Everything else is kept as a freeform instruction; the source text is
// preserved verbatim either way.
inline Element classify_element_line(std::string_view text) {
    std::string_view t = trim(text);
    if (t.empty()) throw std::invalid_argument("element line is empty");
    std::string original(t);

    constexpr std::string_view kThe = "The ";
    constexpr std::string_view kIs = " is ";
    if (t.substr(0, kThe.size()) == kThe) {
        size_t pos = t.find(kIs, kThe.size());
        if (pos != std::string_view::npos) {
            std::string_view property = t.substr(kThe.size(), pos - kThe.size());
            std::string_view value = t.substr(pos + kIs.size());
            if (!value.empty() && value.back() == '.') value.remove_suffix(1);
            if (!trim(property).empty() && !trim(value).empty()) {
                return Assignment{std::string(trim(property)),
                                  std::string(trim(value)), original};
            }
        }
    }
    return Freeform{original};
}

// ---------------------------------------------------------------------------
// Substitution

// Replaces every unescaped `<NAME>` that has a binding; unbound tokens are
// left in place and reported through `unbound` when given. When
// `unescape` is set, `\<` collapses to `<` (flat rendering).
template <typename Map>
inline std::string substitute_placeholders(std::string_view text, const Map& bindings,
                                           std::vector<std::string>* unbound = nullptr,
                                           bool unescape = false) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] == '<') {
            if (unescape) {
                out += '<';
            } else {
                out += "\\<";
            }
            ++i;
            continue;
        }
        if (text[i] == '<') {
            size_t j = i + 1;
            while (j < text.size() &&
                   ((text[j] >= 'A' && text[j] <= 'Z') ||
                    (text[j] >= '0' && text[j] <= '9') || text[j] == '_'))
                ++j;
            if (j < text.size() && text[j] == '>' && j > i + 1 &&
                text[i + 1] >= 'A' && text[i + 1] <= 'Z') {
                std::string name(text.substr(i + 1, j - i - 1));
                auto it = bindings.find(name);
                if (it != bindings.end()) {
                    out += it->second;
                } else {
                    if (unbound) unbound->push_back(name);
                    out += text.substr(i, j - i + 1);
                }
                i = j;
                continue;
            }
        }
        out += text[i];
    }
    return out;
}

}  // namespace promptlang
