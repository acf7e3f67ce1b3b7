#pragma once

// Placeholder inventory, binding/instantiation, and composition of
// documents along their `extends` chain. Composition replaces same-named
// modules wholesale and appends child-only modules; it never merges at
// the element level.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "promptlang/core.hpp"
#include "promptlang/parser.hpp"

namespace promptlang {

inline constexpr int kMaxExtendsDepth = 8;

using TemplateBindings = std::map<std::string, std::string>;

struct PlaceholderOccurrence {
    std::string module;
    size_t element_index = 0;
    Span span;  // column within the element text

    friend bool operator==(const PlaceholderOccurrence&,
                           const PlaceholderOccurrence&) = default;
};

struct Placeholder {
    std::string name;
    std::vector<PlaceholderOccurrence> occurrences;  // non-empty

    friend bool operator==(const Placeholder&, const Placeholder&) = default;
};

namespace detail {

template <typename Fn>
inline void for_each_text(const Element& elem, Fn&& fn) {
    if (const auto* p = std::get_if<Procedure>(&elem)) {
        if (p->input) {
            fn(p->input->property);
            fn(p->input->value);
        }
        for (const auto& a : p->actions) fn(a);
        if (p->result) fn(*p->result);
    } else {
        fn(*element_text(elem));
    }
}

}  // namespace detail

// All placeholders of a document, sorted by name, with occurrence
// locations aggregated per name.
inline std::vector<Placeholder> list_placeholders(const PromptDocument& doc) {
    std::map<std::string, Placeholder> by_name;
    for (const auto& mod : doc.modules) {
        for (size_t ei = 0; ei < mod.elements.size(); ++ei) {
            detail::for_each_text(mod.elements[ei], [&](const std::string& text) {
                for (const auto& hit : scan_placeholders(text)) {
                    auto& ph = by_name[hit.name];
                    ph.name = hit.name;
                    ph.occurrences.push_back({mod.name, ei, hit.span});
                }
            });
        }
    }
    std::vector<Placeholder> out;
    out.reserve(by_name.size());
    for (auto& [name, ph] : by_name) out.push_back(std::move(ph));
    return out;
}

struct InstantiateResult {
    PromptDocument document;
    std::vector<Diagnostic> warnings;  // P3-UNUSED-BINDING entries
};

// Substitutes bound placeholders; unbound ones stay. Partial
// instantiation is allowed so templates can be specialized in stages.
inline InstantiateResult instantiate(const PromptDocument& doc,
                                     const TemplateBindings& bindings) {
    for (const auto& [key, value] : bindings) {
        if (!is_placeholder_name(key))
            throw ConfigError("invalid binding key: " + key);
        if (!scan_placeholders(value).empty())
            throw ConfigError("binding for " + key +
                              " contains a placeholder token (recursive bindings "
                              "are not allowed)");
        if (value.find('\n') != std::string::npos)
            throw ConfigError("binding for " + key + " contains a line break");
    }

    auto subst = [&](const std::string& text) {
        return substitute_placeholders(text, bindings);
    };

    InstantiateResult result;
    result.document = doc;
    for (auto& mod : result.document.modules) {
        for (auto& elem : mod.elements) {
            if (auto* p = std::get_if<Procedure>(&elem)) {
                if (p->input) {
                    p->input->property = subst(p->input->property);
                    p->input->value = subst(p->input->value);
                }
                for (auto& a : p->actions) a = subst(a);
                if (p->result) p->result = subst(*p->result);
            } else {
                // re-classify so a substituted line keeps its metadata honest
                elem = classify_element_line(subst(*element_text(elem)));
            }
        }
    }

    std::vector<std::string> used;
    for (const auto& ph : list_placeholders(doc)) used.push_back(ph.name);
    for (const auto& [key, value] : bindings) {
        if (std::find(used.begin(), used.end(), key) == used.end())
            result.warnings.push_back({Severity::Warning, "P3-UNUSED-BINDING",
                                       "binding '" + key +
                                           "' matches no placeholder in the document",
                                       Span{1, 1, 0},
                                       ""});
    }
    return result;
}

// Looks up the document a reference names; nullopt means unresolvable.
using TemplateResolver =
    std::function<std::optional<PromptDocument>(const std::string& reference)>;

namespace detail {

inline std::string format_chain(const std::vector<std::string>& chain) {
    std::string out;
    for (size_t i = 0; i < chain.size(); ++i) {
        if (i) out += " -> ";
        out += chain[i];
    }
    return out;
}

}  // namespace detail

// Resolves the full `extends` chain root-first. At each step a child
// module with the same canonical name replaces the base module in place;
// child-only modules are appended. The result has no `extends`.
inline PromptDocument compose(const PromptDocument& child, const TemplateResolver& resolve,
                              const std::string& self_reference = "") {
    if (!child.extends)
        throw MissingBaseError("document '" + child.name + "' does not extend anything");

    std::vector<std::string> chain;  // reference names, child side first
    if (!self_reference.empty()) chain.push_back(self_reference);
    std::vector<PromptDocument> docs{child};  // child side first

    const PromptDocument* current = &child;
    while (current->extends) {
        const std::string& ref = *current->extends;
        for (const auto& seen : chain) {
            if (iequals(seen, ref)) {
                chain.push_back(ref);
                throw CycleError("cycle: " + detail::format_chain(chain));
            }
        }
        chain.push_back(ref);
        if (static_cast<int>(docs.size()) > kMaxExtendsDepth)
            throw DepthExceededError("extends chain exceeds depth " +
                                     std::to_string(kMaxExtendsDepth) + ": " +
                                     detail::format_chain(chain));
        auto base = resolve(ref);
        if (!base)
            throw MissingBaseError("cannot resolve base '" + ref + "' (chain: " +
                                   detail::format_chain(chain) + ")");
        docs.push_back(std::move(*base));
        current = &docs.back();
    }

    PromptDocument merged = docs.back();  // root
    merged.extends.reset();
    for (size_t i = docs.size() - 1; i-- > 0;) {
        const PromptDocument& overlay = docs[i];
        merged.name = overlay.name;
        if (overlay.scenario) merged.scenario = overlay.scenario;
        for (const auto& mod : overlay.modules) {
            bool replaced = false;
            for (auto& existing : merged.modules) {
                if (iequals(existing.name, mod.name)) {
                    existing = mod;
                    replaced = true;
                    break;
                }
            }
            if (!replaced) merged.modules.push_back(mod);
        }
    }
    return merged;
}

}  // namespace promptlang
