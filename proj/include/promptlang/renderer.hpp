#pragma once

// Canonical serializers: Markdown, JSON, and the flat prompt text handed
// to an LLM client. Output is byte-deterministic and always ends with a
// single trailing newline; line endings are `\n` throughout.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "promptlang/core.hpp"
#include "promptlang/parser.hpp"
#include "promptlang/registry.hpp"

namespace promptlang {

enum class ModuleOrder { SourceOrder, CanonicalOrder };

struct RenderOptions {
    ModuleOrder order = ModuleOrder::SourceOrder;
};

struct UnboundPlaceholderError : Error {
    std::vector<std::string> names;  // sorted, unique
    std::vector<Span> spans;         // first occurrence per name

    explicit UnboundPlaceholderError(std::vector<std::string> unbound_names,
                                     std::vector<Span> first_spans = {})
        : Error(format_message(unbound_names)),
          names(std::move(unbound_names)),
          spans(std::move(first_spans)) {}

  private:
    static std::string format_message(const std::vector<std::string>& names) {
        std::string msg = "unbound placeholder";
        if (names.size() != 1) msg += 's';
        msg += ':';
        for (const auto& n : names) msg += ' ' + n;
        return msg;
    }
};

namespace detail {

inline std::vector<const ModuleInstance*> ordered_modules(const PromptDocument& doc,
                                                          ModuleOrder order) {
    std::vector<const ModuleInstance*> mods;
    mods.reserve(doc.modules.size());
    for (const auto& m : doc.modules) mods.push_back(&m);
    if (order == ModuleOrder::CanonicalOrder) {
        std::stable_sort(mods.begin(), mods.end(),
                         [](const ModuleInstance* a, const ModuleInstance* b) {
                             return canonical_module_rank(a->name) <
                                    canonical_module_rank(b->name);
                         });
    }
    return mods;
}

}  // namespace detail

inline std::string render_markdown(const PromptDocument& doc,
                                   const RenderOptions& opts = {}) {
    std::string out = "# " + doc.name + "\n";
    if (doc.scenario) out += "Scenario: " + *doc.scenario + "\n";
    if (doc.extends) out += "Extends: " + *doc.extends + "\n";
    for (const ModuleInstance* mod : detail::ordered_modules(doc, opts.order)) {
        out += "\n## " + mod->name + "\n";
        for (const Element& elem : mod->elements) {
            if (const auto* proc = std::get_if<Procedure>(&elem)) {
                out += "### " + proc->name + "\n";
                if (proc->input)
                    out += "- " + detail::render_lead_clause(*proc->input) + "\n";
                for (const auto& action : proc->actions)
                    out += "  - " + action + "\n";
                if (proc->result) out += "- Return " + *proc->result + "\n";
            } else {
                out += "- " + *element_text(elem) + "\n";
            }
        }
    }
    return out;
}

inline std::string render_json(const PromptDocument& doc,
                               const RenderOptions& opts = {}) {
    using json = nlohmann::ordered_json;
    json root;
    root["name"] = doc.name;
    root["scenario"] = doc.scenario ? json(*doc.scenario) : json(nullptr);
    root["extends"] = doc.extends ? json(*doc.extends) : json(nullptr);
    root["modules"] = json::array();
    for (const ModuleInstance* mod : detail::ordered_modules(doc, opts.order)) {
        json m;
        m["kind"] = mod->kind == ModuleKind::Inherent ? "inherent" : "extension";
        m["name"] = mod->name;
        m["elements"] = json::array();
        for (const Element& elem : mod->elements) {
            json e;
            if (const auto* a = std::get_if<Assignment>(&elem)) {
                e["type"] = "assignment";
                e["property"] = a->property;
                e["value"] = a->value;
                e["text"] = a->text;
            } else if (const auto* f = std::get_if<Freeform>(&elem)) {
                e["type"] = "freeform";
                e["text"] = f->text;
            } else {
                const auto& p = std::get<Procedure>(elem);
                e["type"] = "procedure";
                e["procedureName"] = p.name;
                if (p.input) {
                    e["input"] = {{"property", p.input->property},
                                  {"value", p.input->value}};
                } else {
                    e["input"] = nullptr;
                }
                e["actions"] = p.actions;
                e["result"] = p.result ? json(*p.result) : json(nullptr);
            }
            m["elements"].push_back(std::move(e));
        }
        root["modules"].push_back(std::move(m));
    }
    return root.dump(2) + "\n";
}

// Canonical Markdown with every placeholder replaced by its binding and
// `\<` escapes collapsed. Requires a binding for every placeholder.
inline std::string render_flat(const PromptDocument& doc,
                               const std::map<std::string, std::string>& bindings,
                               const RenderOptions& opts = {}) {
    std::string markdown = render_markdown(doc, opts);

    std::vector<std::string> unbound;
    std::vector<Span> spans;
    int line_no = 1;
    size_t start = 0;
    std::string out;
    out.reserve(markdown.size());
    for (size_t i = 0; i <= markdown.size(); ++i) {
        if (i == markdown.size() || markdown[i] == '\n') {
            std::string_view line(markdown.data() + start, i - start);
            std::vector<std::string> missing;
            out += substitute_placeholders(line, bindings, &missing, /*unescape=*/true);
            if (i < markdown.size()) out += '\n';
            for (auto& name : missing) {
                if (std::find(unbound.begin(), unbound.end(), name) == unbound.end()) {
                    for (const auto& hit : scan_placeholders(line)) {
                        if (hit.name == name) {
                            spans.push_back(Span{line_no, hit.span.column, hit.span.length});
                            break;
                        }
                    }
                    unbound.push_back(std::move(name));
                }
            }
            start = i + 1;
            ++line_no;
        }
    }
    if (!unbound.empty()) {
        std::vector<size_t> idx(unbound.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](size_t a, size_t b) { return unbound[a] < unbound[b]; });
        std::vector<std::string> names;
        std::vector<Span> sorted_spans;
        for (size_t i : idx) {
            names.push_back(unbound[i]);
            sorted_spans.push_back(spans[i]);
        }
        throw UnboundPlaceholderError(std::move(names), std::move(sorted_spans));
    }
    return out;
}

}  // namespace promptlang
