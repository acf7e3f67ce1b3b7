#pragma once

// The eleven inherent modules, the eight built-in scenarios, and the
// scenario/module definition matrix, plus registration of extension
// modules and custom scenarios.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "promptlang/core.hpp"

namespace promptlang {

// ---------------------------------------------------------------------------
// Inherent modules

enum class InherentModule {
    Profile,
    Constraint,
    Goal,
    Initialization,
    Example,
    Workflow,
    Skill,
    Suggestion,
    Background,
    Style,
    OutputFormat,
};

inline constexpr std::array<InherentModule, 11> kInherentOrder = {
    InherentModule::Profile,    InherentModule::Constraint,
    InherentModule::Goal,       InherentModule::Initialization,
    InherentModule::Example,    InherentModule::Workflow,
    InherentModule::Skill,      InherentModule::Suggestion,
    InherentModule::Background, InherentModule::Style,
    InherentModule::OutputFormat,
};

inline std::string_view inherent_name(InherentModule m) {
    switch (m) {
        case InherentModule::Profile: return "Profile";
        case InherentModule::Constraint: return "Constraint";
        case InherentModule::Goal: return "Goal";
        case InherentModule::Initialization: return "Initialization";
        case InherentModule::Example: return "Example";
        case InherentModule::Workflow: return "Workflow";
        case InherentModule::Skill: return "Skill";
        case InherentModule::Suggestion: return "Suggestion";
        case InherentModule::Background: return "Background";
        case InherentModule::Style: return "Style";
        case InherentModule::OutputFormat: return "OutputFormat";
    }
    return "";
}

// Accepted aliases are morphological variants of the canonical names and
// the abbreviated column headings; no semantic synonyms.
inline const std::multimap<std::string, InherentModule>& inherent_aliases() {
    static const std::multimap<std::string, InherentModule> aliases = {
        {"prof", InherentModule::Profile},
        {"prof.", InherentModule::Profile},
        {"profiles", InherentModule::Profile},
        {"cons", InherentModule::Constraint},
        {"cons.", InherentModule::Constraint},
        {"constraints", InherentModule::Constraint},
        {"goals", InherentModule::Goal},
        {"init", InherentModule::Initialization},
        {"init.", InherentModule::Initialization},
        {"initialisation", InherentModule::Initialization},
        {"ex", InherentModule::Example},
        {"ex.", InherentModule::Example},
        {"examples", InherentModule::Example},
        {"wkflo", InherentModule::Workflow},
        {"wkflo.", InherentModule::Workflow},
        {"workflows", InherentModule::Workflow},
        {"skills", InherentModule::Skill},
        {"sug", InherentModule::Suggestion},
        {"sug.", InherentModule::Suggestion},
        {"suggestions", InherentModule::Suggestion},
        {"bkgrd", InherentModule::Background},
        {"bkgrd.", InherentModule::Background},
        {"styles", InherentModule::Style},
        {"outf", InherentModule::OutputFormat},
        {"outf.", InherentModule::OutputFormat},
        {"output format", InherentModule::OutputFormat},
        {"output-format", InherentModule::OutputFormat},
        {"outputformat", InherentModule::OutputFormat},
    };
    return aliases;
}

// Resolves a canonical name or alias, case-insensitively.
inline std::optional<InherentModule> resolve_inherent(std::string_view name) {
    std::string key = lowercase(trim(name));
    for (InherentModule m : kInherentOrder)
        if (lowercase(inherent_name(m)) == key) return m;
    auto it = inherent_aliases().find(key);
    if (it != inherent_aliases().end()) return it->second;
    return std::nullopt;
}

// True when `name` is an accepted alias (not a canonical inherent name).
inline bool shadows_inherent_alias(std::string_view name) {
    std::string key = lowercase(trim(name));
    for (InherentModule m : kInherentOrder)
        if (lowercase(inherent_name(m)) == key) return false;
    return inherent_aliases().count(key) > 0;
}

// Position in the canonical module order; extensions sort after inherents.
inline int canonical_module_rank(std::string_view name) {
    if (auto m = resolve_inherent(name)) {
        for (size_t i = 0; i < kInherentOrder.size(); ++i)
            if (kInherentOrder[i] == *m) return static_cast<int>(i);
    }
    return static_cast<int>(kInherentOrder.size());
}

// ---------------------------------------------------------------------------
// Scenarios

inline const std::vector<std::string>& builtin_scenarios() {
    static const std::vector<std::string> names = {
        "Writing",           "RolePlaying",   "Entertainment",
        "SupplementaryLearning", "PromptOptimisation", "PromptHacking",
        "Drawing",           "BusinessOperation",
    };
    return names;
}

// Canonicalizes a scenario spelling: built-in names accept spaced and
// hyphenated variants; anything else is returned trimmed as a custom name.
inline std::string resolve_scenario(std::string_view name) {
    std::string squeezed;
    for (char c : trim(name))
        if (c != ' ' && c != '-' && c != '_') squeezed += ascii_lower(c);
    if (squeezed == "promptoptimization") squeezed = "promptoptimisation";
    for (const auto& s : builtin_scenarios()) {
        std::string canon;
        for (char c : s) canon += ascii_lower(c);
        if (canon == squeezed) return s;
    }
    return std::string(trim(name));
}

inline bool is_builtin_scenario(std::string_view name) {
    std::string canon = resolve_scenario(name);
    for (const auto& s : builtin_scenarios())
        if (s == canon) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Extension declarations

struct ExtensionModuleDecl {
    std::string name;
    std::string description;
    std::vector<std::string> scenarios;  // canonical names
    bool all_scenarios = false;

    friend bool operator==(const ExtensionModuleDecl&,
                           const ExtensionModuleDecl&) = default;
};

// ---------------------------------------------------------------------------
// Scenario matrix

// The definition matrix: which modules are designed for which scenario.
// The built-in portion is fixed; registration is a functional update that
// returns a new matrix.
class ScenarioMatrix {
  public:
    using ModuleSet = std::set<std::string, CaseInsensitiveLess>;

    static ScenarioMatrix builtin() { return ScenarioMatrix(); }

    bool has_scenario(std::string_view scenario) const {
        return cells_.count(resolve_scenario(scenario)) > 0;
    }

    bool is_defined(std::string_view scenario, std::string_view module_name) const {
        std::string canon = resolve_scenario(scenario);
        auto it = cells_.find(canon);
        if (it == cells_.end())
            throw UnknownScenarioError("unknown scenario: " + std::string(scenario));
        std::string mod(trim(module_name));
        if (auto m = resolve_inherent(mod)) mod = std::string(inherent_name(*m));
        if (it->second.count(mod) > 0) return true;
        for (const auto& decl : extensions_)
            if (decl.all_scenarios && iequals(decl.name, mod)) return true;
        return false;
    }

    ScenarioMatrix register_extension(const ExtensionModuleDecl& decl) const {
        std::string name(trim(decl.name));
        if (resolve_inherent(name))
            throw CollisionError("extension name collides with inherent module: " + name);
        for (const auto& existing : extensions_) {
            if (!iequals(existing.name, name)) continue;
            if (existing.scenarios == decl.scenarios &&
                existing.all_scenarios == decl.all_scenarios)
                return *this;  // identical re-registration is a no-op
            throw DuplicateRegistrationError(
                "extension '" + name + "' already registered with different scenarios");
        }
        ScenarioMatrix next(*this);
        ExtensionModuleDecl stored = decl;
        stored.name = name;
        if (!stored.all_scenarios) {
            for (auto& s : stored.scenarios) {
                s = resolve_scenario(s);
                auto it = next.cells_.find(s);
                if (it == next.cells_.end())
                    throw UnknownScenarioError("unknown scenario: " + s);
                it->second.insert(name);
            }
        }
        next.extensions_.push_back(std::move(stored));
        return next;
    }

    ScenarioMatrix register_scenario(std::string_view scenario,
                                     const std::vector<std::string>& defined) const {
        std::string name(trim(scenario));
        if (is_builtin_scenario(name))
            throw CollisionError("scenario name collides with a built-in: " + name);
        ScenarioMatrix next(*this);
        ModuleSet& cell = next.cells_[name];
        for (const auto& mod : defined) {
            std::string m(trim(mod));
            if (auto im = resolve_inherent(m)) m = std::string(inherent_name(*im));
            cell.insert(m);
        }
        return next;
    }

    const ExtensionModuleDecl* find_extension(std::string_view name) const {
        for (const auto& decl : extensions_)
            if (iequals(decl.name, name)) return &decl;
        return nullptr;
    }

    std::vector<std::string> scenarios() const {
        std::vector<std::string> out;
        for (const auto& s : builtin_scenarios()) out.push_back(s);
        for (const auto& [name, cell] : cells_)
            if (!is_builtin_scenario(name)) out.push_back(name);
        return out;
    }

    // Defined modules for a scenario, inherents first in canonical order.
    std::vector<std::string> defined_modules(std::string_view scenario) const {
        std::string canon = resolve_scenario(scenario);
        auto it = cells_.find(canon);
        if (it == cells_.end())
            throw UnknownScenarioError("unknown scenario: " + std::string(scenario));
        std::vector<std::string> out;
        for (InherentModule m : kInherentOrder)
            if (it->second.count(std::string(inherent_name(m))))
                out.push_back(std::string(inherent_name(m)));
        for (const auto& mod : it->second)
            if (!resolve_inherent(mod)) out.push_back(mod);
        for (const auto& decl : extensions_)
            if (decl.all_scenarios && !it->second.count(decl.name))
                out.push_back(decl.name);
        return out;
    }

    size_t defined_cell_count() const {
        size_t n = 0;
        for (const auto& s : builtin_scenarios()) {
            const auto& cell = cells_.at(s);
            for (InherentModule m : kInherentOrder)
                n += cell.count(std::string(inherent_name(m)));
        }
        return n;
    }

    friend bool operator==(const ScenarioMatrix& a, const ScenarioMatrix& b) {
        return a.cells_ == b.cells_ && a.extensions_ == b.extensions_;
    }

  private:
    ScenarioMatrix() {
        auto fill = [this](const std::string& scenario,
                           std::initializer_list<InherentModule> missing) {
            ModuleSet cell;
            for (InherentModule m : kInherentOrder) {
                bool skip = false;
                for (InherentModule x : missing) skip = skip || (x == m);
                if (!skip) cell.insert(std::string(inherent_name(m)));
            }
            cells_[scenario] = std::move(cell);
        };
        using M = InherentModule;
        fill("Writing", {M::Suggestion});
        fill("RolePlaying", {M::Workflow, M::OutputFormat});
        fill("Entertainment", {M::Workflow, M::Background, M::OutputFormat});
        fill("SupplementaryLearning", {});
        fill("PromptOptimisation", {M::Skill, M::Background, M::Style});
        fill("PromptHacking", {M::Skill, M::Background, M::Style});
        fill("Drawing", {M::Skill, M::Suggestion, M::OutputFormat});
        fill("BusinessOperation", {M::Style});
    }

    std::map<std::string, ModuleSet> cells_;
    std::vector<ExtensionModuleDecl> extensions_;  // registration order
};

}  // namespace promptlang
