#pragma once

// Scaffolding for `new`: a document containing every module the matrix
// defines for a scenario, each seeded with a <FILL_ME> placeholder so an
// untouched scaffold deliberately fails flat rendering.

#include <string>

#include "promptlang/core.hpp"
#include "promptlang/registry.hpp"

namespace promptlang {

inline PromptDocument scaffold_document(std::string name, std::string_view scenario,
                                        const ScenarioMatrix& matrix) {
    std::string canon = resolve_scenario(scenario);
    if (!matrix.has_scenario(canon))
        throw UnknownScenarioError("unknown scenario: " + std::string(scenario));

    PromptDocument doc;
    doc.name = std::move(name);
    doc.scenario = canon;
    for (const auto& module_name : matrix.defined_modules(canon)) {
        ModuleInstance mod;
        mod.kind = resolve_inherent(module_name) ? ModuleKind::Inherent
                                                 : ModuleKind::Extension;
        mod.name = module_name;
        if (iequals(module_name, "Workflow")) {
            Procedure proc;
            proc.name = "Describe the task";
            proc.input = ProcedureInput{"input", "<FILL_ME>"};
            proc.actions = {"<FILL_ME>"};
            proc.result = "the <FILL_ME>.";
            mod.elements.push_back(std::move(proc));
        } else {
            mod.elements.push_back(Freeform{"<FILL_ME>"});
        }
        doc.modules.push_back(std::move(mod));
    }
    return doc;
}

}  // namespace promptlang
