// promptlang — command-line front end: check, fmt, render, new,
// placeholders, compose, explain.
//
// Exit codes: 0 success, 1 error diagnostics or unmet preconditions,
// 2 usage/config errors. Artifacts go to stdout, diagnostics to stderr.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "promptlang/promptlang.hpp"

namespace fs = std::filesystem;
using namespace promptlang;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitUsage = 2;

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Write-to-temp-then-rename so an interrupted write never truncates the
// original file.
bool write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return false;
        out << content;
        if (!out.good()) return false;
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    return !ec;
}

bool is_prompt_file(const fs::path& path) {
    std::string name = path.filename().string();
    auto ends_with = [&](std::string_view suffix) {
        return name.size() >= suffix.size() &&
               name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    return ends_with(".lgpt.md") || ends_with(".lgpt.json");
}

std::string format_of(const fs::path& path, const std::string& source,
                      const std::string& flag) {
    if (!flag.empty()) return flag;
    std::string name = path.filename().string();
    if (name.size() >= 10 && name.compare(name.size() - 10, 10, ".lgpt.json") == 0)
        return "json";
    if (name.size() >= 8 && name.compare(name.size() - 8, 8, ".lgpt.md") == 0)
        return "md";
    return detect_format(source);
}

// Nearest promptlang.toml from the working directory upward.
std::optional<LintConfig> discover_config(std::string* error) {
    std::error_code ec;
    fs::path dir = fs::current_path(ec);
    if (ec) return std::nullopt;
    while (true) {
        fs::path candidate = dir / "promptlang.toml";
        if (fs::exists(candidate, ec)) {
            auto source = read_file(candidate);
            if (!source) {
                *error = "cannot read " + candidate.string();
                return std::nullopt;
            }
            try {
                return parse_lint_config(*source);
            } catch (const ConfigError& e) {
                *error = candidate.string() + ": " + e.what();
                return std::nullopt;
            }
        }
        fs::path parent = dir.parent_path();
        if (parent == dir) break;
        dir = parent;
    }
    return LintConfig{};
}

struct ResolverState {
    std::vector<fs::path> template_dirs;
    fs::path current_dir;
    std::string error;
};

std::vector<fs::path> template_search_dirs(const std::string& flag_dir) {
    std::vector<fs::path> dirs;
    if (!flag_dir.empty()) dirs.emplace_back(flag_dir);
    if (const char* env = std::getenv("PROMPTLANG_TEMPLATE_DIR"); env && *env)
        dirs.emplace_back(env);
    return dirs;
}

// `Extends:` references are relative paths (resolved against the
// referring file) or bare template names resolved via the search path.
TemplateResolver make_resolver(std::shared_ptr<ResolverState> state) {
    return [state](const std::string& ref) -> std::optional<PromptDocument> {
        std::vector<fs::path> candidates;
        bool is_path = ref.find('/') != std::string::npos || is_prompt_file(ref);
        if (is_path) {
            candidates.push_back(state->current_dir / ref);
        } else {
            for (const auto& dir : state->template_dirs) {
                candidates.push_back(dir / (ref + ".lgpt.md"));
                candidates.push_back(dir / (ref + ".lgpt.json"));
            }
            candidates.push_back(state->current_dir / (ref + ".lgpt.md"));
            candidates.push_back(state->current_dir / (ref + ".lgpt.json"));
        }
        for (const auto& candidate : candidates) {
            std::error_code ec;
            if (!fs::exists(candidate, ec)) continue;
            auto source = read_file(candidate);
            if (!source) continue;
            ParseResult result = parse(*source, candidate.string());
            if (!result.ok()) {
                for (const auto& d : result.diagnostics)
                    state->error += diagnostic_to_text(d) + "\n";
                return std::nullopt;
            }
            state->current_dir = candidate.parent_path();
            return result.document;
        }
        return std::nullopt;
    };
}

ScenarioMatrix load_matrix_or_exit(const std::string& registry_path, int* exit_code) {
    if (registry_path.empty()) return ScenarioMatrix::builtin();
    auto source = read_file(registry_path);
    if (!source) {
        std::cerr << "error: cannot read registry file " << registry_path << "\n";
        *exit_code = kExitUsage;
        return ScenarioMatrix::builtin();
    }
    try {
        return load_registry(*source);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        *exit_code = kExitUsage;
        return ScenarioMatrix::builtin();
    }
}

std::map<std::string, std::string> parse_bindings(const std::vector<std::string>& binds,
                                                  int* exit_code) {
    std::map<std::string, std::string> bindings;
    for (const auto& bind : binds) {
        size_t eq = bind.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::cerr << "error: --bind expects KEY=VALUE, got '" << bind << "'\n";
            *exit_code = kExitUsage;
            break;
        }
        bindings[bind.substr(0, eq)] = bind.substr(eq + 1);
    }
    return bindings;
}

// ---------------------------------------------------------------------------

struct CheckOptions {
    std::vector<std::string> paths;
    std::string format;
    std::string scenario;
    std::string registry;
    bool strict = false;
    bool json_diagnostics = false;
};

int cmd_check(const CheckOptions& opts) {
    std::string config_error;
    auto config = discover_config(&config_error);
    if (!config) {
        std::cerr << "error: " << config_error << "\n";
        return kExitUsage;
    }
    int exit_code = kExitOk;
    ScenarioMatrix matrix = load_matrix_or_exit(opts.registry, &exit_code);
    if (exit_code != kExitOk) return exit_code;

    std::vector<fs::path> files;
    for (const auto& p : opts.paths) {
        fs::path path(p);
        std::error_code ec;
        if (fs::is_directory(path, ec)) {
            for (const auto& entry : fs::recursive_directory_iterator(path, ec))
                if (entry.is_regular_file() && is_prompt_file(entry.path()))
                    files.push_back(entry.path());
        } else {
            files.push_back(path);
        }
    }
    std::sort(files.begin(), files.end());

    bool any_error = false, any_warning = false;
    for (const auto& file : files) {
        auto source = read_file(file);
        if (!source) {
            std::cerr << "error: cannot read file " << file.string() << "\n";
            any_error = true;
            continue;
        }
        ParseResult result =
            parse(*source, file.string(), format_of(file, *source, opts.format));
        std::vector<Diagnostic> diags = result.diagnostics;
        if (result.ok()) {
            PromptDocument doc = *result.document;
            if (!opts.scenario.empty()) doc.scenario = resolve_scenario(opts.scenario);
            try {
                auto lint_diags = lint(doc, matrix, *config, &result.source_map,
                                       file.string());
                diags.insert(diags.end(), lint_diags.begin(), lint_diags.end());
            } catch (const ConfigError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitUsage;
            }
        }
        sort_diagnostics(diags);
        for (const auto& d : diags) {
            if (opts.json_diagnostics)
                std::cout << diagnostic_to_json_line(d) << "\n";
            else
                std::cerr << diagnostic_to_text(d) << "\n";
            any_error = any_error || d.severity == Severity::Error;
            any_warning = any_warning || d.severity == Severity::Warning;
        }
    }
    if (any_error || (opts.strict && any_warning)) return kExitDiagnostics;
    return kExitOk;
}

int cmd_fmt(const std::string& path, bool write, const std::string& order) {
    auto source = read_file(path);
    if (!source) {
        std::cerr << "error: cannot read file " << path << "\n";
        return kExitDiagnostics;
    }
    std::string format = format_of(path, *source, "");
    ParseResult result = parse(*source, path, format);
    if (!result.ok()) {
        for (const auto& d : result.diagnostics)
            std::cerr << diagnostic_to_text(d) << "\n";
        return kExitDiagnostics;
    }
    RenderOptions render_opts;
    render_opts.order =
        order == "canonical" ? ModuleOrder::CanonicalOrder : ModuleOrder::SourceOrder;
    std::string canonical = format == "json" ? render_json(*result.document, render_opts)
                                             : render_markdown(*result.document, render_opts);
    if (write) {
        if (canonical != *source && !write_file_atomic(path, canonical)) {
            std::cerr << "error: cannot write " << path << "\n";
            return kExitDiagnostics;
        }
    } else {
        std::cout << canonical;
    }
    return kExitOk;
}

struct RenderCliOptions {
    std::string path;
    std::string to = "md";
    std::vector<std::string> binds;
    std::string template_dir;
    std::string out;
};

int cmd_render(const RenderCliOptions& opts) {
    auto source = read_file(opts.path);
    if (!source) {
        std::cerr << "error: cannot read file " << opts.path << "\n";
        return kExitDiagnostics;
    }
    ParseResult result = parse(*source, opts.path, format_of(opts.path, *source, ""));
    if (!result.ok()) {
        for (const auto& d : result.diagnostics)
            std::cerr << diagnostic_to_text(d) << "\n";
        return kExitDiagnostics;
    }
    PromptDocument doc = *result.document;

    std::string output;
    if (opts.to == "md") {
        output = render_markdown(doc);
    } else if (opts.to == "json") {
        output = render_json(doc);
    } else {  // flat
        if (doc.extends) {
            auto state = std::make_shared<ResolverState>();
            state->template_dirs = template_search_dirs(opts.template_dir);
            state->current_dir = fs::path(opts.path).parent_path();
            try {
                doc = compose(doc, make_resolver(state), opts.path);
            } catch (const Error& e) {
                std::cerr << state->error << "error: " << e.what() << "\n";
                return kExitDiagnostics;
            }
        }
        int exit_code = kExitOk;
        auto bindings = parse_bindings(opts.binds, &exit_code);
        if (exit_code != kExitOk) return exit_code;
        try {
            output = render_flat(doc, bindings);
        } catch (const UnboundPlaceholderError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitDiagnostics;
        } catch (const ConfigError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }

    if (!opts.out.empty()) {
        if (!write_file_atomic(opts.out, output)) {
            std::cerr << "error: cannot write " << opts.out << "\n";
            return kExitDiagnostics;
        }
    } else {
        std::cout << output;
    }
    return kExitOk;
}

int cmd_new(const std::string& scenario, const std::string& name,
            const std::string& format, const std::string& registry) {
    int exit_code = kExitOk;
    ScenarioMatrix matrix = load_matrix_or_exit(registry, &exit_code);
    if (exit_code != kExitOk) return exit_code;
    PromptDocument doc;
    try {
        doc = scaffold_document(name, scenario, matrix);
    } catch (const UnknownScenarioError&) {
        std::cerr << "error: unknown scenario '" << scenario << "'; valid names:";
        for (const auto& s : matrix.scenarios()) std::cerr << " " << s;
        std::cerr << "\n";
        return kExitUsage;
    }
    std::cout << (format == "json" ? render_json(doc) : render_markdown(doc));
    return kExitOk;
}

int cmd_placeholders(const std::string& path) {
    auto source = read_file(path);
    if (!source) {
        std::cerr << "error: cannot read file " << path << "\n";
        return kExitDiagnostics;
    }
    ParseResult result = parse(*source, path, format_of(path, *source, ""));
    if (!result.ok()) {
        for (const auto& d : result.diagnostics)
            std::cerr << diagnostic_to_text(d) << "\n";
        return kExitDiagnostics;
    }
    for (const auto& ph : list_placeholders(*result.document)) {
        std::cout << ph.name << " " << ph.occurrences.size() << " @ "
                  << ph.occurrences.front().module << "\n";
    }
    return kExitOk;
}

int cmd_compose(const std::string& path, const std::string& template_dir,
                const std::string& to) {
    auto source = read_file(path);
    if (!source) {
        std::cerr << "error: cannot read file " << path << "\n";
        return kExitDiagnostics;
    }
    ParseResult result = parse(*source, path, format_of(path, *source, ""));
    if (!result.ok()) {
        for (const auto& d : result.diagnostics)
            std::cerr << diagnostic_to_text(d) << "\n";
        return kExitDiagnostics;
    }
    if (!result.document->extends) {
        std::cerr << "error: " << path << " does not extend anything; nothing to compose\n";
        return kExitUsage;
    }
    auto state = std::make_shared<ResolverState>();
    state->template_dirs = template_search_dirs(template_dir);
    state->current_dir = fs::path(path).parent_path();
    PromptDocument merged;
    try {
        merged = compose(*result.document, make_resolver(state), path);
    } catch (const Error& e) {
        std::cerr << state->error << "error: " << e.what() << "\n";
        return kExitDiagnostics;
    }
    std::cout << (to == "json" ? render_json(merged) : render_markdown(merged));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"promptlang — parse, lint, compose, and render structured prompts"};
    app.require_subcommand(1);

    CheckOptions check_opts;
    auto* check = app.add_subcommand("check", "Parse and lint prompt files");
    check->add_option("paths", check_opts.paths, "Files or directories")->required();
    check->add_option("--format", check_opts.format, "Force input format")
        ->check(CLI::IsMember({"md", "json"}));
    check->add_flag("--strict", check_opts.strict, "Treat warnings as errors");
    check->add_option("--scenario", check_opts.scenario, "Override the declared scenario");
    check->add_option("--registry", check_opts.registry, "Registry declaration file");
    check->add_flag("--json-diagnostics", check_opts.json_diagnostics,
                    "Emit diagnostics as JSON lines on stdout");

    std::string fmt_path, fmt_order = "source";
    bool fmt_write = false;
    auto* fmt = app.add_subcommand("fmt", "Print or rewrite the canonical form");
    fmt->add_option("path", fmt_path, "Prompt file")->required();
    fmt->add_flag("--write", fmt_write, "Rewrite the file in place");
    fmt->add_option("--order", fmt_order, "Module order")
        ->check(CLI::IsMember({"canonical", "source"}));

    RenderCliOptions render_opts;
    auto* render = app.add_subcommand("render", "Render a prompt file");
    render->add_option("path", render_opts.path, "Prompt file")->required();
    render->add_option("--to", render_opts.to, "Output format")
        ->check(CLI::IsMember({"md", "json", "flat"}));
    render->add_option("--bind", render_opts.binds, "Placeholder binding KEY=VALUE");
    render->add_option("--template-dir", render_opts.template_dir,
                       "Template search directory");
    render->add_option("--out", render_opts.out, "Write output to a file");

    std::string new_scenario, new_name = "New Prompt", new_format = "md",
                new_registry;
    auto* newcmd = app.add_subcommand("new", "Scaffold a document for a scenario");
    newcmd->add_option("--scenario", new_scenario, "Scenario name")->required();
    newcmd->add_option("--name", new_name, "Document name");
    newcmd->add_option("--format", new_format, "Output format")
        ->check(CLI::IsMember({"md", "json"}));
    newcmd->add_option("--registry", new_registry, "Registry declaration file");

    std::string ph_path;
    auto* placeholders = app.add_subcommand("placeholders", "List placeholders");
    placeholders->add_option("path", ph_path, "Prompt file")->required();

    std::string compose_path, compose_dir, compose_to = "md";
    auto* composecmd =
        app.add_subcommand("compose", "Resolve the extends chain and print the merge");
    composecmd->add_option("path", compose_path, "Prompt file")->required();
    composecmd->add_option("--template-dir", compose_dir, "Template search directory");
    composecmd->add_option("--to", compose_to, "Output format")
        ->check(CLI::IsMember({"md", "json"}));

    std::string explain_code;
    auto* explain = app.add_subcommand("explain", "Explain a diagnostic rule code");
    explain->add_option("code", explain_code, "Rule code")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (check->parsed()) return cmd_check(check_opts);
    if (fmt->parsed()) return cmd_fmt(fmt_path, fmt_write, fmt_order);
    if (render->parsed()) return cmd_render(render_opts);
    if (newcmd->parsed())
        return cmd_new(new_scenario, new_name, new_format, new_registry);
    if (placeholders->parsed()) return cmd_placeholders(ph_path);
    if (composecmd->parsed())
        return cmd_compose(compose_path, compose_dir, compose_to);
    if (explain->parsed()) {
        try {
            std::cout << explain_rule(explain_code) << "\n";
            return kExitOk;
        } catch (const UnknownRuleError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    return kExitUsage;
}
