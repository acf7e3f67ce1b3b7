#include <catch2/catch_amalgamated.hpp>

#include "doc_generator.hpp"
#include "promptlang/parser.hpp"
#include "promptlang/templating.hpp"

using namespace promptlang;

namespace {

PromptDocument fixture_doc() {
    auto result =
        parse_markdown(promptlang::testing::read_fixture("writing_title.lgpt.md"));
    REQUIRE(result.ok());
    return *result.document;
}

PromptDocument doc_from(const std::string& source) {
    auto result = parse_markdown(source);
    REQUIRE(result.ok());
    return *result.document;
}

std::vector<std::string> placeholder_names(const PromptDocument& doc) {
    std::vector<std::string> out;
    for (const auto& ph : list_placeholders(doc)) out.push_back(ph.name);
    return out;
}

}  // namespace

TEST_CASE("list_placeholders aggregates occurrences per name") {
    auto phs = list_placeholders(fixture_doc());
    REQUIRE(phs.size() == 1);
    CHECK(phs[0].name == "ARTICLE");
    REQUIRE(phs[0].occurrences.size() == 1);
    CHECK(phs[0].occurrences[0].module == "Workflow");

    PromptDocument empty;
    empty.name = "T";
    CHECK(list_placeholders(empty).empty());

    auto two = doc_from("# T\n## Profile\n- Use <A>.\n## Goal\n- Also <A>.\n");
    auto ph2 = list_placeholders(two);
    REQUIRE(ph2.size() == 1);
    CHECK(ph2[0].occurrences.size() == 2);
    CHECK(ph2[0].occurrences[0].module == "Profile");
    CHECK(ph2[0].occurrences[1].module == "Goal");
}

TEST_CASE("instantiate substitutes and reports the remaining set") {
    auto doc = fixture_doc();
    auto full = instantiate(doc, {{"ARTICLE", "X"}});
    CHECK(full.warnings.empty());
    CHECK(list_placeholders(full.document).empty());

    auto identity = instantiate(doc, {});
    CHECK(identity.document == doc);

    auto two = doc_from("# T\n## Profile\n- Use <A> and <B>.\n");
    auto partial = instantiate(two, {{"A", "x"}});
    CHECK(placeholder_names(partial.document) == std::vector<std::string>{"B"});
}

TEST_CASE("instantiate warns about unused bindings") {
    auto result = instantiate(fixture_doc(), {{"ARTICLE", "X"}, {"NOPE", "y"}});
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings[0].code == "P3-UNUSED-BINDING");
    CHECK(result.warnings[0].severity == Severity::Warning);
    CHECK(result.warnings[0].message.find("NOPE") != std::string::npos);
}

TEST_CASE("instantiate rejects malformed bindings") {
    auto doc = fixture_doc();
    CHECK_THROWS_AS(instantiate(doc, {{"lower", "x"}}), ConfigError);
    CHECK_THROWS_AS(instantiate(doc, {{"ARTICLE", "nested <OTHER> token"}}), ConfigError);
    CHECK_THROWS_AS(instantiate(doc, {{"ARTICLE", "two\nlines"}}), ConfigError);
}

TEST_CASE("instantiate substitutes inside procedures") {
    auto doc = doc_from(
        "# T\n## Workflow\n### Run\n"
        "- For the given brief <BRIEF>, please execute the following actions:\n"
        "  - Read <BRIEF> twice.\n"
        "- Return the verdict on <BRIEF>.\n");
    auto result = instantiate(doc, {{"BRIEF", "the memo"}});
    const auto& proc = std::get<Procedure>(result.document.modules[0].elements[0]);
    CHECK(proc.input->value == "the memo");
    CHECK(proc.actions[0] == "Read the memo twice.");
    CHECK(*proc.result == "the verdict on the memo.");
}

TEST_CASE("instantiate is compositional over disjoint bindings") {
    promptlang::testing::DocGenerator gen(99);
    for (int i = 0; i < 50; ++i) {
        PromptDocument doc = gen.next();
        TemplateBindings b1{{"ARTICLE", "alpha"}, {"TOPIC", "beta"}};
        TemplateBindings b2{{"AUDIENCE", "gamma"}, {"A1", "delta"}};
        TemplateBindings both = b1;
        both.insert(b2.begin(), b2.end());
        auto staged = instantiate(instantiate(doc, b1).document, b2).document;
        auto at_once = instantiate(doc, both).document;
        CHECK(staged == at_once);
    }
}

TEST_CASE("compose merges disjoint modules") {
    auto base = doc_from("# Base\n## Profile\n- P.\n## Goal\n- G.\n");
    auto child = doc_from("# Child\nExtends: base\n## Constraint\n- C.\n");
    auto merged = compose(child, [&](const std::string& ref) {
        return ref == "base" ? std::optional<PromptDocument>(base) : std::nullopt;
    });
    REQUIRE(merged.modules.size() == 3);
    CHECK(merged.modules[0].name == "Profile");
    CHECK(merged.modules[1].name == "Goal");
    CHECK(merged.modules[2].name == "Constraint");
    CHECK(merged.name == "Child");
    CHECK_FALSE(merged.extends.has_value());
}

TEST_CASE("compose replaces same-named modules wholesale") {
    auto base = doc_from("# Base\n## Profile\n- You are an editor.\n- Extra line.\n");
    auto child = doc_from("# Child\nExtends: base\n## Profile\n- You are a critic.\n");
    auto merged = compose(child, [&](const std::string& ref) {
        return ref == "base" ? std::optional<PromptDocument>(base) : std::nullopt;
    });
    REQUIRE(merged.modules.size() == 1);
    REQUIRE(merged.modules[0].elements.size() == 1);
    CHECK(std::get<Freeform>(merged.modules[0].elements[0]).text == "You are a critic.");
}

TEST_CASE("compose resolves chains root-first and keeps child scenario") {
    auto root = doc_from("# Root\nScenario: Writing\n## Profile\n- R.\n");
    auto mid = doc_from("# Mid\nExtends: root\n## Goal\n- M.\n");
    auto child = doc_from("# Child\nExtends: mid\n## Profile\n- C.\n");
    auto resolver = [&](const std::string& ref) -> std::optional<PromptDocument> {
        if (ref == "root") return root;
        if (ref == "mid") return mid;
        return std::nullopt;
    };
    auto merged = compose(child, resolver);
    CHECK(merged.name == "Child");
    CHECK(merged.scenario == "Writing");  // inherited from the root
    REQUIRE(merged.modules.size() == 2);
    CHECK(merged.modules[0].name == "Profile");
    CHECK(std::get<Freeform>(merged.modules[0].elements[0]).text == "C.");

    // composing the same chain twice yields equal results; inputs unchanged
    auto again = compose(child, resolver);
    CHECK(merged == again);
    CHECK(child.extends == "mid");
}

TEST_CASE("compose detects cycles and names the chain") {
    auto a = doc_from("# A\nExtends: b\n## Profile\n- A.\n");
    auto b = doc_from("# B\nExtends: a\n## Profile\n- B.\n");
    auto resolver = [&](const std::string& ref) -> std::optional<PromptDocument> {
        if (ref == "a") return a;
        if (ref == "b") return b;
        return std::nullopt;
    };
    try {
        compose(a, resolver, "a");
        FAIL("expected CycleError");
    } catch (const CycleError& e) {
        CHECK(std::string(e.what()).find("a -> b -> a") != std::string::npos);
    }
}

TEST_CASE("compose enforces the depth cap") {
    // chain of 9 extends links: doc_0 -> doc_1 -> ... -> doc_9
    std::vector<PromptDocument> docs;
    for (int i = 0; i <= 9; ++i) {
        std::string src = "# Doc " + std::to_string(i) + "\n";
        if (i < 9) src += "Extends: doc_" + std::to_string(i + 1) + "\n";
        src += "\n## Profile\n- Level " + std::to_string(i) + ".\n";
        docs.push_back(doc_from(src));
    }
    auto resolver = [&](const std::string& ref) -> std::optional<PromptDocument> {
        for (int i = 0; i <= 9; ++i)
            if (ref == "doc_" + std::to_string(i)) return docs[i];
        return std::nullopt;
    };
    CHECK_THROWS_AS(compose(docs[0], resolver), DepthExceededError);
    CHECK_NOTHROW(compose(docs[1], resolver));  // exactly 8 links is fine
}

TEST_CASE("compose reports unresolved bases") {
    auto child = doc_from("# C\nExtends: missing\n## Profile\n- P.\n");
    CHECK_THROWS_AS(compose(child, [](const std::string&) { return std::nullopt; }),
                    MissingBaseError);
    PromptDocument no_extends;
    no_extends.name = "X";
    CHECK_THROWS_AS(compose(no_extends, [](const std::string&) { return std::nullopt; }),
                    MissingBaseError);
}

TEST_CASE("compose preserves the unique-module-name invariant") {
    promptlang::testing::DocGenerator gen(5);
    for (int i = 0; i < 30; ++i) {
        PromptDocument base = gen.next();
        PromptDocument child = gen.next();
        child.extends = "base";
        auto merged = compose(child, [&](const std::string&) {
            return std::optional<PromptDocument>(base);
        });
        std::set<std::string, CaseInsensitiveLess> seen;
        for (const auto& mod : merged.modules) CHECK(seen.insert(mod.name).second);
    }
}
