#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "promptlang/core.hpp"

using namespace promptlang;

namespace {

// Independent oracle: a naive character-by-character scan that tracks the
// escape state explicitly. Kept deliberately separate from the
// implementation's single-pass scanner.
std::vector<std::pair<std::string, int>> oracle_scan(const std::string& text) {
    std::vector<std::pair<std::string, int>> out;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '<') continue;
        bool escaped = i > 0 && text[i - 1] == '\\';
        if (escaped) continue;
        std::string name;
        size_t j = i + 1;
        while (j < text.size() && text[j] != '>' && text[j] != '<' && text[j] != ' ')
            name += text[j++];
        if (j < text.size() && text[j] == '>' && !name.empty()) {
            bool ok = name[0] >= 'A' && name[0] <= 'Z';
            for (char c : name)
                ok = ok && ((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_');
            if (ok) out.push_back({name, static_cast<int>(i) + 1});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("scan_placeholders finds angle-bracket tokens") {
    auto hits = scan_placeholders("For the given article <ARTICLE>, please execute");
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].name == "ARTICLE");
    CHECK(hits[0].span.column == 23);
    CHECK(hits[0].span.length == 9);
}

TEST_CASE("scan_placeholders returns nothing for plain prose") {
    CHECK(scan_placeholders("You are a magazine editor.").empty());
}

TEST_CASE("scan_placeholders skips escapes and reports duplicates") {
    std::string text = "use \\<NOT_ONE> but <A1> and <A1>";
    auto hits = scan_placeholders(text);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].name == "A1");
    CHECK(hits[1].name == "A1");
    CHECK(hits[0].span.column < hits[1].span.column);

    auto expected = oracle_scan(text);
    REQUIRE(hits.size() == expected.size());
    for (size_t i = 0; i < hits.size(); ++i) {
        CHECK(hits[i].name == expected[i].first);
        CHECK(hits[i].span.column == expected[i].second);
    }
}

TEST_CASE("scan_placeholders rejects non-uppercase and unterminated tokens") {
    CHECK(scan_placeholders("a <lower> token").empty());
    CHECK(scan_placeholders("a <1BAD> token").empty());
    CHECK(scan_placeholders("a <UNTERMINATED token").empty());
    CHECK(scan_placeholders("<> empty").empty());
    REQUIRE(scan_placeholders("<A_B2> ok").size() == 1);
}

TEST_CASE("scan_placeholders agrees with the oracle on random lines") {
    std::mt19937 rng(7);
    const std::string alphabet = "ab <>\\AB1_x.";
    for (int n = 0; n < 300; ++n) {
        std::string text;
        size_t len = rng() % 40;
        for (size_t i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
        auto hits = scan_placeholders(text);
        auto expected = oracle_scan(text);
        REQUIRE(hits.size() == expected.size());
        for (size_t i = 0; i < hits.size(); ++i) {
            CHECK(hits[i].name == expected[i].first);
            CHECK(hits[i].span.column == expected[i].second);
        }
    }
}

TEST_CASE("scan is idempotent over a no-op substitution") {
    std::map<std::string, std::string> empty;
    for (std::string text : {"For the given article <ARTICLE>, go", "plain",
                             "use \\<X> and <A1> twice <A1>"}) {
        std::string rewritten = substitute_placeholders(text, empty);
        CHECK(rewritten == text);
        CHECK(scan_placeholders(rewritten) == scan_placeholders(text));
    }
}

TEST_CASE("classify_element_line recognizes the strict assignment pattern") {
    Element e = classify_element_line("The style of the title is formal.");
    auto* a = std::get_if<Assignment>(&e);
    REQUIRE(a != nullptr);
    CHECK(a->property == "style of the title");
    CHECK(a->value == "formal");
    CHECK(a->text == "The style of the title is formal.");
}

TEST_CASE("classify_element_line keeps non-assignments as freeform") {
    for (std::string text : {"The length of the title should not exceed 20 words.",
                             "You are a magazine editor."}) {
        Element e = classify_element_line(text);
        auto* f = std::get_if<Freeform>(&e);
        REQUIRE(f != nullptr);
        CHECK(f->text == text);
    }
}

TEST_CASE("classify_element_line splits at the first ' is '") {
    Element e = classify_element_line("The tone is what it is.");
    auto* a = std::get_if<Assignment>(&e);
    REQUIRE(a != nullptr);
    CHECK(a->property == "tone");
    CHECK(a->value == "what it is");
}

TEST_CASE("classify_element_line edge cases") {
    CHECK_THROWS_AS(classify_element_line(""), std::invalid_argument);
    CHECK_THROWS_AS(classify_element_line("   "), std::invalid_argument);
    // empty property or value falls back to freeform
    CHECK(std::holds_alternative<Freeform>(classify_element_line("The  is x.")));
    CHECK(std::holds_alternative<Freeform>(classify_element_line("The x is .")));
    // text preserved after trimming
    Element e = classify_element_line("  You decide.  ");
    CHECK(std::get<Freeform>(e).text == "You decide.");
}

TEST_CASE("substitute_placeholders honors escapes and bindings") {
    std::map<std::string, std::string> b{{"A", "x"}};
    CHECK(substitute_placeholders("use <A> and \\<A>", b) == "use x and \\<A>");
    CHECK(substitute_placeholders("use <A> and \\<A>", b, nullptr, true) ==
          "use x and <A>");
    std::vector<std::string> unbound;
    CHECK(substitute_placeholders("<A> <B>", b, &unbound) == "x <B>");
    REQUIRE(unbound.size() == 1);
    CHECK(unbound[0] == "B");
}

TEST_CASE("make_module rejects invalid constructions") {
    CHECK_THROWS_AS(make_module(ModuleKind::Inherent, "Profile", {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_module(ModuleKind::Extension, "  ", {Freeform{"x"}}),
                    std::invalid_argument);
    auto mod = make_module(ModuleKind::Inherent, "Profile", {Freeform{"x"}});
    CHECK(mod.elements.size() == 1);
}
