#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "helpers.hpp"

using namespace mythos;

namespace {

// The situation the elderly rule is written for: an event with quality Only
// and two experiencers, one of them asserted Elderly.
KnowledgeBase affect_scene() {
    return krss::parse_kb("(RELATED affect_1 Only hasQuality)"
                          "(RELATED affect_1 elderly_1 Experiencer)"
                          "(RELATED affect_1 person_1 Experiencer)"
                          "(INSTANCE elderly_1 Elderly)");
}

std::vector<Rule> elderly_rules() {
    return th::load_doc("corpus/elderly.rules").rules;
}

std::set<std::string> members_of(const KnowledgeBase& kb, const std::string& concept_name) {
    std::set<std::string> out;
    for (const auto& a : kb.abox)
        if (a.kind == AssertionKind::Concept && a.concept_expr->kind == ConceptKind::Atom &&
            a.concept_expr->name == concept_name)
            out.insert(a.individual);
    return out;
}

} // namespace

TEST_CASE("the elderly rule propagates across shared experiencers", "[rules]") {
    auto out = apply_rules(affect_scene(), elderly_rules());
    REQUIRE(members_of(out, "Elderly") == std::set<std::string>{"elderly_1", "person_1"});

    const Assertion* inferred = nullptr;
    for (const auto& a : out.abox)
        if (a.individual == "person_1" && a.kind == AssertionKind::Concept) inferred = &a;
    REQUIRE(inferred != nullptr);
    REQUIRE(inferred->source == Source::Inferred);
    REQUIRE(inferred->inferred_by.has_value());
    REQUIRE(inferred->inferred_by->rule == "rule-elderly");
    // bindings listed alphabetically by variable
    using Binding = std::pair<std::string, std::string>;
    REQUIRE(inferred->inferred_by->bindings ==
            std::vector<Binding>{{"x", "affect_1"}, {"y", "elderly_1"}, {"z", "person_1"}});
}

TEST_CASE("no quality marker, no inference", "[rules]") {
    auto kb = krss::parse_kb("(RELATED affect_1 elderly_1 Experiencer)"
                             "(RELATED affect_1 person_1 Experiencer)"
                             "(INSTANCE elderly_1 Elderly)");
    auto out = apply_rules(kb, elderly_rules());
    REQUIRE(members_of(out, "Elderly") == std::set<std::string>{"elderly_1"});
}

TEST_CASE("rule application is monotone", "[rules]") {
    auto before = affect_scene();
    auto after = apply_rules(before, elderly_rules());
    REQUIRE(after.abox.size() >= before.abox.size());
    for (std::size_t i = 0; i < before.abox.size(); ++i)
        REQUIRE(same_assertion(before.abox[i], after.abox[i]));
}

TEST_CASE("rule application is idempotent", "[rules]") {
    auto once = apply_rules(affect_scene(), elderly_rules());
    auto twice = apply_rules(once, elderly_rules());
    REQUIRE(once.abox.size() == twice.abox.size());
}

TEST_CASE("derived facts do not depend on rule order", "[rules]") {
    auto doc = krss::parse_document(
        "(DEFINE-RULE (?x B) (?x A))"
        "(DEFINE-RULE (?x C) (?x B))"
        "(DEFINE-RULE (?x D) (AND (?x B) (?x C)))");
    auto kb = krss::parse_kb("(INSTANCE a A)");

    auto rules = doc.rules;
    auto forward = apply_rules(kb, rules);
    std::reverse(rules.begin(), rules.end());
    auto backward = apply_rules(kb, rules);

    for (const auto& name : {"A", "B", "C", "D"}) {
        REQUIRE(members_of(forward, name) == std::set<std::string>{"a"});
        REQUIRE(members_of(backward, name) == std::set<std::string>{"a"});
    }
}

TEST_CASE("chained rules reach the fixpoint", "[rules]") {
    auto doc = krss::parse_document("(DEFINE-RULE (?y Reached) (AND (?x ?y r) (?x Reached)))");
    auto kb = krss::parse_kb("(INSTANCE a Reached) (RELATED a b r) (RELATED b c r)"
                             "(RELATED c d r)");
    auto out = apply_rules(kb, doc.rules);
    REQUIRE(members_of(out, "Reached") == std::set<std::string>{"a", "b", "c", "d"});
}

TEST_CASE("constants in rule bodies must match exactly", "[rules]") {
    auto doc = krss::parse_document("(DEFINE-RULE (?z Flagged) (?x Only hasQuality)"
                                    " (?x ?z Experiencer))");
    auto kb = krss::parse_kb("(RELATED e1 Some hasQuality) (RELATED e1 p1 Experiencer)");
    auto out = apply_rules(kb, doc.rules);
    REQUIRE(members_of(out, "Flagged").empty());
}

TEST_CASE("repeated variables require equal bindings", "[rules]") {
    auto doc = krss::parse_document("(DEFINE-RULE (?x Selfie) (?x ?x r))");
    auto kb = krss::parse_kb("(RELATED a b r) (RELATED c c r)");
    auto out = apply_rules(kb, doc.rules);
    REQUIRE(members_of(out, "Selfie") == std::set<std::string>{"c"});
}

TEST_CASE("unbound head variables are rejected", "[rules]") {
    auto doc = krss::parse_document("(DEFINE-RULE (?z Elderly) (?x Only hasQuality))");
    REQUIRE_THROWS_AS(apply_rules(KnowledgeBase{}, doc.rules), UnboundVariableError);
}

TEST_CASE("the inference cap stops runaway derivation", "[rules]") {
    auto doc = krss::parse_document("(DEFINE-RULE (?y Reached) (AND (?x ?y r) (?x Reached)))");
    auto kb = krss::parse_kb("(INSTANCE a Reached) (RELATED a b r) (RELATED b c r)");
    REQUIRE_THROWS_AS(apply_rules(kb, doc.rules, 1), ResourceLimitError);
}

TEST_CASE("a constant head subject needs no body variables", "[rules]") {
    auto doc = krss::parse_document("(DEFINE-RULE (world Observed) (?x Event))");
    auto kb = krss::parse_kb("(INSTANCE e Event)");
    auto out = apply_rules(kb, doc.rules);
    REQUIRE(members_of(out, "Observed") == std::set<std::string>{"world"});
}
