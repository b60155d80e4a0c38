#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace mythos;

TEST_CASE("nnf pushes negation down to atoms", "[model]") {
    auto c = negation(conj({atom("A"), some("r", atom("B"))}));
    auto n = nnf(c);
    REQUIRE(n->kind == ConceptKind::Or);
    REQUIRE(n->args[0]->kind == ConceptKind::Not);
    REQUIRE(n->args[0]->args[0]->name == "A");
    REQUIRE(n->args[1]->kind == ConceptKind::ForAll);
    REQUIRE(n->args[1]->args[0]->kind == ConceptKind::Not);
    REQUIRE(n->args[1]->args[0]->args[0]->name == "B");
}

TEST_CASE("nnf eliminates double negation", "[model]") {
    REQUIRE(equal(nnf(negation(negation(atom("A")))), atom("A")));
}

TEST_CASE("nnf swaps top and bottom under negation", "[model]") {
    REQUIRE(nnf(negation(top()))->kind == ConceptKind::Bottom);
    REQUIRE(nnf(negation(bottom()))->kind == ConceptKind::Top);
}

TEST_CASE("negated nominals and facets stay as negated leaves", "[model]") {
    auto n1 = nnf(negation(one_of({"a", "b"})));
    REQUIRE(n1->kind == ConceptKind::Not);
    REQUIRE(n1->args[0]->kind == ConceptKind::OneOf);

    auto n2 = nnf(negation(facet("hasAge", FacetOp::Greater, 65)));
    REQUIRE(n2->kind == ConceptKind::Not);
    REQUIRE(n2->args[0]->kind == ConceptKind::Facet);
}

TEST_CASE("nnf is idempotent", "[model]") {
    th::Gen g(20260815);
    for (int i = 0; i < 300; ++i) {
        auto c = th::random_concept(g, 3);
        auto once = nnf(c);
        REQUIRE(equal(once, nnf(once)));
    }
}

TEST_CASE("nnf preserves truth in every interpretation", "[model]") {
    th::Gen g(424242);
    for (int i = 0; i < 300; ++i) {
        auto c = th::random_concept(g, 3);
        auto n = nnf(c);
        auto I = th::random_interpretation(g, 1 + g.pick(3));
        for (int x = 0; x < I.domain_size; ++x)
            REQUIRE(concept_holds(I, c, x) == concept_holds(I, n, x));
    }
}

TEST_CASE("structural equality distinguishes shape, not identity", "[model]") {
    auto a = conj({atom("A"), some("r", atom("B"))});
    auto b = conj({atom("A"), some("r", atom("B"))});
    REQUIRE(equal(a, b));
    REQUIRE_FALSE(equal(a, conj({atom("A"), some("s", atom("B"))})));
    REQUIRE_FALSE(equal(atom("A"), negation(atom("A"))));
    REQUIRE_FALSE(equal(one_of({"a"}), one_of({"b"})));
    REQUIRE_FALSE(equal(facet("hasAge", FacetOp::Greater, 65),
                        facet("hasAge", FacetOp::GreaterEqual, 65)));
}

TEST_CASE("equivalence unfolds into both inclusion directions", "[model]") {
    auto ax = equiv(atom("A"), conj({atom("B"), atom("C")}));
    auto gcis = axiom_to_gcis(ax);
    REQUIRE(gcis.size() == 2);
    REQUIRE(equal(gcis[0].first, ax.left));
    REQUIRE(equal(gcis[0].second, ax.right));
    REQUIRE(equal(gcis[1].first, ax.right));
    REQUIRE(equal(gcis[1].second, ax.left));
}

TEST_CASE("disjointness unfolds into a negative inclusion", "[model]") {
    auto gcis = axiom_to_gcis(disjoint(atom("Virus"), atom("Bacteria")));
    REQUIRE(gcis.size() == 1);
    REQUIRE(equal(gcis[0].first, atom("Virus")));
    REQUIRE(equal(gcis[0].second, negation(atom("Bacteria"))));
}

TEST_CASE("plain inclusions unfold to themselves", "[model]") {
    auto ax = gci(atom("A"), atom("B"));
    auto gcis = axiom_to_gcis(ax);
    REQUIRE(gcis.size() == 1);
    REQUIRE(equal(gcis[0].first, atom("A")));
    REQUIRE(equal(gcis[0].second, atom("B")));
}

TEST_CASE("conflicting data values are rejected at insertion", "[model]") {
    KnowledgeBase kb;
    kb.add_assertion(data_assertion("jon", "hasAge", 40));
    REQUIRE_THROWS_AS(kb.add_assertion(data_assertion("jon", "hasAge", 41)),
                      DataValueConflictError);
    kb.add_assertion(data_assertion("jon", "hasAge", 40)); // exact duplicate is fine
    REQUIRE(kb.abox.size() == 1);
    REQUIRE(kb.data_value("jon", "hasAge") == 40);
}

TEST_CASE("annotations deduplicate", "[model]") {
    KnowledgeBase kb;
    kb.add_annotation({"affect_1", AnnotationKey::Modality, "possible"});
    kb.add_annotation({"affect_1", AnnotationKey::Modality, "possible"});
    kb.add_annotation({"affect_1", AnnotationKey::TruthValue, "false"});
    REQUIRE(kb.annotations.size() == 2);
}

TEST_CASE("role hierarchy rejects cycles", "[model]") {
    KnowledgeBase kb;
    kb.add_parent("spreadBy", "travel");
    REQUIRE_THROWS_AS(kb.add_parent("travel", "spreadBy"), RoleCycleError);
}

TEST_CASE("inverse declarations must agree", "[model]") {
    KnowledgeBase kb;
    kb.set_inverse("affects", "affectedBy");
    kb.set_inverse("affects", "affectedBy"); // same again is fine
    REQUIRE_THROWS_AS(kb.set_inverse("affects", "spread"), InverseConflictError);
    REQUIRE(kb.find_role("affectedBy")->inverse_of == "affects");
}

TEST_CASE("individuals are listed in first-appearance order", "[model]") {
    KnowledgeBase kb;
    kb.add_assertion(role_assertion("x", "r", "y"));
    kb.add_assertion(concept_assertion("z", atom("A")));
    kb.add_axiom(equiv(atom("Covid-19"), one_of({"Covid-19"})));
    auto inds = kb.individuals_in_order();
    REQUIRE(inds == std::vector<std::string>{"x", "y", "z", "Covid-19"});
    REQUIRE(kb.mentions_individual("Covid-19"));
    REQUIRE_FALSE(kb.mentions_individual("w"));
}

TEST_CASE("concept names are collected sorted and unique", "[model]") {
    KnowledgeBase kb;
    kb.add_axiom(gci(atom("B"), some("r", atom("A"))));
    kb.add_assertion(concept_assertion("x", negation(atom("B"))));
    REQUIRE(kb.concept_names() == std::vector<std::string>{"A", "B"});
}

TEST_CASE("roles are auto-declared on first mention", "[model]") {
    KnowledgeBase kb;
    kb.add_axiom(gci(atom("A"), some("r", all("s", atom("B")))));
    REQUIRE(kb.find_role("r") != nullptr);
    REQUIRE(kb.find_role("s") != nullptr);
    REQUIRE_FALSE(kb.find_role("r")->declared);
}

TEST_CASE("statement origins carry readable names", "[model]") {
    REQUIRE(std::string(source_name(Source::Myth)) == "myth");
    REQUIRE(std::string(source_name(Source::Fact)) == "fact");
    REQUIRE(std::string(source_name(Source::Background)) == "background");
    REQUIRE(std::string(source_name(Source::Inferred)) == "inferred");
    REQUIRE(std::string(source_name(Source::Ingested)) == "ingested");
}
