#pragma once

// Minimal-conflict extraction and plain-English explanations.
//
// A Justification is a subset of the KB's stated axioms/assertions that
// (together with the full RBox) still exhibits the defect, and is 1-minimal:
// dropping any single statement makes the defect disappear. Extraction is
// black-box deletion shrinking — a halving window pass to discard chunks
// cheaply, then single-statement passes to a fixpoint — with the tableau as
// the oracle. Statement order is the KB's, so results are deterministic.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mythos/errors.hpp"
#include "mythos/model.hpp"
#include "mythos/tableau.hpp"

namespace mythos {

enum class JustificationKind { UnsatConcept, AboxInconsistency };

struct Justification {
    JustificationKind kind;
    std::string concept_name; // set for UnsatConcept
    std::vector<Axiom> axioms;
    std::vector<Assertion> assertions;
};

namespace detail {

// One statement slot: either a TBox axiom or an ABox assertion.
struct StatementSet {
    const KnowledgeBase* kb;
    std::size_t n_axioms;
    std::size_t size() const { return n_axioms + kb->abox.size(); }

    KnowledgeBase project(const std::vector<bool>& keep) const {
        KnowledgeBase sub;
        sub.rbox = kb->rbox;
        for (std::size_t i = 0; i < n_axioms; ++i)
            if (keep[i]) sub.add_axiom(kb->tbox[i]);
        for (std::size_t i = 0; i < kb->abox.size(); ++i)
            if (keep[n_axioms + i]) sub.add_assertion(kb->abox[i]);
        return sub;
    }
};

// Shrinks `keep` to a 1-minimal set for which `defect` still returns true.
inline void shrink(const StatementSet& stmts, std::vector<bool>& keep,
                   const std::function<bool(const KnowledgeBase&)>& defect) {
    std::size_t n = stmts.size();
    auto holds_without = [&](std::size_t lo, std::size_t hi) {
        std::vector<bool> trial = keep;
        bool removed = false;
        for (std::size_t i = lo; i < hi && i < n; ++i) {
            if (trial[i]) removed = true;
            trial[i] = false;
        }
        if (!removed) return false;
        if (!defect(stmts.project(trial))) return false;
        keep = std::move(trial);
        return true;
    };

    for (std::size_t w = n / 2; w >= 1; w /= 2)
        for (std::size_t lo = 0; lo < n; lo += w) holds_without(lo, lo + w);

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i)
            if (keep[i] && holds_without(i, i + 1)) changed = true;
    }
}

} // namespace detail

// Minimal axiom set making `concept_name` unsatisfiable. The ABox plays no
// part in concept satisfiability and is excluded up front.
inline Justification justify_unsat(const KnowledgeBase& kb, const std::string& concept_name,
                                   TableauOptions opt = {}) {
    if (is_satisfiable(kb, atom(concept_name), opt))
        throw PreconditionError("justify_unsat: concept " + concept_name + " is satisfiable");

    KnowledgeBase tbox_only;
    tbox_only.rbox = kb.rbox;
    for (const auto& ax : kb.tbox) tbox_only.add_axiom(ax);

    detail::StatementSet stmts{&tbox_only, tbox_only.tbox.size()};
    std::vector<bool> keep(stmts.size(), true);
    detail::shrink(stmts, keep,
                   [&](const KnowledgeBase& sub) {
                       return !is_satisfiable(sub, atom(concept_name), opt);
                   });

    Justification j{JustificationKind::UnsatConcept, concept_name, {}, {}};
    for (std::size_t i = 0; i < tbox_only.tbox.size(); ++i)
        if (keep[i]) j.axioms.push_back(tbox_only.tbox[i]);
    return j;
}

// Minimal mixed set of axioms and assertions witnessing ABox inconsistency.
inline Justification justify_inconsistency(const KnowledgeBase& kb, TableauOptions opt = {}) {
    if (is_consistent(kb, opt))
        throw PreconditionError("justify_inconsistency: the knowledge base is consistent");

    detail::StatementSet stmts{&kb, kb.tbox.size()};
    std::vector<bool> keep(stmts.size(), true);
    detail::shrink(stmts, keep,
                   [&](const KnowledgeBase& sub) { return !is_consistent(sub, opt); });

    Justification j{JustificationKind::AboxInconsistency, "", {}, {}};
    for (std::size_t i = 0; i < kb.tbox.size(); ++i)
        if (keep[i]) j.axioms.push_back(kb.tbox[i]);
    for (std::size_t i = 0; i < kb.abox.size(); ++i)
        if (keep[kb.tbox.size() + i]) j.assertions.push_back(kb.abox[i]);
    return j;
}

// ---------------------------------------------------------------------------
// Verbalization
// ---------------------------------------------------------------------------

namespace detail {

inline std::string role_verb(const std::string& r) {
    return r.empty() || r.back() == 's' ? r : r + "s";
}

inline std::string pluralize(const std::string& s) {
    return s.empty() ? s : (s.back() == 's' ? s + "es" : s + "s");
}

inline std::string phrase(const ConceptPtr& c, int depth) {
    auto wrap = [&](std::string s) { return depth > 0 ? "(" + s + ")" : s; };
    switch (c->kind) {
        case ConceptKind::Atom: return c->name;
        case ConceptKind::Top: return "anything";
        case ConceptKind::Bottom: return "nothing";
        case ConceptKind::Not: return wrap("not a " + phrase(c->args[0], depth + 1));
        case ConceptKind::And: {
            std::string s;
            if (c->args.size() == 2)
                s = "both " + phrase(c->args[0], depth + 1) + " and " +
                    phrase(c->args[1], depth + 1);
            else
                for (const auto& a : c->args)
                    s += (s.empty() ? "" : " and ") + phrase(a, depth + 1);
            return wrap(s);
        }
        case ConceptKind::Or: {
            std::string s;
            if (c->args.size() == 2)
                s = "either " + phrase(c->args[0], depth + 1) + " or " +
                    phrase(c->args[1], depth + 1);
            else
                for (const auto& a : c->args)
                    s += (s.empty() ? "" : " or ") + phrase(a, depth + 1);
            return wrap(s);
        }
        case ConceptKind::Exists:
            return wrap("something that " + role_verb(c->name) + " a " +
                        phrase(c->args[0], depth + 1));
        case ConceptKind::ForAll:
            return wrap("only " + pluralize(phrase(c->args[0], depth + 1)) + " via " + c->name);
        case ConceptKind::OneOf: {
            std::string s;
            for (const auto& i : c->individuals) s += (s.empty() ? "" : " or ") + i;
            return wrap("one of " + s);
        }
        case ConceptKind::Facet:
            return wrap(c->name + " " + facet_op_symbol(c->op) + " " +
                        std::to_string(c->bound));
    }
    return "?";
}

inline std::string verbalize_axiom(const Axiom& ax) {
    switch (ax.kind) {
        case AxiomKind::GCI:
            return "Every " + phrase(ax.left, 0) + " is a " + phrase(ax.right, 0) + ".";
        case AxiomKind::Equiv:
            return phrase(ax.left, 0) + " is exactly " + phrase(ax.right, 0) + ".";
        case AxiomKind::Disjoint:
            return "No " + phrase(ax.left, 0) + " is a " + phrase(ax.right, 0) + ".";
    }
    return "?";
}

inline std::string verbalize_assertion(const Assertion& a) {
    std::string s;
    switch (a.kind) {
        case AssertionKind::Concept:
            if (a.concept_expr->kind == ConceptKind::Not)
                s = a.individual + " is not a " + phrase(a.concept_expr->args[0], 0);
            else
                s = a.individual + " is a " + phrase(a.concept_expr, 0);
            break;
        case AssertionKind::Role:
            s = a.individual + " " + role_verb(a.role) + " " + a.object;
            break;
        case AssertionKind::Data:
            s = a.individual + " has " + a.role + " " + std::to_string(a.value);
            break;
    }
    if (a.inferred_by) {
        s += " (derived by rule " + a.inferred_by->rule;
        std::string binds;
        for (const auto& [var, val] : a.inferred_by->bindings)
            binds += (binds.empty() ? "" : ", ") + var + " = " + val;
        if (!binds.empty()) s += " with " + binds;
        s += ")";
    }
    return s + ".";
}

} // namespace detail

// One sentence per statement, in justification order, then a closing line.
inline std::string verbalize(const Justification& j) {
    std::string out;
    for (const auto& ax : j.axioms) out += detail::verbalize_axiom(ax) + "\n";
    for (const auto& a : j.assertions) out += detail::verbalize_assertion(a) + "\n";
    out += "These statements cannot all be true.";
    return out;
}

} // namespace mythos
