#pragma once

// Horn-style rules over ABox atoms: concept-atom heads, concept/role-atom
// bodies, forward chaining to a fixpoint. Matching is purely syntactic over
// asserted and previously inferred atoms; nothing is asked of the reasoner.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mythos/model.hpp"

namespace mythos {

// A term is either a variable (written ?x) or an individual constant.
struct RuleTerm {
    bool is_variable = false;
    std::string name; // variable name without the '?', or the individual
};

inline RuleTerm rule_var(std::string name) { return RuleTerm{true, std::move(name)}; }
inline RuleTerm rule_ind(std::string name) { return RuleTerm{false, std::move(name)}; }

// ConceptAtom: predicate is a concept name, subject only.
// RoleAtom:    predicate is a role name, subject and object. A quality atom
//              (?x Only hasQuality) is the same thing with a constant object.
struct RuleAtom {
    enum class Kind { Concept, Role };
    Kind kind = Kind::Concept;
    std::string predicate;
    RuleTerm subject;
    RuleTerm object; // Role atoms only
};

struct Rule {
    std::string name;
    RuleAtom head; // always a concept atom
    std::vector<RuleAtom> body;
};

inline std::set<std::string> body_variables(const Rule& r) {
    std::set<std::string> vars;
    for (const auto& atom : r.body) {
        if (atom.subject.is_variable) vars.insert(atom.subject.name);
        if (atom.kind == RuleAtom::Kind::Role && atom.object.is_variable)
            vars.insert(atom.object.name);
    }
    return vars;
}

// Throws UnboundVariableError when a head variable never occurs in the body.
inline void check_rule_safety(const Rule& r) {
    if (!r.head.subject.is_variable) return;
    if (!body_variables(r).count(r.head.subject.name))
        throw UnboundVariableError("rule " + r.name + ": head variable ?" + r.head.subject.name +
                                   " does not occur in the body");
}

namespace detail {

struct AtomIndex {
    // concept name -> individuals asserted to be exactly that atom
    std::map<std::string, std::vector<std::string>> by_concept;
    std::map<std::string, std::set<std::string>> by_concept_set;
    // role name -> subject/object pairs
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> by_role;

    void add(const Assertion& a) {
        if (a.kind == AssertionKind::Concept && a.concept_expr->kind == ConceptKind::Atom) {
            if (by_concept_set[a.concept_expr->name].insert(a.individual).second)
                by_concept[a.concept_expr->name].push_back(a.individual);
        } else if (a.kind == AssertionKind::Role) {
            by_role[a.role].push_back({a.individual, a.object});
        }
    }

    bool has_concept(const std::string& concept_name, const std::string& ind) const {
        auto it = by_concept_set.find(concept_name);
        return it != by_concept_set.end() && it->second.count(ind) > 0;
    }
};

using Bindings = std::map<std::string, std::string>;

template <typename Emit>
inline void match_body(const AtomIndex& index, const std::vector<RuleAtom>& body,
                       std::size_t next, Bindings& bound, Emit&& emit) {
    if (next == body.size()) {
        emit(bound);
        return;
    }
    const RuleAtom& atom = body[next];

    auto resolved = [&bound](const RuleTerm& t) -> std::optional<std::string> {
        if (!t.is_variable) return t.name;
        auto it = bound.find(t.name);
        if (it != bound.end()) return it->second;
        return std::nullopt;
    };

    if (atom.kind == RuleAtom::Kind::Concept) {
        auto subj = resolved(atom.subject);
        if (subj) {
            if (index.has_concept(atom.predicate, *subj))
                match_body(index, body, next + 1, bound, emit);
            return;
        }
        auto it = index.by_concept.find(atom.predicate);
        if (it == index.by_concept.end()) return;
        for (const auto& ind : it->second) {
            bound[atom.subject.name] = ind;
            match_body(index, body, next + 1, bound, emit);
            bound.erase(atom.subject.name);
        }
        return;
    }

    auto it = index.by_role.find(atom.predicate);
    if (it == index.by_role.end()) return;
    auto subj = resolved(atom.subject);
    auto obj = resolved(atom.object);
    for (const auto& [s, o] : it->second) {
        if (subj && *subj != s) continue;
        if (obj && *obj != o) continue;
        std::vector<std::string> added;
        if (!subj && atom.subject.is_variable) {
            bound[atom.subject.name] = s;
            added.push_back(atom.subject.name);
        }
        if (!obj && atom.object.is_variable) {
            // (?x ?x r) must bind both positions to the same individual
            auto existing = bound.find(atom.object.name);
            if (existing != bound.end()) {
                if (existing->second != o) {
                    for (const auto& v : added) bound.erase(v);
                    continue;
                }
            } else {
                bound[atom.object.name] = o;
                added.push_back(atom.object.name);
            }
        }
        match_body(index, body, next + 1, bound, emit);
        for (const auto& v : added) bound.erase(v);
    }
}

} // namespace detail

// Forward chaining to the least fixpoint. Inferred assertions are appended
// with Source::Inferred and carry the rule name plus the full bindings.
// Monotone and idempotent; the result set does not depend on rule order.
inline KnowledgeBase apply_rules(const KnowledgeBase& kb, const std::vector<Rule>& rules,
                                 std::size_t max_inferred = 10'000) {
    for (const auto& r : rules) check_rule_safety(r);

    KnowledgeBase out = kb;
    detail::AtomIndex index;
    for (const auto& a : out.abox) index.add(a);

    std::size_t inferred_count = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Assertion> fresh;
        for (const auto& rule : rules) {
            detail::Bindings bound;
            detail::match_body(index, rule.body, 0, bound, [&](const detail::Bindings& b) {
                std::string subject = rule.head.subject.is_variable
                                          ? b.at(rule.head.subject.name)
                                          : rule.head.subject.name;
                if (index.has_concept(rule.head.predicate, subject)) return;
                for (const auto& f : fresh)
                    if (f.individual == subject && f.concept_expr->name == rule.head.predicate) return;
                Assertion a = concept_assertion(subject, atom(rule.head.predicate),
                                                Source::Inferred);
                InferredBy prov;
                prov.rule = rule.name;
                prov.bindings.assign(b.begin(), b.end()); // map: already sorted by variable
                a.inferred_by = std::move(prov);
                fresh.push_back(std::move(a));
            });
        }
        for (auto& a : fresh) {
            index.add(a);
            out.abox.push_back(std::move(a));
            if (++inferred_count > max_inferred)
                throw ResourceLimitError("rule fixpoint exceeded " +
                                         std::to_string(max_inferred) + " inferred assertions");
            changed = true;
        }
    }
    return out;
}

} // namespace mythos
