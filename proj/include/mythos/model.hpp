#pragma once

// Core knowledge-base model: concept expressions, axioms, assertions, role
// declarations and the KnowledgeBase container. Everything here is a plain
// value type; reasoning lives in tableau.hpp / semantics.hpp.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mythos/errors.hpp"

namespace mythos {

// ---------------------------------------------------------------------------
// Concept expressions
// ---------------------------------------------------------------------------

enum class ConceptKind { Atom, Top, Bottom, Not, And, Or, Exists, ForAll, OneOf, Facet };

enum class FacetOp { Greater, GreaterEqual, Less, LessEqual };

inline const char* facet_op_symbol(FacetOp op) {
    switch (op) {
        case FacetOp::Greater: return ">";
        case FacetOp::GreaterEqual: return ">=";
        case FacetOp::Less: return "<";
        case FacetOp::LessEqual: return "<=";
    }
    return "?";
}

inline bool facet_op_holds(FacetOp op, long long v, long long bound) {
    switch (op) {
        case FacetOp::Greater: return v > bound;
        case FacetOp::GreaterEqual: return v >= bound;
        case FacetOp::Less: return v < bound;
        case FacetOp::LessEqual: return v <= bound;
    }
    return false;
}

struct ConceptExpr;
using ConceptPtr = std::shared_ptr<const ConceptExpr>;

// Immutable expression node. Which fields are meaningful depends on kind:
//   Atom          name (concept name)
//   Not           args[0]
//   And / Or      args (>= 2)
//   Exists/ForAll name (role name), args[0] (filler)
//   OneOf         individuals (>= 1)
//   Facet         name (attribute), op, bound
struct ConceptExpr {
    ConceptKind kind = ConceptKind::Top;
    std::string name;
    std::vector<ConceptPtr> args;
    std::vector<std::string> individuals;
    FacetOp op = FacetOp::Greater;
    long long bound = 0;
};

inline ConceptPtr atom(std::string name) {
    auto c = std::make_shared<ConceptExpr>();
    c->kind = ConceptKind::Atom;
    c->name = std::move(name);
    return c;
}

inline ConceptPtr top() {
    static const ConceptPtr t = [] {
        auto c = std::make_shared<ConceptExpr>();
        c->kind = ConceptKind::Top;
        return c;
    }();
    return t;
}

inline ConceptPtr bottom() {
    static const ConceptPtr b = [] {
        auto c = std::make_shared<ConceptExpr>();
        c->kind = ConceptKind::Bottom;
        return c;
    }();
    return b;
}

inline ConceptPtr negation(ConceptPtr inner) {
    auto c = std::make_shared<ConceptExpr>();
    c->kind = ConceptKind::Not;
    c->args.push_back(std::move(inner));
    return c;
}

inline ConceptPtr conj(std::vector<ConceptPtr> parts) {
    if (parts.size() < 2) throw Error("AND needs at least two operands");
    auto c = std::make_shared<ConceptExpr>();
    c->kind = ConceptKind::And;
    c->args = std::move(parts);
    return c;
}

inline ConceptPtr disj(std::vector<ConceptPtr> parts) {
    if (parts.size() < 2) throw Error("OR needs at least two operands");
    auto c = std::make_shared<ConceptExpr>();
    c->kind = ConceptKind::Or;
    c->args = std::move(parts);
    return c;
}

inline ConceptPtr some(std::string role, ConceptPtr filler) {
    auto c = std::make_shared<ConceptExpr>();
    c->kind = ConceptKind::Exists;
    c->name = std::move(role);
    c->args.push_back(std::move(filler));
    return c;
}

inline ConceptPtr all(std::string role, ConceptPtr filler) {
    auto c = std::make_shared<ConceptExpr>();
    c->kind = ConceptKind::ForAll;
    c->name = std::move(role);
    c->args.push_back(std::move(filler));
    return c;
}

inline ConceptPtr one_of(std::vector<std::string> inds) {
    if (inds.empty()) throw Error("ONE-OF needs at least one individual");
    auto c = std::make_shared<ConceptExpr>();
    c->kind = ConceptKind::OneOf;
    c->individuals = std::move(inds);
    return c;
}

inline ConceptPtr facet(std::string attribute, FacetOp op, long long bound) {
    auto c = std::make_shared<ConceptExpr>();
    c->kind = ConceptKind::Facet;
    c->name = std::move(attribute);
    c->op = op;
    c->bound = bound;
    return c;
}

// Canonical text form; doubles as the KRSS concept syntax and as the label
// key used by the tableau.
inline std::string to_string(const ConceptPtr& c) {
    switch (c->kind) {
        case ConceptKind::Atom: return c->name;
        case ConceptKind::Top: return "*TOP*";
        case ConceptKind::Bottom: return "*BOTTOM*";
        case ConceptKind::Not: return "(NOT " + to_string(c->args[0]) + ")";
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::string out = c->kind == ConceptKind::And ? "(AND" : "(OR";
            for (const auto& a : c->args) out += " " + to_string(a);
            return out + ")";
        }
        case ConceptKind::Exists: return "(SOME " + c->name + " " + to_string(c->args[0]) + ")";
        case ConceptKind::ForAll: return "(ALL " + c->name + " " + to_string(c->args[0]) + ")";
        case ConceptKind::OneOf: {
            std::string out = "(ONE-OF";
            for (const auto& i : c->individuals) out += " " + i;
            return out + ")";
        }
        case ConceptKind::Facet:
            return "(" + std::string(facet_op_symbol(c->op)) + " " + c->name + " " +
                   std::to_string(c->bound) + ")";
    }
    return "?";
}

inline bool equal(const ConceptPtr& a, const ConceptPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind || a->name != b->name) return false;
    switch (a->kind) {
        case ConceptKind::OneOf: return a->individuals == b->individuals;
        case ConceptKind::Facet: return a->op == b->op && a->bound == b->bound;
        default: break;
    }
    if (a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Negation normal form
// ---------------------------------------------------------------------------

inline ConceptPtr nnf(const ConceptPtr& c);

inline ConceptPtr nnf_negated(const ConceptPtr& c) {
    switch (c->kind) {
        case ConceptKind::Atom:
        case ConceptKind::OneOf:
        case ConceptKind::Facet:
            // NOT may sit directly above these three. A negated facet is not
            // rewritten to its complement facet: an element without any value
            // for the attribute satisfies the negation but not the complement.
            return negation(c);
        case ConceptKind::Top: return bottom();
        case ConceptKind::Bottom: return top();
        case ConceptKind::Not: return nnf(c->args[0]);
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::vector<ConceptPtr> parts;
            parts.reserve(c->args.size());
            for (const auto& a : c->args) parts.push_back(nnf_negated(a));
            return c->kind == ConceptKind::And ? disj(std::move(parts)) : conj(std::move(parts));
        }
        case ConceptKind::Exists: return all(c->name, nnf_negated(c->args[0]));
        case ConceptKind::ForAll: return some(c->name, nnf_negated(c->args[0]));
    }
    return c;
}

inline ConceptPtr nnf(const ConceptPtr& c) {
    switch (c->kind) {
        case ConceptKind::Not: return nnf_negated(c->args[0]);
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::vector<ConceptPtr> parts;
            parts.reserve(c->args.size());
            for (const auto& a : c->args) parts.push_back(nnf(a));
            return c->kind == ConceptKind::And ? conj(std::move(parts)) : disj(std::move(parts));
        }
        case ConceptKind::Exists: return some(c->name, nnf(c->args[0]));
        case ConceptKind::ForAll: return all(c->name, nnf(c->args[0]));
        default: return c;
    }
}

// Complement facet over the integers: > n <-> <= n, >= n <-> < n.
// Only meaningful for elements that do carry a value for the attribute.
inline ConceptPtr negate_facet(const ConceptPtr& f) {
    if (f->kind != ConceptKind::Facet)
        throw PreconditionError("negate_facet: expected a facet, got " + to_string(f));
    FacetOp flipped = FacetOp::Greater;
    switch (f->op) {
        case FacetOp::Greater: flipped = FacetOp::LessEqual; break;
        case FacetOp::GreaterEqual: flipped = FacetOp::Less; break;
        case FacetOp::Less: flipped = FacetOp::GreaterEqual; break;
        case FacetOp::LessEqual: flipped = FacetOp::Greater; break;
    }
    return facet(f->name, flipped, f->bound);
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

// Provenance of a statement within a merged knowledge base.
enum class Source { Myth, Fact, Background, Inferred, Ingested };

inline const char* source_name(Source s) {
    switch (s) {
        case Source::Myth: return "myth";
        case Source::Fact: return "fact";
        case Source::Background: return "background";
        case Source::Inferred: return "inferred";
        case Source::Ingested: return "ingested";
    }
    return "?";
}

// 1-based position of a parsed statement in its source text.
struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 0;
};

enum class AxiomKind { GCI, Equiv, Disjoint };

struct Axiom {
    AxiomKind kind = AxiomKind::GCI;
    ConceptPtr left;
    ConceptPtr right;
    Source source = Source::Background;
    std::optional<SourceSpan> span;
};

inline Axiom gci(ConceptPtr sub, ConceptPtr sup, Source src = Source::Background) {
    return Axiom{AxiomKind::GCI, std::move(sub), std::move(sup), src, std::nullopt};
}
inline Axiom equiv(ConceptPtr l, ConceptPtr r, Source src = Source::Background) {
    return Axiom{AxiomKind::Equiv, std::move(l), std::move(r), src, std::nullopt};
}
inline Axiom disjoint(ConceptPtr l, ConceptPtr r, Source src = Source::Background) {
    return Axiom{AxiomKind::Disjoint, std::move(l), std::move(r), src, std::nullopt};
}

// Equiv unfolds into two GCIs, Disjoint(L, R) into L ⊑ ¬R.
inline std::vector<std::pair<ConceptPtr, ConceptPtr>> axiom_to_gcis(const Axiom& ax) {
    switch (ax.kind) {
        case AxiomKind::GCI: return {{ax.left, ax.right}};
        case AxiomKind::Equiv: return {{ax.left, ax.right}, {ax.right, ax.left}};
        case AxiomKind::Disjoint: return {{ax.left, negation(ax.right)}};
    }
    return {};
}

inline bool same_axiom(const Axiom& a, const Axiom& b) {
    return a.kind == b.kind && equal(a.left, b.left) && equal(a.right, b.right);
}

enum class AssertionKind { Concept, Role, Data };

// Recorded when an assertion was produced by the rule engine.
struct InferredBy {
    std::string rule;
    std::vector<std::pair<std::string, std::string>> bindings; // var -> individual
};

struct Assertion {
    AssertionKind kind = AssertionKind::Concept;
    std::string individual;        // subject
    ConceptPtr concept_expr;       // Concept assertions
    std::string role;              // Role: role name; Data: attribute name
    std::string object;            // Role assertions
    long long value = 0;           // Data assertions
    Source source = Source::Background;
    std::optional<SourceSpan> span;
    std::optional<InferredBy> inferred_by;
};

inline Assertion concept_assertion(std::string ind, ConceptPtr c, Source src = Source::Background) {
    Assertion a;
    a.kind = AssertionKind::Concept;
    a.individual = std::move(ind);
    a.concept_expr = std::move(c);
    a.source = src;
    return a;
}

inline Assertion role_assertion(std::string subj, std::string role, std::string obj,
                                Source src = Source::Background) {
    Assertion a;
    a.kind = AssertionKind::Role;
    a.individual = std::move(subj);
    a.role = std::move(role);
    a.object = std::move(obj);
    a.source = src;
    return a;
}

inline Assertion data_assertion(std::string ind, std::string attribute, long long value,
                                Source src = Source::Background) {
    Assertion a;
    a.kind = AssertionKind::Data;
    a.individual = std::move(ind);
    a.role = std::move(attribute);
    a.value = value;
    a.source = src;
    return a;
}

inline bool same_assertion(const Assertion& a, const Assertion& b) {
    if (a.kind != b.kind || a.individual != b.individual) return false;
    switch (a.kind) {
        case AssertionKind::Concept: return equal(a.concept_expr, b.concept_expr);
        case AssertionKind::Role: return a.role == b.role && a.object == b.object;
        case AssertionKind::Data: return a.role == b.role && a.value == b.value;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Roles and annotations
// ---------------------------------------------------------------------------

struct RoleDecl {
    std::string name;
    std::set<std::string> parents;
    std::optional<std::string> inverse_of;
    bool declared = false; // true when introduced by DEFINE-PRIMITIVE-ROLE
};

enum class AnnotationKey { Modality, TruthValue, Quantifier };

inline const char* annotation_key_name(AnnotationKey k) {
    switch (k) {
        case AnnotationKey::Modality: return "modality";
        case AnnotationKey::TruthValue: return "truth-value";
        case AnnotationKey::Quantifier: return "quantifier";
    }
    return "?";
}

// Side information about an individual (modality, truth value, quantifier).
// Annotations never participate in tableau reasoning.
struct Annotation {
    std::string individual;
    AnnotationKey key = AnnotationKey::Modality;
    std::string value;
};

// ---------------------------------------------------------------------------
// KnowledgeBase
// ---------------------------------------------------------------------------

class KnowledgeBase {
public:
    std::vector<Axiom> tbox;
    std::vector<Assertion> abox;
    std::vector<RoleDecl> rbox;
    std::vector<Annotation> annotations;

    RoleDecl* find_role(const std::string& name) {
        for (auto& r : rbox)
            if (r.name == name) return &r;
        return nullptr;
    }
    const RoleDecl* find_role(const std::string& name) const {
        for (const auto& r : rbox)
            if (r.name == name) return &r;
        return nullptr;
    }

    // Roles are auto-declared on first mention.
    RoleDecl& ensure_role(const std::string& name) {
        if (auto* r = find_role(name)) return *r;
        rbox.push_back(RoleDecl{name, {}, std::nullopt, false});
        return rbox.back();
    }

    void add_parent(const std::string& role, const std::string& parent) {
        ensure_role(parent);
        ensure_role(role).parents.insert(parent);
        check_role_acyclic(role);
    }

    // Keeps the inverse relation symmetric; conflicting re-declarations are errors.
    void set_inverse(const std::string& role, const std::string& inverse) {
        RoleDecl& r = ensure_role(role);
        if (r.inverse_of && *r.inverse_of != inverse)
            throw InverseConflictError("role " + role + " already has inverse " + *r.inverse_of +
                                       ", cannot also declare " + inverse);
        RoleDecl& s = ensure_role(inverse);
        if (s.inverse_of && *s.inverse_of != role)
            throw InverseConflictError("role " + inverse + " already has inverse " + *s.inverse_of +
                                       ", cannot also declare " + role);
        find_role(role)->inverse_of = inverse;   // re-lookup: ensure_role may reallocate
        find_role(inverse)->inverse_of = role;
    }

    void add_axiom(Axiom ax) {
        declare_roles_in(ax.left);
        declare_roles_in(ax.right);
        tbox.push_back(std::move(ax));
    }

    void add_assertion(Assertion as) {
        if (as.kind == AssertionKind::Role) ensure_role(as.role);
        if (as.kind == AssertionKind::Concept) declare_roles_in(as.concept_expr);
        if (as.kind == AssertionKind::Data) {
            for (const auto& other : abox) {
                if (other.kind != AssertionKind::Data) continue;
                if (other.individual != as.individual || other.role != as.role) continue;
                if (other.value != as.value)
                    throw DataValueConflictError(as.individual + " already has " + as.role + " = " +
                                                 std::to_string(other.value) + ", cannot also be " +
                                                 std::to_string(as.value));
                return; // exact duplicate, keep the first
            }
        }
        abox.push_back(std::move(as));
    }

    void add_annotation(Annotation an) {
        for (const auto& other : annotations)
            if (other.individual == an.individual && other.key == an.key &&
                other.value == an.value)
                return;
        annotations.push_back(std::move(an));
    }

    // Individuals in first-appearance order (ABox subjects and objects, plus
    // ONE-OF members mentioned in the TBox).
    std::vector<std::string> individuals_in_order() const {
        std::vector<std::string> out;
        auto push = [&out](const std::string& n) {
            if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
        };
        for (const auto& a : abox) {
            push(a.individual);
            if (a.kind == AssertionKind::Role) push(a.object);
        }
        for (const auto& ax : tbox) {
            collect_one_of(ax.left, push);
            collect_one_of(ax.right, push);
        }
        for (const auto& a : abox)
            if (a.kind == AssertionKind::Concept) collect_one_of(a.concept_expr, push);
        return out;
    }

    bool mentions_individual(const std::string& name) const {
        auto inds = individuals_in_order();
        return std::find(inds.begin(), inds.end(), name) != inds.end();
    }

    // Concept names appearing anywhere in the TBox or in ABox concept
    // assertions, sorted and deduplicated.
    std::vector<std::string> concept_names() const {
        std::set<std::string> names;
        auto walk = [&names](const ConceptPtr& c, auto&& self) -> void {
            if (!c) return;
            if (c->kind == ConceptKind::Atom) names.insert(c->name);
            for (const auto& a : c->args) self(a, self);
        };
        for (const auto& ax : tbox) {
            walk(ax.left, walk);
            walk(ax.right, walk);
        }
        for (const auto& a : abox)
            if (a.kind == AssertionKind::Concept) walk(a.concept_expr, walk);
        return {names.begin(), names.end()};
    }

    std::optional<long long> data_value(const std::string& ind, const std::string& attr) const {
        for (const auto& a : abox)
            if (a.kind == AssertionKind::Data && a.individual == ind && a.role == attr)
                return a.value;
        return std::nullopt;
    }

private:
    template <typename Push>
    static void collect_one_of(const ConceptPtr& c, Push&& push) {
        if (!c) return;
        if (c->kind == ConceptKind::OneOf)
            for (const auto& i : c->individuals) push(i);
        for (const auto& a : c->args) collect_one_of(a, push);
    }

    void declare_roles_in(const ConceptPtr& c) {
        if (!c) return;
        if (c->kind == ConceptKind::Exists || c->kind == ConceptKind::ForAll) ensure_role(c->name);
        for (const auto& a : c->args) declare_roles_in(a);
    }

    void check_role_acyclic(const std::string& start) const {
        std::vector<std::string> stack{start};
        std::set<std::string> seen;
        while (!stack.empty()) {
            std::string cur = stack.back();
            stack.pop_back();
            const RoleDecl* d = find_role(cur);
            if (!d) continue;
            for (const auto& p : d->parents) {
                if (p == start)
                    throw RoleCycleError("cyclic role hierarchy through " + start);
                if (seen.insert(p).second) stack.push_back(p);
            }
        }
    }
};

// Structural KB equality: same statements in the same order, ignoring source
// tags, spans and auto-declared roles that carry no information.
inline bool kb_equal(const KnowledgeBase& a, const KnowledgeBase& b) {
    if (a.tbox.size() != b.tbox.size() || a.abox.size() != b.abox.size()) return false;
    for (std::size_t i = 0; i < a.tbox.size(); ++i)
        if (!same_axiom(a.tbox[i], b.tbox[i])) return false;
    for (std::size_t i = 0; i < a.abox.size(); ++i)
        if (!same_assertion(a.abox[i], b.abox[i])) return false;
    auto informative = [](const KnowledgeBase& kb) {
        std::vector<RoleDecl> out;
        for (const auto& r : kb.rbox)
            if (!r.parents.empty() || r.inverse_of) out.push_back(r);
        std::sort(out.begin(), out.end(),
                  [](const RoleDecl& x, const RoleDecl& y) { return x.name < y.name; });
        return out;
    };
    auto ra = informative(a), rb = informative(b);
    if (ra.size() != rb.size()) return false;
    for (std::size_t i = 0; i < ra.size(); ++i)
        if (ra[i].name != rb[i].name || ra[i].parents != rb[i].parents ||
            ra[i].inverse_of != rb[i].inverse_of)
            return false;
    return true;
}

} // namespace mythos
