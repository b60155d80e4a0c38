#pragma once

// Tableau satisfiability and consistency for the supported fragment:
// ALC plus role hierarchies, declared inverse roles, ONE-OF nominals and
// integer facets. TBox axioms are internalized as universal constraints;
// termination comes from ancestor equality blocking (sound in the presence
// of inverse roles, unlike subset blocking) plus a hard node cap.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mythos/model.hpp"

namespace mythos {

struct TableauOptions {
    std::size_t node_cap = 10'000;
};

namespace detail {

// Role hierarchy closed under transitivity and mirrored through declared
// inverses: r ⊑ s entails r⁻ ⊑ s⁻ whenever both inverse names exist.
struct RoleTable {
    std::map<std::string, std::set<std::string>> supers; // reflexive-transitive
    std::map<std::string, std::string> inverse;

    void build(const KnowledgeBase& kb) {
        std::map<std::string, std::set<std::string>> direct;
        for (const auto& r : kb.rbox) {
            direct[r.name].insert(r.name);
            for (const auto& p : r.parents) direct[r.name].insert(p);
            if (r.inverse_of) inverse[r.name] = *r.inverse_of;
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& [role, sup] : direct) {
                // transitive step
                std::vector<std::string> add;
                for (const auto& s : sup) {
                    auto it = direct.find(s);
                    if (it == direct.end()) continue;
                    for (const auto& s2 : it->second)
                        if (!sup.count(s2)) add.push_back(s2);
                }
                for (auto& a : add) {
                    sup.insert(a);
                    changed = true;
                }
                // mirror step through declared inverses
                auto roleInv = inverse.find(role);
                if (roleInv == inverse.end()) continue;
                for (const auto& s : sup) {
                    auto supInv = inverse.find(s);
                    if (supInv == inverse.end()) continue;
                    if (direct[roleInv->second].insert(supInv->second).second) changed = true;
                }
            }
        }
        supers = std::move(direct);
    }

    bool is_super(const std::string& edge_role, const std::string& wanted) const {
        if (edge_role == wanted) return true;
        auto it = supers.find(edge_role);
        return it != supers.end() && it->second.count(wanted) > 0;
    }

    const std::string* inverse_of(const std::string& role) const {
        auto it = inverse.find(role);
        return it == inverse.end() ? nullptr : &it->second;
    }
};

struct TableauNode {
    int id = 0;
    bool named = false;
    std::set<std::string> names;           // individual names merged into this node
    std::vector<ConceptPtr> label;         // insertion order drives rule application
    std::unordered_set<std::string> keys;  // canonical forms, for dedup and clash
    std::set<std::string> distinct_from;   // individuals this node must differ from
    std::map<std::string, long long> values;
    int parent = -1;       // creating node for fresh nodes
    int merged_into = -1;
};

struct TableauEdge {
    int from = 0;
    int to = 0;
    std::string role;
};

// One branch of the search. Branching copies the whole state; the KBs this
// engine sees are small and the copy keeps backtracking trivial.
struct TableauGraph {
    std::vector<TableauNode> nodes;
    std::vector<TableauEdge> edges;
    std::map<std::string, int> named_ids;
    bool clashed = false;

    const RoleTable* roles = nullptr;
    const std::vector<ConceptPtr>* universals = nullptr; // internalized TBox
    std::size_t node_cap = 10'000;

    int resolve(int id) const {
        while (nodes[id].merged_into >= 0) id = nodes[id].merged_into;
        return id;
    }

    int make_node(bool named, const std::string& name, int parent) {
        if (nodes.size() >= node_cap)
            throw ResourceLimitError("tableau exceeded " + std::to_string(node_cap) + " nodes");
        TableauNode n;
        n.id = static_cast<int>(nodes.size());
        n.named = named;
        if (named) n.names.insert(name);
        n.parent = parent;
        nodes.push_back(std::move(n));
        int id = static_cast<int>(nodes.size()) - 1;
        for (const auto& u : *universals) add_concept(id, u);
        return id;
    }

    int named_node(const std::string& individual) {
        auto it = named_ids.find(individual);
        if (it != named_ids.end()) return resolve(it->second);
        int id = make_node(true, individual, -1);
        named_ids[individual] = id;
        return id;
    }

    // Adds an NNF concept to a node's label; returns true when new.
    bool add_concept(int id, const ConceptPtr& c) {
        id = resolve(id);
        TableauNode& n = nodes[id];
        const std::string key = to_string(c);
        if (n.keys.count(key)) return false;
        n.keys.insert(key);
        n.label.push_back(c);

        if (c->kind == ConceptKind::Bottom) {
            clashed = true;
            return true;
        }
        // complement already present?
        if (n.keys.count(to_string(nnf(negation(c))))) {
            clashed = true;
            return true;
        }
        if (c->kind == ConceptKind::Not && c->args[0]->kind == ConceptKind::OneOf) {
            for (const auto& ind : c->args[0]->individuals) {
                n.distinct_from.insert(ind);
                if (n.names.count(ind)) clashed = true;
            }
        }
        if (c->kind == ConceptKind::Facet ||
            (c->kind == ConceptKind::Not && c->args[0]->kind == ConceptKind::Facet))
            check_facets(id);
        return true;
    }

    void set_value(int id, const std::string& attr, long long v) {
        id = resolve(id);
        auto it = nodes[id].values.find(attr);
        if (it != nodes[id].values.end() && it->second != v) {
            clashed = true;
            return;
        }
        nodes[id].values[attr] = v;
        check_facets(id);
    }

    void add_edge(int from, int to, const std::string& role) {
        edges.push_back(TableauEdge{from, to, role});
    }

    // Facet clash rule. With an asserted value every facet literal is just
    // checked against it; without one, the positive facets (and complements
    // of negated ones) must leave a non-empty integer interval.
    void check_facets(int id) {
        const TableauNode& n = nodes[id];
        std::map<std::string, std::vector<ConceptPtr>> positive, negated;
        for (const auto& c : n.label) {
            if (c->kind == ConceptKind::Facet) positive[c->name].push_back(c);
            if (c->kind == ConceptKind::Not && c->args[0]->kind == ConceptKind::Facet)
                negated[c->args[0]->name].push_back(c->args[0]);
        }
        std::set<std::string> attrs;
        for (const auto& [a, _] : positive) attrs.insert(a);
        for (const auto& [a, _] : negated) attrs.insert(a);
        for (const auto& attr : attrs) {
            auto vit = n.values.find(attr);
            if (vit != n.values.end()) {
                for (const auto& f : positive[attr])
                    if (!facet_op_holds(f->op, vit->second, f->bound)) clashed = true;
                for (const auto& f : negated[attr])
                    if (facet_op_holds(f->op, vit->second, f->bound)) clashed = true;
            } else if (!positive[attr].empty()) {
                long long lo = std::numeric_limits<long long>::min() / 4;
                long long hi = std::numeric_limits<long long>::max() / 4;
                auto narrow = [&lo, &hi](const ConceptPtr& f) {
                    switch (f->op) {
                        case FacetOp::Greater: lo = std::max(lo, f->bound + 1); break;
                        case FacetOp::GreaterEqual: lo = std::max(lo, f->bound); break;
                        case FacetOp::Less: hi = std::min(hi, f->bound - 1); break;
                        case FacetOp::LessEqual: hi = std::min(hi, f->bound); break;
                    }
                };
                for (const auto& f : positive[attr]) narrow(f);
                for (const auto& f : negated[attr]) narrow(negate_facet(f));
                if (lo > hi) clashed = true;
            }
            // only negated facets and no value: satisfiable with "no value"
        }
    }

    // Merges node `from` into the (named) node `into`: labels, values,
    // distinctness constraints and aliases move over; edges are rerouted
    // lazily through resolve().
    void merge(int from, int into) {
        from = resolve(from);
        into = resolve(into);
        if (from == into) return;
        nodes[from].merged_into = into;
        TableauNode moved = nodes[from]; // copy: add_concept touches nodes[]
        for (const auto& name : moved.names) nodes[into].names.insert(name);
        for (const auto& d : moved.distinct_from) nodes[into].distinct_from.insert(d);
        for (const auto& name : nodes[into].names)
            if (nodes[into].distinct_from.count(name)) clashed = true;
        for (const auto& [attr, v] : moved.values) {
            if (clashed) return;
            set_value(into, attr, v);
        }
        for (const auto& c : moved.label) {
            if (clashed) return;
            add_concept(into, c);
        }
    }

    std::vector<int> neighbors_via(int x, const std::string& wanted) const {
        std::set<int> seen;
        std::vector<int> out;
        for (const auto& e : edges) {
            int from = resolve(e.from), to = resolve(e.to);
            if (from == x && roles->is_super(e.role, wanted) && seen.insert(to).second)
                out.push_back(to);
            if (to == x) {
                if (const std::string* inv = roles->inverse_of(e.role))
                    if (roles->is_super(*inv, wanted) && seen.insert(from).second)
                        out.push_back(from);
            }
        }
        return out;
    }

    // Ancestor equality blocking: a fresh node is blocked when some fresh
    // ancestor carries exactly the same label set.
    bool blocked(int id) const {
        const TableauNode& n = nodes[id];
        if (n.named) return false;
        int cur = n.parent;
        while (cur >= 0) {
            int r = resolve(cur);
            const TableauNode& anc = nodes[r];
            if (!anc.named && anc.keys == n.keys) return true;
            cur = anc.parent;
        }
        return false;
    }
};

// A pending nondeterministic choice.
struct BranchPoint {
    int node = -1;
    enum class Kind { None, Or, OneOf } kind = Kind::None;
    ConceptPtr expr;
};

class TableauSolver {
public:
    TableauSolver(const KnowledgeBase& kb, TableauOptions opt) : opt_(opt) {
        roles_.build(kb);
        for (const auto& ax : kb.tbox)
            for (const auto& [sub, sup] : axiom_to_gcis(ax))
                universals_.push_back(nnf(disj_or_single(nnf(negation(sub)), nnf(sup))));
    }

    TableauGraph fresh_graph() const {
        TableauGraph g;
        g.roles = &roles_;
        g.universals = &universals_;
        g.node_cap = opt_.node_cap;
        return g;
    }

    // Loads the ABox into a graph: one named node per individual, asserted
    // labels in NNF, role edges and attribute values.
    TableauGraph graph_from_abox(const KnowledgeBase& kb) const {
        TableauGraph g = fresh_graph();
        for (const auto& ind : kb.individuals_in_order()) g.named_node(ind);
        for (const auto& a : kb.abox) {
            switch (a.kind) {
                case AssertionKind::Concept:
                    g.add_concept(g.named_node(a.individual), nnf(a.concept_expr));
                    break;
                case AssertionKind::Role:
                    g.add_edge(g.named_node(a.individual), g.named_node(a.object), a.role);
                    break;
                case AssertionKind::Data:
                    g.set_value(g.named_node(a.individual), a.role, a.value);
                    break;
            }
        }
        return g;
    }

    // Expands g to completion. True means an open, fully expanded branch
    // exists (satisfiable / consistent).
    bool expand(TableauGraph g) const { return expand_inner(g); }

private:
    static ConceptPtr disj_or_single(ConceptPtr a, ConceptPtr b) {
        return disj({std::move(a), std::move(b)});
    }

    bool expand_inner(TableauGraph& g) const {
        while (true) {
            if (g.clashed) return false;
            bool changed = saturate(g);
            if (g.clashed) return false;
            if (changed) continue;

            BranchPoint bp = find_branch(g);
            if (bp.kind == BranchPoint::Kind::None) return true; // open and complete

            if (bp.kind == BranchPoint::Kind::Or) {
                for (const auto& alt : bp.expr->args) {
                    TableauGraph copy = g;
                    copy.add_concept(bp.node, alt);
                    if (expand_inner(copy)) return true;
                }
                return false;
            }
            // OneOf with several candidates: try merging into each in turn.
            for (const auto& ind : bp.expr->individuals) {
                TableauGraph copy = g;
                copy.merge(bp.node, copy.named_node(ind));
                if (expand_inner(copy)) return true;
            }
            return false;
        }
    }

    // Applies all deterministic rules once over the graph; returns whether
    // anything changed. Scan order (node id, label index) is fixed, which
    // keeps runs reproducible.
    bool saturate(TableauGraph& g) const {
        bool changed = false;
        for (std::size_t id = 0; id < g.nodes.size() && !g.clashed; ++id) {
            if (g.nodes[id].merged_into >= 0) continue;
            for (std::size_t i = 0; i < g.nodes[id].label.size() && !g.clashed; ++i) {
                const ConceptPtr c = g.nodes[id].label[i]; // copy: label may grow
                const int x = static_cast<int>(id);
                switch (c->kind) {
                    case ConceptKind::And:
                        for (const auto& part : c->args)
                            changed |= g.add_concept(x, part);
                        break;
                    case ConceptKind::Exists: {
                        // Generate successors only once every nondeterministic
                        // choice on this node is resolved; otherwise the label
                        // is still growing and ancestor blocking cannot see
                        // the node's final shape, which breaks termination.
                        if (has_pending_choice(g, x)) break;
                        if (g.blocked(x)) break;
                        bool satisfied = false;
                        const std::string filler_key = to_string(c->args[0]);
                        for (int y : g.neighbors_via(x, c->name))
                            if (g.nodes[g.resolve(y)].keys.count(filler_key)) {
                                satisfied = true;
                                break;
                            }
                        if (!satisfied) {
                            int y = g.make_node(false, "", x);
                            g.add_edge(x, y, c->name);
                            g.add_concept(y, c->args[0]);
                            changed = true;
                        }
                        break;
                    }
                    case ConceptKind::ForAll:
                        for (int y : g.neighbors_via(x, c->name))
                            changed |= g.add_concept(y, c->args[0]);
                        break;
                    case ConceptKind::OneOf:
                        if (c->individuals.size() == 1) {
                            int target = g.named_node(c->individuals[0]);
                            if (g.resolve(x) != target) {
                                g.merge(x, target);
                                changed = true;
                            }
                        }
                        break;
                    default:
                        break;
                }
                if (g.nodes[id].merged_into >= 0) break; // node moved; revisit via target
            }
        }
        return changed;
    }

    // First unresolved nondeterministic label entry on node id, if any.
    BranchPoint pending_choice(const TableauGraph& g, int id) const {
        const TableauNode& n = g.nodes[id];
        for (const auto& c : n.label) {
            if (c->kind == ConceptKind::Or) {
                bool satisfied = false;
                for (const auto& alt : c->args)
                    if (n.keys.count(to_string(alt))) {
                        satisfied = true;
                        break;
                    }
                if (!satisfied) return BranchPoint{id, BranchPoint::Kind::Or, c};
            } else if (c->kind == ConceptKind::OneOf && c->individuals.size() > 1) {
                bool satisfied = false;
                for (const auto& ind : c->individuals) {
                    auto it = g.named_ids.find(ind);
                    if (it != g.named_ids.end() && g.resolve(it->second) == id) {
                        satisfied = true;
                        break;
                    }
                }
                if (!satisfied) return BranchPoint{id, BranchPoint::Kind::OneOf, c};
            }
        }
        return {};
    }

    bool has_pending_choice(const TableauGraph& g, int id) const {
        return pending_choice(g, id).kind != BranchPoint::Kind::None;
    }

    BranchPoint find_branch(const TableauGraph& g) const {
        for (std::size_t id = 0; id < g.nodes.size(); ++id) {
            if (g.nodes[id].merged_into >= 0) continue;
            BranchPoint bp = pending_choice(g, static_cast<int>(id));
            if (bp.kind != BranchPoint::Kind::None) return bp;
        }
        return {};
    }

    TableauOptions opt_;
    RoleTable roles_;
    std::vector<ConceptPtr> universals_;
};

} // namespace detail

// ---------------------------------------------------------------------------
// Public reasoning interface
// ---------------------------------------------------------------------------

// Concept satisfiability with respect to the TBox and RBox of kb.
inline bool is_satisfiable(const KnowledgeBase& kb, const ConceptPtr& c,
                           TableauOptions opt = {}) {
    detail::TableauSolver solver(kb, opt);
    detail::TableauGraph g = solver.fresh_graph();
    g.add_concept(g.make_node(false, "", -1), nnf(c));
    return solver.expand(std::move(g));
}

// A KB is coherent when every named concept is satisfiable. Returns the
// sorted list of unsatisfiable concept names alongside the flag.
inline std::pair<bool, std::vector<std::string>> is_coherent(const KnowledgeBase& kb,
                                                             TableauOptions opt = {}) {
    detail::TableauSolver solver(kb, opt);
    std::vector<std::string> unsat;
    for (const auto& name : kb.concept_names()) {
        detail::TableauGraph g = solver.fresh_graph();
        g.add_concept(g.make_node(false, "", -1), nnf(atom(name)));
        if (!solver.expand(std::move(g))) unsat.push_back(name);
    }
    return {unsat.empty(), unsat};
}

// ABox + TBox consistency.
inline bool is_consistent(const KnowledgeBase& kb, TableauOptions opt = {}) {
    detail::TableauSolver solver(kb, opt);
    detail::TableauGraph g = solver.graph_from_abox(kb);
    // Interpretations have nonempty domains, so a KB without individuals is
    // still inconsistent when its TBox admits no element at all. Seed one
    // anonymous element so the internalized axioms get exercised.
    if (g.nodes.empty()) g.add_concept(g.make_node(false, "", -1), top());
    return solver.expand(std::move(g));
}

// sup subsumes sub iff sub ⊓ ¬sup is unsatisfiable.
inline bool subsumes(const KnowledgeBase& kb, const ConceptPtr& sup, const ConceptPtr& sub,
                     TableauOptions opt = {}) {
    return !is_satisfiable(kb, conj({sub, negation(sup)}), opt);
}

// Entailed instance check: kb ∪ {ind : ¬c} inconsistent.
inline bool instance_of(const KnowledgeBase& kb, const std::string& ind, const ConceptPtr& c,
                        TableauOptions opt = {}) {
    if (!kb.mentions_individual(ind))
        throw UnknownIndividualError("individual " + ind + " does not occur in the ABox");
    KnowledgeBase probe = kb;
    probe.add_assertion(concept_assertion(ind, negation(c)));
    return !is_consistent(probe, opt);
}

} // namespace mythos
