#pragma once

// Finite interpretations with the textbook semantics, plus a brute-force
// model-search oracle. The oracle evaluates concepts directly over candidate
// interpretations and shares no code with the tableau, so the two can be
// checked against each other.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mythos/model.hpp"

namespace mythos {

// A finite interpretation over domain {0, ..., domain_size-1}.
struct Interpretation {
    int domain_size = 0;
    std::map<std::string, std::set<int>> concepts;
    std::map<std::string, std::set<std::pair<int, int>>> roles;
    std::map<std::string, int> individuals;
    std::map<std::pair<int, std::string>, long long> attr_values; // (element, attribute)

    bool in_concept(const std::string& name, int x) const {
        auto it = concepts.find(name);
        return it != concepts.end() && it->second.count(x) > 0;
    }
    bool in_role(const std::string& name, int x, int y) const {
        auto it = roles.find(name);
        return it != roles.end() && it->second.count({x, y}) > 0;
    }
};

// Does element x belong to the extension of c under I?
inline bool concept_holds(const Interpretation& I, const ConceptPtr& c, int x) {
    switch (c->kind) {
        case ConceptKind::Atom: return I.in_concept(c->name, x);
        case ConceptKind::Top: return true;
        case ConceptKind::Bottom: return false;
        case ConceptKind::Not: return !concept_holds(I, c->args[0], x);
        case ConceptKind::And:
            for (const auto& a : c->args)
                if (!concept_holds(I, a, x)) return false;
            return true;
        case ConceptKind::Or:
            for (const auto& a : c->args)
                if (concept_holds(I, a, x)) return true;
            return false;
        case ConceptKind::Exists:
            for (int y = 0; y < I.domain_size; ++y)
                if (I.in_role(c->name, x, y) && concept_holds(I, c->args[0], y)) return true;
            return false;
        case ConceptKind::ForAll:
            for (int y = 0; y < I.domain_size; ++y)
                if (I.in_role(c->name, x, y) && !concept_holds(I, c->args[0], y)) return false;
            return true;
        case ConceptKind::OneOf:
            for (const auto& ind : c->individuals) {
                auto it = I.individuals.find(ind);
                if (it != I.individuals.end() && it->second == x) return true;
            }
            return false;
        case ConceptKind::Facet: {
            auto it = I.attr_values.find({x, c->name});
            return it != I.attr_values.end() && facet_op_holds(c->op, it->second, c->bound);
        }
    }
    return false;
}

// Checks whether I is a model of kb. Returns the first violated condition as
// text, or nullopt when I is a model.
inline std::optional<std::string> check_model(const Interpretation& I, const KnowledgeBase& kb) {
    for (const auto& ind : kb.individuals_in_order())
        if (!I.individuals.count(ind)) return "individual " + ind + " has no image";
    for (const auto& a : kb.abox) {
        int x = I.individuals.at(a.individual);
        switch (a.kind) {
            case AssertionKind::Concept:
                if (!concept_holds(I, a.concept_expr, x))
                    return a.individual + " fails " + to_string(a.concept_expr);
                break;
            case AssertionKind::Role:
                if (!I.in_role(a.role, x, I.individuals.at(a.object)))
                    return "missing " + a.role + "(" + a.individual + ", " + a.object + ")";
                break;
            case AssertionKind::Data: {
                auto it = I.attr_values.find({x, a.role});
                if (it == I.attr_values.end() || it->second != a.value)
                    return a.individual + " lacks " + a.role + " = " + std::to_string(a.value);
                break;
            }
        }
    }
    for (const auto& ax : kb.tbox)
        for (const auto& [sub, sup] : axiom_to_gcis(ax))
            for (int x = 0; x < I.domain_size; ++x)
                if (concept_holds(I, sub, x) && !concept_holds(I, sup, x))
                    return "element " + std::to_string(x) + " violates " + to_string(sub) +
                           " => " + to_string(sup);
    for (const auto& r : kb.rbox) {
        if (!r.parents.empty()) {
            auto it = I.roles.find(r.name);
            if (it != I.roles.end())
                for (const auto& parent : r.parents)
                    for (const auto& pr : it->second)
                        if (!I.in_role(parent, pr.first, pr.second))
                            return r.name + " not contained in parent " + parent;
        }
        if (r.inverse_of) {
            const auto& fwd = I.roles.count(r.name) ? I.roles.at(r.name)
                                                    : std::set<std::pair<int, int>>{};
            const auto& bwd = I.roles.count(*r.inverse_of) ? I.roles.at(*r.inverse_of)
                                                           : std::set<std::pair<int, int>>{};
            for (const auto& pr : fwd)
                if (!bwd.count({pr.second, pr.first}))
                    return r.name + " and " + *r.inverse_of + " are not inverse";
            for (const auto& pr : bwd)
                if (!fwd.count({pr.second, pr.first}))
                    return r.name + " and " + *r.inverse_of + " are not inverse";
        }
    }
    return std::nullopt;
}

struct OracleResult {
    // true: model found; false: exhaustively refuted; nullopt: gave up.
    std::optional<bool> verdict;
    std::optional<Interpretation> witness;
    bool budget_exhausted = false;
};

namespace detail {

inline void collect_facets(const ConceptPtr& c, std::map<std::string, std::set<long long>>& out) {
    if (c->kind == ConceptKind::Facet) out[c->name].insert(c->bound);
    for (const auto& a : c->args) collect_facets(a, out);
}

inline bool contains_exists(const ConceptPtr& c) {
    if (c->kind == ConceptKind::Exists) return true;
    for (const auto& a : c->args)
        if (contains_exists(a)) return true;
    return false;
}

// NNF of every statement-level concept in the KB.
inline std::vector<ConceptPtr> nnf_closure(const KnowledgeBase& kb) {
    std::vector<ConceptPtr> out;
    for (const auto& ax : kb.tbox)
        for (const auto& [sub, sup] : axiom_to_gcis(ax)) {
            out.push_back(nnf(negation(sub)));
            out.push_back(nnf(sup));
        }
    for (const auto& a : kb.abox)
        if (a.kind == AssertionKind::Concept) out.push_back(nnf(a.concept_expr));
    return out;
}

// Transitive closure over role parents plus declared-inverse swaps, starting
// from the asserted edges. This is the least role structure any model must
// contain.
inline std::map<std::string, std::set<std::pair<int, int>>>
closed_role_edges(const KnowledgeBase& kb, const std::map<std::string, int>& ind_map) {
    std::map<std::string, std::set<std::pair<int, int>>> edges;
    for (const auto& a : kb.abox)
        if (a.kind == AssertionKind::Role)
            edges[a.role].insert({ind_map.at(a.individual), ind_map.at(a.object)});
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : kb.rbox) {
            auto it = edges.find(r.name);
            if (it == edges.end()) continue;
            for (const auto& parent : r.parents)
                for (const auto& pr : it->second)
                    if (edges[parent].insert(pr).second) changed = true;
            if (r.inverse_of) {
                auto pairs = it->second; // copy: inserting may invalidate
                for (const auto& pr : pairs)
                    if (edges[*r.inverse_of].insert({pr.second, pr.first}).second) changed = true;
            }
        }
    }
    return edges;
}

} // namespace detail

// Exhaustive finite-model search up to max_domain elements.
//
// Definite "false" is only reported for KBs whose NNF closure contains no
// existential restriction: for those, any model restricted to the named
// individuals (with role extensions shrunk to the closure of the asserted
// edges) is still a model, so domains up to max(1, #individuals) are
// exhaustive. With existentials present the search can only confirm
// consistency; refutation is reported as unknown.
inline OracleResult brute_force_consistent(const KnowledgeBase& kb, int max_domain,
                                           std::uint64_t budget = 4'000'000) {
    OracleResult result;
    const auto inds = kb.individuals_in_order();
    const auto concepts = kb.concept_names();
    const auto closure = detail::nnf_closure(kb);

    bool has_exists = false;
    std::map<std::string, std::set<long long>> facet_bounds;
    for (const auto& c : closure) {
        has_exists = has_exists || detail::contains_exists(c);
        detail::collect_facets(c, facet_bounds);
    }

    // Attributes and the candidate values worth trying for elements without
    // an asserted value: one representative per threshold region.
    std::map<std::string, std::vector<std::optional<long long>>> attr_candidates;
    for (const auto& [attr, bounds] : facet_bounds) {
        std::set<long long> cand;
        for (long long b : bounds) {
            cand.insert(b - 1);
            cand.insert(b);
            cand.insert(b + 1);
        }
        auto& v = attr_candidates[attr];
        v.push_back(std::nullopt); // "no value"
        for (long long c : cand) v.push_back(c);
    }
    std::map<std::pair<std::string, std::string>, long long> asserted; // (ind, attr) -> value
    for (const auto& a : kb.abox)
        if (a.kind == AssertionKind::Data) {
            asserted[{a.individual, a.role}] = a.value;
            if (!attr_candidates.count(a.role))
                attr_candidates[a.role] = {std::nullopt}; // attr only used in assertions
        }

    // Roles to enumerate freely in search mode. A declared inverse pair is a
    // single degree of freedom; keep the lexicographically smaller name.
    std::vector<std::string> free_roles;
    for (const auto& r : kb.rbox) {
        if (r.inverse_of && *r.inverse_of < r.name) continue;
        free_roles.push_back(r.name);
    }

    const int needed = std::max<int>(1, static_cast<int>(inds.size()));
    const bool definite_possible = !has_exists && needed <= max_domain;
    const int max_k = definite_possible ? needed : max_domain;

    std::uint64_t used = 0;

    for (int k = 1; k <= max_k; ++k) {
        // Enumerate individual images: odometer over k^|inds|.
        std::vector<int> ind_digits(inds.size(), 0);
        bool ind_done = false;
        while (!ind_done) {
            std::map<std::string, int> ind_map;
            for (std::size_t i = 0; i < inds.size(); ++i) ind_map[inds[i]] = ind_digits[i];

            // Asserted data values, rejecting merges that collide.
            bool data_ok = true;
            std::map<std::pair<int, std::string>, long long> fixed_values;
            for (const auto& [key, value] : asserted) {
                auto cell = std::make_pair(ind_map[key.first], key.second);
                auto it = fixed_values.find(cell);
                if (it != fixed_values.end() && it->second != value) {
                    data_ok = false;
                    break;
                }
                fixed_values[cell] = value;
            }

            if (data_ok) {
                // Free (element, attribute) cells get candidate values.
                std::vector<std::pair<int, std::string>> free_cells;
                std::vector<const std::vector<std::optional<long long>>*> cell_options;
                for (const auto& [attr, options] : attr_candidates)
                    for (int x = 0; x < k; ++x)
                        if (!fixed_values.count({x, attr})) {
                            free_cells.push_back({x, attr});
                            cell_options.push_back(&options);
                        }

                std::vector<std::size_t> value_digits(free_cells.size(), 0);
                bool values_done = false;
                while (!values_done) {
                    Interpretation base;
                    base.domain_size = k;
                    base.individuals = ind_map;
                    base.attr_values = fixed_values;
                    for (std::size_t i = 0; i < free_cells.size(); ++i) {
                        const auto& choice = (*cell_options[i])[value_digits[i]];
                        if (choice) base.attr_values[free_cells[i]] = *choice;
                    }

                    // Role structure: definite mode pins it to the least
                    // closure; search mode enumerates subsets per free role.
                    const std::uint64_t pair_bits = static_cast<std::uint64_t>(k) * k;
                    const std::uint64_t role_bit_count =
                        (!has_exists || free_roles.empty()) ? 0 : pair_bits * free_roles.size();
                    const std::uint64_t atom_bit_count =
                        static_cast<std::uint64_t>(k) * concepts.size();
                    if (role_bit_count > 40 || atom_bit_count > 40) {
                        result.budget_exhausted = true;
                        return result; // search space beyond enumeration
                    }
                    const std::uint64_t role_configs = std::uint64_t{1} << role_bit_count;

                    for (std::uint64_t rc = 0; rc < role_configs; ++rc) {
                        Interpretation I = base;
                        if (!has_exists) {
                            I.roles = detail::closed_role_edges(kb, ind_map);
                        } else {
                            std::uint64_t bits = rc;
                            for (const auto& role : free_roles) {
                                auto& ext = I.roles[role];
                                for (int x = 0; x < k; ++x)
                                    for (int y = 0; y < k; ++y) {
                                        if (bits & 1) ext.insert({x, y});
                                        bits >>= 1;
                                    }
                            }
                            for (const auto& r : kb.rbox)
                                if (r.inverse_of && *r.inverse_of < r.name)
                                    for (const auto& pr : I.roles[*r.inverse_of])
                                        I.roles[r.name].insert({pr.second, pr.first});
                        }

                        // Concept memberships: odometer over 2^(k * |concepts|).
                        const std::uint64_t atom_configs = std::uint64_t{1} << atom_bit_count;
                        for (std::uint64_t ac = 0; ac < atom_configs; ++ac) {
                            if (++used > budget) {
                                result.budget_exhausted = true;
                                return result; // verdict stays unknown
                            }
                            std::uint64_t bits = ac;
                            I.concepts.clear();
                            for (const auto& name : concepts) {
                                auto& ext = I.concepts[name];
                                ext.clear();
                                for (int x = 0; x < k; ++x) {
                                    if (bits & 1) ext.insert(x);
                                    bits >>= 1;
                                }
                            }
                            if (!check_model(I, kb)) {
                                result.verdict = true;
                                result.witness = I;
                                return result;
                            }
                        }
                    }

                    // advance value odometer
                    values_done = true;
                    for (std::size_t i = 0; i < value_digits.size(); ++i) {
                        if (++value_digits[i] < cell_options[i]->size()) {
                            values_done = false;
                            break;
                        }
                        value_digits[i] = 0;
                    }
                    if (free_cells.empty()) values_done = true;
                }
            }

            // advance individual odometer
            ind_done = true;
            for (std::size_t i = 0; i < ind_digits.size(); ++i) {
                if (++ind_digits[i] < k) {
                    ind_done = false;
                    break;
                }
                ind_digits[i] = 0;
            }
            if (inds.empty()) ind_done = true;
        }
    }

    if (definite_possible) result.verdict = false;
    return result;
}

} // namespace mythos
