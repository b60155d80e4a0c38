#pragma once

// Structural detection of three ontology anti-pattern shapes, independent of
// the tableau. Matching runs over asserted axioms after Equivalent/Disjoint
// normalization; it does not chase the subsumption closure (a match through
// an intermediate concept would just duplicate what the reasoner finds).
//
// Shapes, with participant slots:
//   OIL (Onlyness Is Loneliness):   A ⊑ ∀r.B,  A ⊑ ∀r.C,  B,C disjoint.
//     A modeling smell: A stays satisfiable unless something forces an
//     r-edge out of it.
//   UE (Universal Existence):       A ⊑ ∀r.C,  A ⊑ ∃r.B,  B,C disjoint.
//     Always makes A unsatisfiable.
//   DISJOINT_SUBSUMPTION:           A ⊑ B,  A ⊑ ¬B.
//
// Disjointness of the filler slots is accepted in either syntactic form —
// a DISJOINT axiom or a GCI with a negated atom — and either orientation.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mythos/model.hpp"

namespace mythos {

enum class PatternId { DisjointSubsumption, Oil, Ue };

inline const char* pattern_name(PatternId p) {
    switch (p) {
        case PatternId::DisjointSubsumption: return "DISJOINT_SUBSUMPTION";
        case PatternId::Oil: return "OIL";
        case PatternId::Ue: return "UE";
    }
    return "?";
}

// UE and DISJOINT_SUBSUMPTION force their A-slot concept to be empty; OIL on
// its own does not (a model with no r-edges out of A satisfies all three
// axioms), so it is flagged as a smell rather than a defect.
inline const char* pattern_severity(PatternId p) {
    return p == PatternId::Oil ? "modeling-smell" : "unsatisfiable-concept";
}

struct PatternMatch {
    PatternId pattern_id;
    std::map<std::string, std::string> participants; // slot -> concept/role name
    std::vector<Axiom> axioms;                       // as asserted in the KB
};

namespace detail {

// A GCI view of one asserted axiom (Equivalent contributes both directions,
// Disjoint contributes L ⊑ ¬R), remembering which axiom it came from.
struct GciView {
    ConceptPtr left;
    ConceptPtr right;
    std::size_t origin; // index into kb.tbox
};

inline bool is_atom(const ConceptPtr& c) { return c->kind == ConceptKind::Atom; }

inline bool is_negated_atom(const ConceptPtr& c) {
    return c->kind == ConceptKind::Not && is_atom(c->args[0]);
}

} // namespace detail

inline std::vector<PatternMatch> detect_antipatterns(const KnowledgeBase& kb) {
    using detail::GciView;

    std::vector<GciView> gcis;
    // Disjoint pair (unordered) -> index of the first axiom asserting it.
    std::map<std::pair<std::string, std::string>, std::size_t> disjoint;

    auto note_disjoint = [&](const std::string& a, const std::string& b, std::size_t origin) {
        auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        disjoint.emplace(key, origin);
    };

    for (std::size_t i = 0; i < kb.tbox.size(); ++i)
        for (const auto& [l, r] : axiom_to_gcis(kb.tbox[i])) gcis.push_back({l, r, i});
    // Disjoint axioms already arrive here as L ⊑ ¬R.
    for (const auto& g : gcis)
        if (detail::is_atom(g.left) && detail::is_negated_atom(g.right))
            note_disjoint(g.left->name, g.right->args[0]->name, g.origin);

    auto are_disjoint = [&](const std::string& a, const std::string& b) -> const std::size_t* {
        auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        auto it = disjoint.find(key);
        return it == disjoint.end() ? nullptr : &it->second;
    };

    std::vector<PatternMatch> out;
    auto add = [&](PatternId id, std::map<std::string, std::string> slots,
                   std::initializer_list<std::size_t> origins) {
        PatternMatch m{id, std::move(slots), {}};
        std::set<std::size_t> seen;
        for (std::size_t o : origins)
            if (seen.insert(o).second) m.axioms.push_back(kb.tbox[o]);
        out.push_back(std::move(m));
    };

    // Restriction GCIs with atomic subject and atomic filler, in assertion
    // order; the earlier ∀ axiom fills slot B of an OIL match.
    struct Restriction {
        std::size_t gci;
        bool universal;
        std::string subject, role, filler;
    };
    std::vector<Restriction> rs;
    for (std::size_t i = 0; i < gcis.size(); ++i) {
        const auto& g = gcis[i];
        if (!detail::is_atom(g.left)) continue;
        if ((g.right->kind == ConceptKind::ForAll || g.right->kind == ConceptKind::Exists) &&
            detail::is_atom(g.right->args[0]))
            rs.push_back({i, g.right->kind == ConceptKind::ForAll, g.left->name, g.right->name,
                          g.right->args[0]->name});
    }

    for (std::size_t i = 0; i < rs.size(); ++i) {
        for (std::size_t j = 0; j < rs.size(); ++j) {
            if (i == j) continue;
            const auto& x = rs[i];
            const auto& y = rs[j];
            if (x.subject != y.subject || x.role != y.role) continue;
            if (x.universal && y.universal) {
                if (j < i) continue; // unordered pair, report once
                if (const std::size_t* d = are_disjoint(x.filler, y.filler))
                    add(PatternId::Oil,
                        {{"A", x.subject}, {"r", x.role}, {"B", x.filler}, {"C", y.filler}},
                        {gcis[x.gci].origin, gcis[y.gci].origin, *d});
            } else if (x.universal && !y.universal) {
                if (const std::size_t* d = are_disjoint(y.filler, x.filler))
                    add(PatternId::Ue,
                        {{"A", x.subject}, {"r", x.role}, {"B", y.filler}, {"C", x.filler}},
                        {gcis[x.gci].origin, gcis[y.gci].origin, *d});
            }
        }
    }

    // A ⊑ B together with A ⊑ ¬B.
    std::set<std::pair<std::string, std::string>> ds_seen;
    for (const auto& g : gcis) {
        if (!detail::is_atom(g.left) || !detail::is_atom(g.right)) continue;
        for (const auto& h : gcis) {
            if (!detail::is_atom(h.left) || !detail::is_negated_atom(h.right)) continue;
            if (h.left->name != g.left->name || h.right->args[0]->name != g.right->name) continue;
            if (!ds_seen.insert({g.left->name, g.right->name}).second) continue;
            add(PatternId::DisjointSubsumption, {{"A", g.left->name}, {"B", g.right->name}},
                {g.origin, h.origin});
        }
    }

    std::stable_sort(out.begin(), out.end(), [](const PatternMatch& a, const PatternMatch& b) {
        auto key = [](const PatternMatch& m) {
            auto slot = [&](const char* s) {
                auto it = m.participants.find(s);
                return it == m.participants.end() ? std::string() : it->second;
            };
            return std::make_tuple(std::string(pattern_name(m.pattern_id)), slot("A"), slot("r"),
                                   slot("B"), slot("C"));
        };
        return key(a) < key(b);
    });
    return out;
}

} // namespace mythos
