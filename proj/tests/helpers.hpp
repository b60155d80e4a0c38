#pragma once

// Shared test utilities: fixture loading, structural equality over parsed
// documents, a deterministic random generator for concepts/KBs/
// interpretations, and a popen wrapper for driving the CLI binary.

#include "mythos/mythos.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <tuple>
#include <vector>

namespace th {

inline std::string data_path(const std::string& rel) {
    return std::string(MYTHOS_DATA_DIR) + "/" + rel;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline mythos::KnowledgeBase load_kb(const std::string& rel,
                                     mythos::Source src = mythos::Source::Background) {
    return mythos::krss::parse_kb(slurp(data_path(rel)), src);
}

inline mythos::krss::Document load_doc(const std::string& rel,
                                       mythos::Source src = mythos::Source::Background) {
    return mythos::krss::parse_document(slurp(data_path(rel)), src);
}

// ---------------------------------------------------------------------------
// Structural equality (ignores provenance and source spans)
// ---------------------------------------------------------------------------

// Role structure only; the `declared` flag is a serialization detail and an
// auto-declared inverse partner legitimately becomes declared when reread.
inline bool same_rbox(const mythos::KnowledgeBase& a, const mythos::KnowledgeBase& b) {
    auto shape = [](const mythos::KnowledgeBase& kb) {
        std::vector<std::tuple<std::string, std::set<std::string>, std::string>> out;
        for (const auto& r : kb.rbox)
            out.emplace_back(r.name, r.parents, r.inverse_of.value_or(""));
        std::sort(out.begin(), out.end());
        return out;
    };
    return shape(a) == shape(b);
}

inline bool same_kb(const mythos::KnowledgeBase& a, const mythos::KnowledgeBase& b) {
    if (a.tbox.size() != b.tbox.size() || a.abox.size() != b.abox.size()) return false;
    for (std::size_t i = 0; i < a.tbox.size(); ++i)
        if (!mythos::same_axiom(a.tbox[i], b.tbox[i])) return false;
    for (std::size_t i = 0; i < a.abox.size(); ++i)
        if (!mythos::same_assertion(a.abox[i], b.abox[i])) return false;
    return same_rbox(a, b);
}

inline bool same_rule_term(const mythos::RuleTerm& a, const mythos::RuleTerm& b) {
    return a.is_variable == b.is_variable && a.name == b.name;
}

inline bool same_rule_atom(const mythos::RuleAtom& a, const mythos::RuleAtom& b) {
    return a.kind == b.kind && a.predicate == b.predicate &&
           same_rule_term(a.subject, b.subject) &&
           (a.kind == mythos::RuleAtom::Kind::Concept || same_rule_term(a.object, b.object));
}

inline bool same_rules(const std::vector<mythos::Rule>& a, const std::vector<mythos::Rule>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].name != b[i].name || a[i].body.size() != b[i].body.size()) return false;
        if (!same_rule_atom(a[i].head, b[i].head)) return false;
        for (std::size_t k = 0; k < a[i].body.size(); ++k)
            if (!same_rule_atom(a[i].body[k], b[i].body[k])) return false;
    }
    return true;
}

inline bool same_document(const mythos::krss::Document& a, const mythos::krss::Document& b) {
    return same_kb(a.kb, b.kb) && same_rules(a.rules, b.rules);
}

// ---------------------------------------------------------------------------
// Deterministic random structures
// ---------------------------------------------------------------------------

struct Gen {
    std::mt19937 rng;
    explicit Gen(unsigned seed) : rng(seed) {}
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
    bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }
};

inline const std::vector<std::string>& gen_concepts() {
    static const std::vector<std::string> v = {"A", "B", "C", "D"};
    return v;
}
inline const std::vector<std::string>& gen_roles() {
    static const std::vector<std::string> v = {"r", "s"};
    return v;
}
inline const std::vector<std::string>& gen_individuals() {
    static const std::vector<std::string> v = {"a", "b", "c"};
    return v;
}

// Random concept over the fixed vocabulary; no nominals or facets, so both
// the tableau and the finite-model oracle apply.
inline mythos::ConceptPtr random_concept(Gen& g, int depth) {
    using namespace mythos;
    if (depth <= 0 || g.chance(0.35)) {
        int k = g.pick(6);
        if (k < 4) return atom(gen_concepts()[k]);
        return k == 4 ? top() : bottom();
    }
    switch (g.pick(5)) {
        case 0: return negation(random_concept(g, depth - 1));
        case 1: return conj({random_concept(g, depth - 1), random_concept(g, depth - 1)});
        case 2: return disj({random_concept(g, depth - 1), random_concept(g, depth - 1)});
        case 3: return some(gen_roles()[g.pick(2)], random_concept(g, depth - 1));
        default: return all(gen_roles()[g.pick(2)], random_concept(g, depth - 1));
    }
}

// Small KB: at most 3 axioms and 3 assertions over 4 concept names, 2 roles,
// and up to 3 individuals.
inline mythos::KnowledgeBase random_kb(Gen& g) {
    using namespace mythos;
    KnowledgeBase kb;
    int n_ax = g.pick(4);
    for (int i = 0; i < n_ax; ++i) {
        switch (g.pick(4)) {
            case 0:
            case 1: kb.add_axiom(gci(random_concept(g, 1), random_concept(g, 1))); break;
            case 2:
                kb.add_axiom(equiv(atom(gen_concepts()[g.pick(4)]), random_concept(g, 1)));
                break;
            default:
                kb.add_axiom(disjoint(atom(gen_concepts()[g.pick(4)]),
                                      atom(gen_concepts()[g.pick(4)])));
                break;
        }
    }
    int n_inds = 1 + g.pick(3);
    int n_as = g.pick(4);
    for (int i = 0; i < n_as; ++i) {
        if (g.chance(0.5))
            kb.add_assertion(concept_assertion(gen_individuals()[g.pick(n_inds)],
                                               random_concept(g, 1)));
        else
            kb.add_assertion(role_assertion(gen_individuals()[g.pick(n_inds)],
                                            gen_roles()[g.pick(2)],
                                            gen_individuals()[g.pick(n_inds)]));
    }
    return kb;
}

inline mythos::Interpretation random_interpretation(Gen& g, int domain) {
    mythos::Interpretation I;
    I.domain_size = domain;
    for (const auto& name : gen_concepts())
        for (int x = 0; x < domain; ++x)
            if (g.chance(0.5)) I.concepts[name].insert(x);
    for (const auto& role : gen_roles())
        for (int x = 0; x < domain; ++x)
            for (int y = 0; y < domain; ++y)
                if (g.chance(0.4)) I.roles[role].insert({x, y});
    for (const auto& ind : gen_individuals()) I.individuals[ind] = g.pick(domain);
    return I;
}

// ---------------------------------------------------------------------------
// CLI driver
// ---------------------------------------------------------------------------

#ifdef MYTHOS_CLI_PATH
struct CliResult {
    int status = -1;
    std::string out;
};

inline CliResult run_cli(const std::string& args, bool keep_stderr = false) {
    std::string cmd = std::string(MYTHOS_CLI_PATH) + " " + args +
                      (keep_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    CliResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}
#endif

} // namespace th
