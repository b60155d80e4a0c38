#pragma once

// The claim-checking procedure: merge the untrusted claim with trusted fact
// and background knowledge, apply rules, then look for trouble three ways —
// structural anti-patterns, unsatisfiable named concepts, and outright ABox
// inconsistency — and explain whatever is found. Also drives batch runs over
// a JSON corpus manifest.

#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mythos/antipatterns.hpp"
#include "mythos/errors.hpp"
#include "mythos/justify.hpp"
#include "mythos/krss.hpp"
#include "mythos/model.hpp"
#include "mythos/rules.hpp"
#include "mythos/tableau.hpp"

namespace mythos {

enum class Verdict { Consistent, Incoherent, Inconsistent, AntipatternOnly, Error };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Consistent: return "consistent";
        case Verdict::Incoherent: return "incoherent";
        case Verdict::Inconsistent: return "inconsistent";
        case Verdict::AntipatternOnly: return "antipattern-only";
        case Verdict::Error: return "error";
    }
    return "?";
}

struct ConflictReport {
    std::string myth_id;
    Verdict verdict = Verdict::Consistent;
    std::vector<std::string> unsat_concepts;
    std::vector<PatternMatch> pattern_matches;
    std::vector<Justification> justifications;
    std::string explanation;
    std::vector<std::pair<std::string, double>> timings_ms; // step -> elapsed
    std::string error_step;    // set when verdict == Error
    std::string error_message; // set when verdict == Error
};

// Union of the inputs in order. Identical names refer to the same entity on
// purpose: conflict detection needs the claim and the facts to share their
// vocabulary. Duplicate statements collapse; annotations union; inverse
// declarations must agree.
inline KnowledgeBase merge(const std::vector<KnowledgeBase>& kbs) {
    KnowledgeBase out;
    for (const auto& kb : kbs) {
        for (const auto& r : kb.rbox) {
            if (r.declared) out.ensure_role(r.name).declared = true;
            for (const auto& p : r.parents) out.add_parent(r.name, p);
            if (r.inverse_of) out.set_inverse(r.name, *r.inverse_of);
        }
        for (const auto& ax : kb.tbox) {
            bool dup = false;
            for (const auto& have : out.tbox)
                if (same_axiom(have, ax)) { dup = true; break; }
            if (!dup) out.add_axiom(ax);
        }
        for (const auto& a : kb.abox) {
            bool dup = false;
            for (const auto& have : out.abox)
                if (same_assertion(have, a)) { dup = true; break; }
            if (!dup) out.add_assertion(a);
        }
        for (const auto& an : kb.annotations) out.add_annotation(an);
    }
    return out;
}

namespace detail {

inline ConceptPtr prefix_nominals(const ConceptPtr& c, const std::string& prefix) {
    switch (c->kind) {
        case ConceptKind::OneOf: {
            std::vector<std::string> inds;
            for (const auto& i : c->individuals) inds.push_back(prefix + i);
            return one_of(std::move(inds));
        }
        case ConceptKind::Not: return negation(prefix_nominals(c->args[0], prefix));
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::vector<ConceptPtr> args;
            for (const auto& a : c->args) args.push_back(prefix_nominals(a, prefix));
            return c->kind == ConceptKind::And ? conj(std::move(args)) : disj(std::move(args));
        }
        case ConceptKind::Exists: return some(c->name, prefix_nominals(c->args[0], prefix));
        case ConceptKind::ForAll: return all(c->name, prefix_nominals(c->args[0], prefix));
        default: return c;
    }
}

} // namespace detail

// Renames every individual with a prefix, for merges that must not identify
// equally-named individuals across inputs.
inline KnowledgeBase isolate_individuals(const KnowledgeBase& kb, const std::string& prefix) {
    KnowledgeBase out;
    out.rbox = kb.rbox;
    for (Axiom ax : kb.tbox) {
        ax.left = detail::prefix_nominals(ax.left, prefix);
        ax.right = detail::prefix_nominals(ax.right, prefix);
        out.add_axiom(std::move(ax));
    }
    for (Assertion a : kb.abox) {
        a.individual = prefix + a.individual;
        if (a.kind == AssertionKind::Role) a.object = prefix + a.object;
        if (a.kind == AssertionKind::Concept)
            a.concept_expr = detail::prefix_nominals(a.concept_expr, prefix);
        out.add_assertion(std::move(a));
    }
    for (Annotation an : kb.annotations) {
        an.individual = prefix + an.individual;
        out.add_annotation(std::move(an));
    }
    return out;
}

inline ConflictReport check_claim(const KnowledgeBase& myth, const KnowledgeBase& fact,
                                  const KnowledgeBase& background,
                                  const std::vector<Rule>& rules, std::string myth_id = "",
                                  TableauOptions opt = {}) {
    ConflictReport report;
    report.myth_id = std::move(myth_id);

    using clock = std::chrono::steady_clock;
    auto timed = [&](const char* step, auto&& fn) {
        auto t0 = clock::now();
        fn();
        report.timings_ms.emplace_back(
            step, std::chrono::duration<double, std::milli>(clock::now() - t0).count());
    };

    const char* current = "merge";
    try {
        KnowledgeBase merged;
        timed("merge", [&] { merged = merge({myth, fact, background}); });

        current = "apply_rules";
        timed("apply_rules", [&] { merged = apply_rules(merged, rules); });

        current = "detect_antipatterns";
        timed("detect_antipatterns",
              [&] { report.pattern_matches = detect_antipatterns(merged); });

        current = "is_coherent";
        bool coherent = true;
        timed("is_coherent", [&] {
            auto [ok, unsat] = is_coherent(merged, opt);
            coherent = ok;
            report.unsat_concepts = std::move(unsat);
        });

        current = "is_consistent";
        bool consistent = true;
        timed("is_consistent", [&] { consistent = is_consistent(merged, opt); });

        current = "justify";
        timed("justify", [&] {
            for (const auto& name : report.unsat_concepts)
                report.justifications.push_back(justify_unsat(merged, name, opt));
            if (!consistent) report.justifications.push_back(justify_inconsistency(merged, opt));
            for (const auto& j : report.justifications) {
                if (!report.explanation.empty()) report.explanation += "\n\n";
                report.explanation += verbalize(j);
            }
        });

        if (!consistent)
            report.verdict = Verdict::Inconsistent;
        else if (!coherent)
            report.verdict = Verdict::Incoherent;
        else if (!report.pattern_matches.empty())
            report.verdict = Verdict::AntipatternOnly;
        else
            report.verdict = Verdict::Consistent;
    } catch (const ResourceLimitError& e) {
        report.verdict = Verdict::Error;
        report.error_step = current;
        report.error_message = e.what();
    }
    return report;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

using json = nlohmann::ordered_json;

inline json pattern_match_to_json(const PatternMatch& m) {
    json j;
    j["pattern"] = pattern_name(m.pattern_id);
    j["severity"] = pattern_severity(m.pattern_id);
    j["participants"] = json::object();
    for (const auto& [slot, name] : m.participants) j["participants"][slot] = name;
    j["axioms"] = json::array();
    for (const auto& ax : m.axioms) j["axioms"].push_back(krss::serialize_axiom(ax));
    return j;
}

inline json justification_to_json(const Justification& jf) {
    json j;
    j["kind"] = jf.kind == JustificationKind::UnsatConcept ? "unsat-concept"
                                                           : "abox-inconsistency";
    if (jf.kind == JustificationKind::UnsatConcept) j["concept"] = jf.concept_name;
    j["axioms"] = json::array();
    for (const auto& ax : jf.axioms) j["axioms"].push_back(krss::serialize_axiom(ax));
    j["assertions"] = json::array();
    for (const auto& a : jf.assertions) j["assertions"].push_back(krss::serialize_assertion(a));
    return j;
}

// Timings are opt-in: they vary run to run, and the default output is meant
// to be byte-identical for identical inputs.
inline json report_to_json(const ConflictReport& r, bool include_timings = false) {
    json j;
    j["myth_id"] = r.myth_id;
    j["verdict"] = verdict_name(r.verdict);
    if (r.verdict == Verdict::Error) {
        j["error"] = {{"step", r.error_step}, {"message", r.error_message}};
        return j;
    }
    j["unsat_concepts"] = r.unsat_concepts;
    j["pattern_matches"] = json::array();
    for (const auto& m : r.pattern_matches) j["pattern_matches"].push_back(pattern_match_to_json(m));
    j["justifications"] = json::array();
    for (const auto& jf : r.justifications) j["justifications"].push_back(justification_to_json(jf));
    j["explanation"] = r.explanation;
    if (include_timings) {
        j["timings_ms"] = json::object();
        for (const auto& [step, ms] : r.timings_ms) j["timings_ms"][step] = ms;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Corpus runs
// ---------------------------------------------------------------------------

struct CorpusEntry {
    std::string myth_id;
    std::string myth_text;
    std::string fact_text;
    std::string myth_kb_path; // empty when the row is text-only
    std::string fact_kb_path;
    std::string background_kb_path;
    std::string rules_path;
    std::optional<std::string> expected_verdict;
};

struct CorpusResult {
    std::vector<ConflictReport> reports;
    std::map<std::string, int> verdict_counts;
    std::vector<std::string> mismatches; // "<id>: expected X, got Y"
};

namespace detail {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string resolve_path(const std::string& base_dir, const std::string& path) {
    if (path.empty() || path.front() == '/' || base_dir.empty()) return path;
    return base_dir + "/" + path;
}

} // namespace detail

inline std::vector<CorpusEntry> parse_manifest(const std::string& text) {
    json doc = json::parse(text);
    if (!doc.is_array()) throw Error("corpus manifest must be a JSON array");
    std::vector<CorpusEntry> out;
    for (const auto& item : doc) {
        CorpusEntry e;
        e.myth_id = item.value("myth_id", "");
        e.myth_text = item.value("myth_text", "");
        e.fact_text = item.value("fact_text", "");
        e.myth_kb_path = item.value("myth_kb_path", "");
        e.fact_kb_path = item.value("fact_kb_path", "");
        e.background_kb_path = item.value("background_kb_path", "");
        e.rules_path = item.value("rules_path", "");
        if (item.contains("expected_verdict"))
            e.expected_verdict = item["expected_verdict"].get<std::string>();
        out.push_back(std::move(e));
    }
    return out;
}

// One report per entry, in manifest order. Per-entry failures (missing file,
// parse error, data-value conflict) become error reports; the batch finishes.
// Relative paths resolve against the manifest's directory.
inline CorpusResult run_corpus(const std::string& manifest_path, TableauOptions opt = {}) {
    std::string base_dir;
    if (std::size_t cut = manifest_path.find_last_of('/'); cut != std::string::npos)
        base_dir = manifest_path.substr(0, cut);

    CorpusResult result;
    for (const auto& e : parse_manifest(detail::slurp(manifest_path))) {
        ConflictReport report;
        report.myth_id = e.myth_id;
        if (e.myth_kb_path.empty()) {
            // Text-only row: recorded, never checked.
            report.verdict = Verdict::Error;
            report.error_step = "load";
            report.error_message = "unformalized: no myth knowledge base";
            result.verdict_counts["unformalized"]++;
            result.reports.push_back(std::move(report));
            continue;
        }
        try {
            auto load = [&](const std::string& path, Source src) {
                return krss::parse_document(detail::slurp(detail::resolve_path(base_dir, path)),
                                            src);
            };
            krss::Document myth = load(e.myth_kb_path, Source::Myth);
            krss::Document fact;
            krss::Document background;
            krss::Document extra_rules;
            if (!e.fact_kb_path.empty()) fact = load(e.fact_kb_path, Source::Fact);
            if (!e.background_kb_path.empty())
                background = load(e.background_kb_path, Source::Background);
            if (!e.rules_path.empty()) extra_rules = load(e.rules_path, Source::Background);

            std::vector<Rule> rules;
            for (const auto* doc : {&myth, &fact, &background, &extra_rules})
                rules.insert(rules.end(), doc->rules.begin(), doc->rules.end());

            KnowledgeBase bg = merge({background.kb, extra_rules.kb});
            report = check_claim(myth.kb, fact.kb, bg, rules, e.myth_id, opt);
        } catch (const Error& err) {
            report.verdict = Verdict::Error;
            report.error_step = "load";
            report.error_message = err.what();
        }

        result.verdict_counts[report.verdict == Verdict::Error ? "error"
                                                               : verdict_name(report.verdict)]++;
        if (e.expected_verdict && *e.expected_verdict != verdict_name(report.verdict))
            result.mismatches.push_back(e.myth_id + ": expected " + *e.expected_verdict +
                                        ", got " + verdict_name(report.verdict));
        result.reports.push_back(std::move(report));
    }
    return result;
}

// Full corpus output: every report, then a trailing summary element, so the
// whole stream is one JSON array.
inline json corpus_to_json(const CorpusResult& r, bool include_timings = false) {
    json arr = json::array();
    for (const auto& report : r.reports) arr.push_back(report_to_json(report, include_timings));
    json summary;
    summary["summary"] = json::object();
    for (const auto& [verdict, count] : r.verdict_counts) summary["summary"][verdict] = count;
    summary["mismatches"] = r.mismatches;
    arr.push_back(std::move(summary));
    return arr;
}

} // namespace mythos
