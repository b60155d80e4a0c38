// mythos: command-line front end for the claim-checking toolkit.
//
// Exit codes: 0 success / no conflict, 1 conflict (or negative query answer),
// 2 usage or input error, 3 resource limit. `corpus` instead exits with the
// number of entries whose verdict differed from the manifest's expectation.

#include "CLI11.hpp"
#include "mythos/mythos.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kConflict = 1;
constexpr int kUsage = 2;
constexpr int kLimit = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw mythos::Error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw mythos::Error("cannot write " + path);
    out << content;
}

using json = nlohmann::ordered_json;

// Shared shape for the boolean queries (sat/subsumes/coherent/consistent).
int answer(bool positive, const std::string& format, const std::string& query,
           const char* yes, const char* no, json extra = {}) {
    if (format == "json") {
        json j;
        j["query"] = query;
        j["result"] = positive ? yes : no;
        for (auto& [k, v] : extra.items()) j[k] = v;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (positive ? yes : no) << "\n";
        for (auto& [k, v] : extra.items())
            if (v.is_array() && !v.empty()) {
                std::cout << k << ":";
                for (auto& item : v) std::cout << " " << item.get<std::string>();
                std::cout << "\n";
            }
    }
    return positive ? kOk : kConflict;
}

struct CheckOpts {
    std::string myth_path;
    std::string fact_path;
    std::vector<std::string> background_paths;
    std::vector<std::string> rules_paths;
    std::string id;
    std::string format = "json";
    bool isolate = false;
    bool timings = false;
};

void print_report_text(const mythos::ConflictReport& r) {
    std::cout << "myth: " << r.myth_id << "\n";
    std::cout << "verdict: " << mythos::verdict_name(r.verdict) << "\n";
    if (r.verdict == mythos::Verdict::Error) {
        std::cout << "error in step " << r.error_step << ": " << r.error_message << "\n";
        return;
    }
    if (!r.unsat_concepts.empty()) {
        std::cout << "unsatisfiable concepts:";
        for (const auto& c : r.unsat_concepts) std::cout << " " << c;
        std::cout << "\n";
    }
    for (const auto& m : r.pattern_matches) {
        std::cout << "anti-pattern " << mythos::pattern_name(m.pattern_id) << " ["
                  << mythos::pattern_severity(m.pattern_id) << "]:";
        for (const auto& [slot, value] : m.participants)
            std::cout << " " << slot << "=" << value;
        std::cout << "\n";
    }
    if (!r.explanation.empty()) std::cout << "\n" << r.explanation << "\n";
}

int run_check(const CheckOpts& o, mythos::TableauOptions topt) {
    using namespace mythos;
    krss::Document myth = krss::parse_document(slurp(o.myth_path), Source::Myth);
    krss::Document fact;
    if (!o.fact_path.empty()) fact = krss::parse_document(slurp(o.fact_path), Source::Fact);

    std::vector<Rule> rules = myth.rules;
    rules.insert(rules.end(), fact.rules.begin(), fact.rules.end());
    std::vector<KnowledgeBase> bg_parts;
    for (const auto& paths : {&o.background_paths, &o.rules_paths})
        for (const auto& p : *paths) {
            krss::Document d = krss::parse_document(slurp(p), Source::Background);
            rules.insert(rules.end(), d.rules.begin(), d.rules.end());
            bg_parts.push_back(std::move(d.kb));
        }
    KnowledgeBase background = merge(bg_parts);

    KnowledgeBase myth_kb = o.isolate ? isolate_individuals(myth.kb, "myth_") : myth.kb;
    KnowledgeBase fact_kb = o.isolate ? isolate_individuals(fact.kb, "fact_") : fact.kb;

    std::string id = o.id;
    if (id.empty()) id = std::filesystem::path(o.myth_path).stem().string();

    ConflictReport r = check_claim(myth_kb, fact_kb, background, rules, id, topt);
    if (o.format == "json")
        std::cout << report_to_json(r, o.timings).dump(2) << "\n";
    else
        print_report_text(r);
    if (r.verdict == Verdict::Error) return kLimit;
    return r.verdict == Verdict::Consistent ? kOk : kConflict;
}

int run_antipatterns(const std::string& kb_path, const std::string& format) {
    auto kb = mythos::krss::parse_kb(slurp(kb_path));
    auto matches = mythos::detect_antipatterns(kb);
    if (format == "json") {
        json arr = json::array();
        for (const auto& m : matches) arr.push_back(mythos::pattern_match_to_json(m));
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& m : matches) {
            std::cout << mythos::pattern_name(m.pattern_id) << " ["
                      << mythos::pattern_severity(m.pattern_id) << "]:";
            for (const auto& [slot, value] : m.participants)
                std::cout << " " << slot << "=" << value;
            std::cout << "\n";
        }
        if (matches.empty()) std::cout << "no anti-patterns\n";
    }
    return matches.empty() ? kOk : kConflict;
}

int run_ingest(const std::string& nt_path, const std::string& out_path,
               const std::string& format) {
    auto result = mythos::normalize_fred(mythos::parse_ntriples_file(nt_path));
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::string krss = mythos::krss::serialize_kb(result.kb);
    if (format == "json") {
        json j;
        j["krss"] = krss;
        j["triples_total"] = result.triples_total;
        j["mapped"] = result.triples_mapped;
        j["annotated"] = result.triples_annotated;
        j["dropped"] = result.triples_dropped;
        j["warnings"] = result.warnings;
        std::cout << j.dump(2) << "\n";
    } else if (!out_path.empty()) {
        spill(out_path, krss);
    } else {
        std::cout << krss;
    }
    if (format != "json")
        std::cerr << nt_path << ": " << result.triples_total << " triples ("
                  << result.triples_mapped << " mapped, " << result.triples_annotated
                  << " annotated, " << result.triples_dropped << " dropped, "
                  << result.warnings.size() << " warned)\n";
    return kOk;
}

struct TranslateOpts {
    std::string text;
    std::string fixtures;
    std::string endpoint;
    std::string out;
    bool record = false;
};

int run_translate(const TranslateOpts& o) {
    using namespace mythos;
    if (o.record) {
        // Recording exists to create fixtures, so it always fetches live.
        if (o.endpoint.empty())
            throw Error("--record fetches live and needs --endpoint (or MYTHOS_FRED_ENDPOINT)");
        if (o.fixtures.empty()) throw Error("--record needs --fixtures DIR to store the pair in");
        Graph g = fetch_translation(o.text, TranslationSource::endpoint(o.endpoint));
        std::string stem = record_fixture(o.fixtures, o.text, g);
        std::cerr << "recorded " << stem << ".txt/.nt\n";
        std::string nt = serialize_ntriples(g);
        if (!o.out.empty())
            spill(o.out, nt);
        else
            std::cout << nt;
        return kOk;
    }
    TranslationSource src;
    if (!o.fixtures.empty())
        src = TranslationSource::fixtures(o.fixtures);
    else if (!o.endpoint.empty())
        src = TranslationSource::endpoint(o.endpoint);
    else
        throw Error("translate needs --fixtures DIR or --endpoint URL (or MYTHOS_FRED_ENDPOINT)");
    std::string nt = serialize_ntriples(fetch_translation(o.text, src));
    if (!o.out.empty())
        spill(o.out, nt);
    else
        std::cout << nt;
    return kOk;
}

int run_corpus(const std::string& manifest, bool timings, mythos::TableauOptions topt) {
    auto result = mythos::run_corpus(manifest, topt);
    std::cout << mythos::corpus_to_json(result, timings).dump(2) << "\n";
    for (const auto& m : result.mismatches) std::cerr << "mismatch: " << m << "\n";
    auto n = result.mismatches.size();
    return n > 125 ? 125 : static_cast<int>(n);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"checks untrusted claims against trusted knowledge with a description-logic tableau"};
    app.set_version_flag("--version", "mythos 0.1.0");
    app.require_subcommand(1);

    std::size_t node_cap = mythos::TableauOptions{}.node_cap;
    app.add_option("--node-cap", node_cap, "tableau node budget before aborting")
        ->capture_default_str();

    CheckOpts check;
    auto* cmd_check = app.add_subcommand(
        "check", "check a claim against facts; prints a conflict report");
    cmd_check->add_option("myth", check.myth_path, "claim KB (KRSS)")->required();
    cmd_check->add_option("fact", check.fact_path, "trusted-fact KB (KRSS)");
    cmd_check->add_option("--background", check.background_paths, "shared background KB")
        ->take_all();
    cmd_check->add_option("--rules", check.rules_paths, "Horn rule file")->take_all();
    cmd_check->add_option("--id", check.id, "claim id for the report (default: myth file stem)");
    cmd_check->add_flag("--isolate", check.isolate,
                        "prefix each input's individuals so they never denote the same thing");
    cmd_check->add_flag("--timings", check.timings, "include per-step timings in JSON output");
    cmd_check->add_option("--format", check.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    std::string sat_kb, sat_concept, sat_format = "text";
    auto* cmd_sat = app.add_subcommand("sat", "is a concept satisfiable w.r.t. a KB?");
    cmd_sat->add_option("kb", sat_kb, "KB (KRSS)")->required();
    cmd_sat->add_option("--concept", sat_concept, "concept expression (KRSS)")->required();
    cmd_sat->add_option("--format", sat_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));

    std::string sub_kb, sub_super, sub_sub, sub_format = "text";
    auto* cmd_sub = app.add_subcommand("subsumes", "does one concept subsume another?");
    cmd_sub->add_option("kb", sub_kb, "KB (KRSS)")->required();
    cmd_sub->add_option("--super", sub_super, "candidate superconcept (KRSS)")->required();
    cmd_sub->add_option("--sub", sub_sub, "candidate subconcept (KRSS)")->required();
    cmd_sub->add_option("--format", sub_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));

    std::string coh_kb, coh_format = "text";
    auto* cmd_coh = app.add_subcommand("coherent", "are all named concepts satisfiable?");
    cmd_coh->add_option("kb", coh_kb, "KB (KRSS)")->required();
    cmd_coh->add_option("--format", coh_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));

    std::string con_kb, con_format = "text";
    auto* cmd_con = app.add_subcommand("consistent", "do the assertions have a model?");
    cmd_con->add_option("kb", con_kb, "KB (KRSS)")->required();
    cmd_con->add_option("--format", con_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));

    std::string ap_kb, ap_format = "text";
    auto* cmd_ap = app.add_subcommand("antipatterns", "scan a KB for known modeling conflicts");
    cmd_ap->add_option("kb", ap_kb, "KB (KRSS)")->required();
    cmd_ap->add_option("--format", ap_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));

    std::string ing_in, ing_out, ing_format = "text";
    auto* cmd_ing = app.add_subcommand("ingest", "translate an N-Triples graph to KRSS");
    cmd_ing->add_option("triples", ing_in, "N-Triples file")->required();
    cmd_ing->add_option("--out", ing_out, "write KRSS here instead of stdout");
    cmd_ing->add_option("--format", ing_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));

    TranslateOpts tr;
    auto* cmd_tr = app.add_subcommand(
        "translate", "turn an English sentence into an N-Triples graph");
    cmd_tr->add_option("text", tr.text, "the sentence")->required();
    cmd_tr->add_option("--fixtures", tr.fixtures, "directory of recorded sentence/graph pairs");
    cmd_tr->add_option("--endpoint", tr.endpoint, "live translation service URL")
        ->envname("MYTHOS_FRED_ENDPOINT");
    cmd_tr->add_option("--out", tr.out, "write N-Triples here instead of stdout");
    cmd_tr->add_flag("--record", tr.record, "fetch live and save the pair into --fixtures");

    std::string corpus_manifest;
    bool corpus_timings = false;
    auto* cmd_corpus = app.add_subcommand(
        "corpus", "run a manifest of claims; exits with the number of verdict mismatches");
    cmd_corpus->add_option("manifest", corpus_manifest, "JSON manifest")->required();
    cmd_corpus->add_flag("--timings", corpus_timings, "include per-step timings in the output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    mythos::TableauOptions topt;
    topt.node_cap = node_cap;
    try {
        if (*cmd_check) return run_check(check, topt);
        if (*cmd_sat)
            return answer(mythos::is_satisfiable(mythos::krss::parse_kb(slurp(sat_kb)),
                                                 mythos::krss::parse_concept(sat_concept), topt),
                          sat_format, "sat", "satisfiable", "unsatisfiable");
        if (*cmd_sub)
            return answer(mythos::subsumes(mythos::krss::parse_kb(slurp(sub_kb)),
                                           mythos::krss::parse_concept(sub_super),
                                           mythos::krss::parse_concept(sub_sub), topt),
                          sub_format, "subsumes", "subsumes", "does-not-subsume");
        if (*cmd_coh) {
            auto [ok, unsat] = mythos::is_coherent(mythos::krss::parse_kb(slurp(coh_kb)), topt);
            json extra;
            extra["unsatisfiable_concepts"] = unsat;
            return answer(ok, coh_format, "coherent", "coherent", "incoherent",
                          std::move(extra));
        }
        if (*cmd_con)
            return answer(mythos::is_consistent(mythos::krss::parse_kb(slurp(con_kb)), topt),
                          con_format, "consistent", "consistent", "inconsistent");
        if (*cmd_ap) return run_antipatterns(ap_kb, ap_format);
        if (*cmd_ing) return run_ingest(ing_in, ing_out, ing_format);
        if (*cmd_tr) return run_translate(tr);
        if (*cmd_corpus) return run_corpus(corpus_manifest, corpus_timings, topt);
    } catch (const mythos::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kLimit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
