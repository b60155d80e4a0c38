#pragma once

// Machine-reading ingestion: a small N-Triples reader, normalization of
// frame-semantics RDF output into a KnowledgeBase, and retrieval of
// text-to-RDF translations either from a live HTTP endpoint or from recorded
// on-disk fixtures (sentence.txt / sentence.nt pairs).
//
// Normalization rules, in order of precedence per triple:
//   owl:sameAs                 dropped (the known translation flaw)
//   rdf:type                   concept assertion
//   rdfs:subClassOf            GCI
//   owl:equivalentClass        equivalence axiom
//   boxing:hasTruthValue       annotation; value false also tags the event
//                              individual with the reserved concept FalseEvent
//   boxing:hasModality         annotation (possible | necessary)
//   q:hasQuantifier            annotation
//   vn.role:*, dul:*,          role assertion with the local role name
//   boxing:involves
//   anything else              role assertion + an entry in the warning list
//
// Every input triple is counted into exactly one bucket (dropped, mapped,
// annotated, warned) so callers can verify conservation.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mythos/errors.hpp"
#include "mythos/model.hpp"

namespace mythos {

struct Triple {
    std::string subject;   // absolute IRI
    std::string predicate; // absolute IRI
    std::string object;    // absolute IRI or literal lexical form
    bool object_is_literal = false;
    int line = 0;
};

struct Graph {
    std::vector<Triple> triples;
};

struct TranslationFixture {
    std::string input_text;
    Graph graph;
    std::string recorded_at;
};

namespace rdf {

inline constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* kRdfsSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr const char* kOwlSameAs = "http://www.w3.org/2002/07/owl#sameAs";
inline constexpr const char* kOwlEquivalentClass =
    "http://www.w3.org/2002/07/owl#equivalentClass";

// Prefix table for the vocabularies the translator emits.
inline const std::vector<std::pair<std::string, std::string>>& prefix_table() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"covid19.m",
         "http://www.ontologydesignpatterns.org/ont/covid19/covid-19-myths.owl#"},
        {"vn.role", "http://www.ontologydesignpatterns.org/ont/vn/abox/role/"},
        {"vn.data", "http://www.ontologydesignpatterns.org/ont/vn/data/"},
        {"ff", "http://www.ontologydesignpatterns.org/ont/framenet/abox/frame/"},
        {"fe", "http://www.ontologydesignpatterns.org/ont/framenet/abox/fe/"},
        {"dul", "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#"},
        {"wn30", "http://www.w3.org/2006/03/wn/wn30/instances/"},
        {"boxer", "http://ontologydesignpatterns.org/ont/boxer/boxer.owl#"},
        {"boxing", "http://ontologydesignpatterns.org/ont/boxer/boxing.owl#"},
        {"dbpedia", "http://dbpedia.org/resource/"},
        {"schemaorg", "http://schema.org/"},
        {"q", "http://www.ontologydesignpatterns.org/ont/fred/quantifiers.owl#"},
        {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
        {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
        {"owl", "http://www.w3.org/2002/07/owl#"},
    };
    return table;
}

inline std::pair<std::string, std::string> split_iri(const std::string& iri) {
    for (const auto& [prefix, ns] : prefix_table())
        if (iri.rfind(ns, 0) == 0) return {prefix, iri.substr(ns.size())};
    std::size_t cut = iri.find_last_of("#/");
    if (cut == std::string::npos || cut + 1 == iri.size()) return {"", iri};
    return {"", iri.substr(cut + 1)};
}

inline bool in_namespace(const std::string& iri, const char* prefix) {
    for (const auto& [p, ns] : prefix_table())
        if (p == prefix) return iri.rfind(ns, 0) == 0;
    return false;
}

} // namespace rdf

// ---------------------------------------------------------------------------
// N-Triples subset parser
// ---------------------------------------------------------------------------

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline std::string nt_term(const std::string& s, std::size_t& i, bool& is_literal, int line) {
    skip_ws(s, i);
    if (i >= s.size()) throw IngestError("line " + std::to_string(line) + ": unexpected end of line");
    if (s[i] == '<') {
        std::size_t close = s.find('>', i);
        if (close == std::string::npos)
            throw IngestError("line " + std::to_string(line) + ": unterminated IRI");
        std::string iri = s.substr(i + 1, close - i - 1);
        i = close + 1;
        is_literal = false;
        return iri;
    }
    if (s[i] == '"') {
        std::string out;
        ++i;
        while (i < s.size() && s[i] != '"') {
            if (s[i] == '\\' && i + 1 < s.size()) ++i;
            out += s[i++];
        }
        if (i >= s.size())
            throw IngestError("line " + std::to_string(line) + ": unterminated literal");
        ++i;                                        // closing quote
        if (i < s.size() && s[i] == '^') {          // drop any ^^<datatype>
            std::size_t close = s.find('>', i);
            i = close == std::string::npos ? s.size() : close + 1;
        } else if (i < s.size() && s[i] == '@') {   // drop any @lang
            while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        }
        is_literal = true;
        return out;
    }
    throw IngestError("line " + std::to_string(line) + ": expected '<' or '\"', found '" +
                      std::string(1, s[i]) + "'");
}

} // namespace detail

inline Graph parse_ntriples(const std::string& text) {
    Graph g;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t i = 0;
        detail::skip_ws(line, i);
        if (i >= line.size() || line[i] == '#') continue;

        Triple t;
        t.line = lineno;
        bool lit = false;
        t.subject = detail::nt_term(line, i, lit, lineno);
        if (lit) throw IngestError("line " + std::to_string(lineno) + ": literal subject");
        t.predicate = detail::nt_term(line, i, lit, lineno);
        if (lit) throw IngestError("line " + std::to_string(lineno) + ": literal predicate");
        t.object = detail::nt_term(line, i, t.object_is_literal, lineno);
        detail::skip_ws(line, i);
        if (i >= line.size() || line[i] != '.')
            throw IngestError("line " + std::to_string(lineno) + ": missing terminating '.'");
        g.triples.push_back(std::move(t));
    }
    return g;
}

inline Graph parse_ntriples_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_ntriples(buf.str());
}

// ---------------------------------------------------------------------------
// Normalization into a KnowledgeBase
// ---------------------------------------------------------------------------

struct IngestResult {
    KnowledgeBase kb;
    std::vector<std::string> warnings; // one entry per unknown-vocabulary triple
    std::size_t triples_total = 0;
    std::size_t triples_dropped = 0;   // owl:sameAs
    std::size_t triples_mapped = 0;    // concept/role assertions and axioms
    std::size_t triples_annotated = 0; // truth value, modality, quantifier
};

namespace detail {

// Shortens IRIs to local names; a local name claimed by one namespace is
// spelled prefix_localname when a second namespace reuses it.
class Localizer {
public:
    std::string operator()(const std::string& iri) {
        auto [prefix, local] = rdf::split_iri(iri);
        auto it = owner_.find(local);
        if (it == owner_.end()) {
            owner_.emplace(local, iri.substr(0, iri.size() - local.size()));
            return local;
        }
        if (it->second == iri.substr(0, iri.size() - local.size())) return local;
        return prefix.empty() ? local : prefix + "_" + local;
    }

private:
    std::map<std::string, std::string> owner_; // local name -> first namespace
};

inline std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace detail

inline IngestResult normalize_fred(const Graph& g) {
    IngestResult r;
    detail::Localizer local;
    bool false_event_seen = false;

    for (const Triple& t : g.triples) {
        ++r.triples_total;
        const std::string& p = t.predicate;

        if (p == rdf::kOwlSameAs) {
            ++r.triples_dropped;
            continue;
        }
        if (p == rdf::kRdfType) {
            r.kb.add_assertion(
                concept_assertion(local(t.subject), atom(local(t.object)), Source::Ingested));
            ++r.triples_mapped;
            continue;
        }
        if (p == rdf::kRdfsSubClassOf) {
            r.kb.add_axiom(gci(atom(local(t.subject)), atom(local(t.object)), Source::Ingested));
            ++r.triples_mapped;
            continue;
        }
        if (p == rdf::kOwlEquivalentClass) {
            r.kb.add_axiom(equiv(atom(local(t.subject)), atom(local(t.object)), Source::Ingested));
            ++r.triples_mapped;
            continue;
        }

        auto [prefix, plocal] = rdf::split_iri(p);
        if (prefix == "boxing" && plocal == "hasTruthValue") {
            std::string value = detail::lowercase(
                t.object_is_literal ? t.object : rdf::split_iri(t.object).second);
            std::string ind = local(t.subject);
            r.kb.add_annotation({ind, AnnotationKey::TruthValue, value});
            if (value == "false") {
                r.kb.add_assertion(concept_assertion(ind, atom("FalseEvent"), Source::Ingested));
                false_event_seen = true;
            }
            ++r.triples_annotated;
            continue;
        }
        if (prefix == "boxing" && plocal == "hasModality") {
            std::string value = detail::lowercase(
                t.object_is_literal ? t.object : rdf::split_iri(t.object).second);
            r.kb.add_annotation({local(t.subject), AnnotationKey::Modality, value});
            ++r.triples_annotated;
            continue;
        }
        if (prefix == "q" && plocal == "hasQuantifier") {
            std::string value =
                t.object_is_literal ? t.object : rdf::split_iri(t.object).second;
            r.kb.add_annotation({local(t.subject), AnnotationKey::Quantifier, value});
            ++r.triples_annotated;
            continue;
        }

        bool known = prefix == "vn.role" || prefix == "dul" ||
                     (prefix == "boxing" && plocal == "involves");
        r.kb.add_assertion(
            role_assertion(local(t.subject), plocal, local(t.object), Source::Ingested));
        if (known)
            ++r.triples_mapped;
        else
            r.warnings.push_back("line " + std::to_string(t.line) +
                                 ": unknown vocabulary predicate <" + p +
                                 ">, kept as role " + plocal);
        // conservation: total == dropped + mapped + annotated + warnings.size()
    }

    // The reserved marker pair gives rule authors a hook for exploiting
    // false-valued events; nothing here forces a conflict by itself.
    if (false_event_seen)
        r.kb.add_axiom(gci(atom("FalseEvent"), negation(atom("TrueEvent")), Source::Ingested));
    return r;
}

// ---------------------------------------------------------------------------
// Translation retrieval: recorded fixtures or a live endpoint
// ---------------------------------------------------------------------------

// Fixture lookup keys on the sentence text trimmed and single-spaced.
inline std::string normalize_sentence(const std::string& text) {
    std::string out;
    bool in_space = true; // swallows leading whitespace
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out += ' ';
            in_space = false;
            out += ch;
        }
    }
    return out;
}

struct TranslationSource {
    bool live = false;
    std::string location; // fixtures directory, or endpoint URL

    static TranslationSource fixtures(std::string dir) { return {false, std::move(dir)}; }
    static TranslationSource endpoint(std::string url) { return {true, std::move(url)}; }
};

namespace detail {

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw IngestError("cannot open " + p.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Fixtures are sentence.txt / sentence.nt pairs; scan in filename order.
inline std::vector<std::filesystem::path> fixture_texts(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw FixtureMissingError("fixture directory not found: " + dir);
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

inline Graph fetch_from_fixtures(const std::string& text, const std::string& dir) {
    std::string wanted = normalize_sentence(text);
    std::vector<std::string> available;
    for (const auto& txt : fixture_texts(dir)) {
        std::string recorded = normalize_sentence(read_file(txt));
        if (recorded == wanted) {
            std::filesystem::path nt = txt;
            nt.replace_extension(".nt");
            return parse_ntriples(read_file(nt));
        }
        available.push_back(recorded);
    }
    std::string msg = "no fixture for \"" + wanted + "\" in " + dir + "; available:";
    for (const auto& a : available) msg += "\n  \"" + a + "\"";
    if (available.empty()) msg += " (none)";
    throw FixtureMissingError(msg);
}

Graph fetch_from_endpoint(const std::string& text, const std::string& url);

} // namespace detail

inline Graph fetch_translation(const std::string& text, const TranslationSource& src) {
    return src.live ? detail::fetch_from_endpoint(text, src.location)
                    : detail::fetch_from_fixtures(text, src.location);
}

inline std::string serialize_ntriples(const Graph& g) {
    std::string out;
    for (const auto& t : g.triples) {
        out += "<" + t.subject + "> <" + t.predicate + "> ";
        if (t.object_is_literal) {
            out += '"';
            for (char c : t.object) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            out += '"';
        } else {
            out += "<" + t.object + ">";
        }
        out += " .\n";
    }
    return out;
}

// Records a sentence/graph pair so later runs can stay offline. Returns the
// path stem used.
inline std::string record_fixture(const std::string& dir, const std::string& text,
                                  const Graph& g) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::string slug;
    for (char c : normalize_sentence(text)) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            slug += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else if (!slug.empty() && slug.back() != '-')
            slug += '-';
    }
    while (!slug.empty() && slug.back() == '-') slug.pop_back();
    if (slug.size() > 48) slug.resize(48);
    if (slug.empty()) slug = "sentence";
    std::string stem = slug;
    for (int n = 2; fs::exists(fs::path(dir) / (stem + ".txt")); ++n)
        stem = slug + "-" + std::to_string(n);

    std::ofstream txt(fs::path(dir) / (stem + ".txt"));
    txt << normalize_sentence(text) << "\n";
    std::ofstream nt(fs::path(dir) / (stem + ".nt"));
    nt << serialize_ntriples(g);
    return (fs::path(dir) / stem).string();
}

} // namespace mythos

// The live path needs an HTTP client; kept at the bottom so everything above
// stays independent of it.
#include "httplib.h"

namespace mythos::detail {

inline Graph fetch_from_endpoint(const std::string& text, const std::string& url) {
    std::size_t scheme = url.find("://");
    if (scheme == std::string::npos) throw IngestError("endpoint URL needs a scheme: " + url);
    std::size_t path_start = url.find('/', scheme + 3);
    std::string base = path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
    path += (path.find('?') == std::string::npos ? '?' : '&');
    path += "text=" + httplib::detail::encode_query_param(normalize_sentence(text));

    httplib::Client client(base);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    std::string last_error;
    for (int attempt = 0; attempt < 2; ++attempt) {
        httplib::Result res = client.Get(path);
        if (res && res->status == 200) return parse_ntriples(res->body);
        last_error = res ? "HTTP status " + std::to_string(res->status)
                         : httplib::to_string(res.error());
    }
    throw IngestError("translation endpoint failed after 2 attempts: " + last_error + " (" +
                      url + ")");
}

} // namespace mythos::detail
