// End-to-end claim check: load a claim, the contradicting fact, and the
// shared background, then print the report and its plain-English explanation.

#include "mythos/mythos.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace mythos;

static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

static std::string data(const std::string& rel) {
    return std::string(MYTHOS_DATA_DIR) + "/" + rel;
}

int main() {
    auto myth = krss::parse_document(slurp(data("corpus/m16.krss")), Source::Myth);
    auto fact = krss::parse_document(slurp(data("corpus/f16.krss")), Source::Fact);
    auto background = krss::parse_document(slurp(data("background.krss")), Source::Background);

    ConflictReport report =
        check_claim(myth.kb, fact.kb, background.kb, {}, "antibiotics-kill-virus");

    std::cout << report_to_json(report).dump(2) << "\n\n";
    std::cout << "verdict: " << verdict_name(report.verdict) << "\n";
    for (const auto& name : report.unsat_concepts)
        std::cout << "unsatisfiable: " << name << "\n";
    if (!report.explanation.empty()) std::cout << "\n" << report.explanation << "\n";
    return report.verdict == Verdict::Consistent ? 0 : 1;
}
