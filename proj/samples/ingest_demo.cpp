// Machine-reading ingestion: parse a recorded N-Triples translation, show the
// normalization statistics, and print the resulting KRSS knowledge base.

#include "mythos/mythos.hpp"

#include <iostream>

using namespace mythos;

int main() {
    std::string path = std::string(MYTHOS_DATA_DIR) + "/fred/hand-dryers-effective.nt";
    IngestResult result = normalize_fred(parse_ntriples_file(path));

    std::cout << path << "\n"
              << "  triples: " << result.triples_total << "\n"
              << "  mapped: " << result.triples_mapped << "\n"
              << "  annotated: " << result.triples_annotated << "\n"
              << "  dropped (sameAs): " << result.triples_dropped << "\n"
              << "  warnings: " << result.warnings.size() << "\n";
    for (const auto& w : result.warnings) std::cout << "    " << w << "\n";

    std::cout << "\n" << krss::serialize_kb(result.kb);
    return 0;
}
