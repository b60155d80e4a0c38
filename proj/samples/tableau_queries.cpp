// Direct reasoning queries against the background ontology: satisfiability,
// subsumption, coherence, and what happens when the node budget runs out.

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

int main() {
    auto kb = krss::parse_kb(slurp(std::string(MYTHOS_DATA_DIR) + "/background.krss"));

    auto show = [](const std::string& what, bool yes) {
        std::cout << what << ": " << (yes ? "yes" : "no") << "\n";
    };

    show("Virus satisfiable", is_satisfiable(kb, atom("Virus")));
    show("Virus and Bacteria overlap",
         is_satisfiable(kb, conj({atom("Virus"), atom("Bacteria")})));
    show("Microorganism subsumes Virus", subsumes(kb, atom("Microorganism"), atom("Virus")));
    show("Virus subsumes Microorganism", subsumes(kb, atom("Virus"), atom("Microorganism")));
    show("an elderly non-person is possible",
         is_satisfiable(kb, conj({atom("Elderly"), negation(atom("Person"))})));

    auto [coherent, unsat] = is_coherent(kb);
    show("background coherent", coherent);

    // A cyclic axiom set still terminates thanks to blocking...
    auto cyclic = krss::parse_kb("(IMPLIES Host (SOME infectedBy Parasite))"
                                 "(IMPLIES Parasite (SOME infects Host))");
    show("cyclic definitions satisfiable", is_satisfiable(cyclic, atom("Host")));

    // ...and a tight node budget aborts instead of running away.
    TableauOptions opt;
    opt.node_cap = 2;
    try {
        is_satisfiable(cyclic, atom("Host"), opt);
        std::cout << "node cap: not reached\n";
    } catch (const ResourceLimitError& e) {
        std::cout << "node cap: " << e.what() << "\n";
    }
    return 0;
}
