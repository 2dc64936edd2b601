#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "causal/graph.hpp"
#include "causal/graph_parse.hpp"

namespace testsupport {

inline std::string fixture_text(const std::string& name) {
    std::string path = std::string(TESTDATA_DIR) + "/" + name;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing fixture: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline causal::Smg load_smg(const std::string& name) {
    return std::get<causal::Smg>(causal::parse_graph_text(fixture_text(name)));
}

inline causal::LatentDag load_latent_dag(const std::string& name) {
    return std::get<causal::LatentDag>(causal::parse_graph_text(fixture_text(name)));
}

inline std::string fixture_path(const std::string& name) {
    return std::string(TESTDATA_DIR) + "/" + name;
}

// Corpus graphs with their standing queries, used by the oracle-equivalence
// and property suites.
struct CorpusEntry {
    std::string file;
    causal::VertexSet y, x;
};

inline std::vector<CorpusEntry> corpus() {
    return {
        {"fig1a.g", {"Y"}, {"X"}},
        {"fig2a.g", {"Y"}, {"X"}},
        {"fig2b.g", {"Y"}, {"X"}},
        {"fig3a.g", {"Y1", "Y2"}, {"W1", "X1", "X2"}},
        {"fig3b.g", {"Y1", "Y2"}, {"X1", "X2"}},
        {"fig4a.g", {"Y"}, {"X1", "X2"}},
        {"fig5a.g", {"Y"}, {"X"}},
        {"fig6a.g", {"Y"}, {"X"}},
        {"fig7a.g", {"Y"}, {"X"}},
        {"fig7b.g", {"Y"}, {"X"}},
        {"fig8.g", {"Y"}, {"X"}},
        {"fig9a.g", {"Y"}, {"X"}},
        {"fig10a.g", {"Y"}, {"X"}},
        {"fig11a.g", {"Y"}, {"X"}},
        {"chain.g", {"Y"}, {"X"}},
    };
}

}  // namespace testsupport
