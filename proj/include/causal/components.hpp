#pragma once

#include <deque>
#include <string>
#include <vector>

#include "causal/graph.hpp"

namespace causal {

// Maximal C-components: connected components of the bidirected-edge-only
// graph. Blocks partition the vertex set and are ordered by their earliest
// vertex; vertices inside a block keep insertion order.
struct CComponentPartition {
    std::vector<VertexSet> blocks;
};

inline CComponentPartition maximal_c_components(const Smg& g) {
    std::vector<int> comp(g.size(), -1);
    int n = 0;
    for (std::size_t s = 0; s < g.size(); ++s) {
        if (comp[s] != -1) continue;
        int id = n++;
        std::deque<int> q{int(s)};
        comp[s] = id;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int u : g.bidirected_neighbors_of(v))
                if (comp[u] == -1) {
                    comp[u] = id;
                    q.push_back(u);
                }
        }
    }
    CComponentPartition p;
    p.blocks.resize(n);
    for (std::size_t v = 0; v < g.size(); ++v) p.blocks[comp[v]].push_back(g.vertices()[v]);
    return p;
}

inline VertexSet c_component_of(const Smg& g, const std::string& v) {
    for (auto& b : maximal_c_components(g).blocks)
        if (contains(b, v)) return b;
    throw graph_error("unknown vertex: " + v);
}

// The FAIL witness: a nested pair of R-rooted C-forests. F' avoids the
// intervention set, F extends it with the intersecting part.
struct HedgeWitness {
    Smg f;        // meets X
    Smg f_prime;  // subgraph of f, avoids X
    VertexSet root;
};

namespace detail {

// Prunes directed edges so every non-root vertex keeps exactly its first
// child (insertion order); bidirected edges are kept in full. On a DAG whose
// childless vertices are exactly `roots`, every kept chain terminates in
// `roots`, so the result is an R-rooted C-forest whenever the input is
// bidirected-connected.
inline Smg prune_to_forest(const Smg& g, const VertexSet& roots) {
    Smg::Builder b;
    for (const auto& v : g.vertices()) b.vertex(v);
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (contains(roots, g.vertices()[v])) continue;
        auto ch = g.children_of(int(v));
        if (ch.empty()) throw graph_error("vertex outside the root set has no child");
        b.edge(g.vertices()[v], g.vertices()[ch.front()]);
    }
    for (const auto& [x, y] : g.bidirected()) b.arc(g.vertices()[x], g.vertices()[y]);
    return b.build();
}

}  // namespace detail

// Builds the witness for the identification failure state: C(G) = {G} and
// C(G[V \ X]) = {G[S]}. F' is G[S] pruned to a C-forest rooted at the root
// set R of G[S]; F prunes all of G the same way, reusing F' inside S.
inline HedgeWitness make_hedge_witness(const Smg& g, const VertexSet& s) {
    Smg gs = induced_subgraph(g, s);
    VertexSet r = root_set(gs);
    HedgeWitness w;
    w.root = r;
    w.f_prime = detail::prune_to_forest(gs, r);
    // F: keep the F' choice inside S, first-child choice outside S.
    Smg::Builder b;
    for (const auto& v : g.vertices()) b.vertex(v);
    for (const auto& v : g.vertices()) {
        if (contains(r, v)) continue;
        if (contains(s, v)) {
            auto ch = w.f_prime.children_of(w.f_prime.index_of(v));
            b.edge(v, w.f_prime.vertices()[ch.front()]);
        } else {
            auto ch = g.children_of(g.index_of(v));
            if (ch.empty()) throw graph_error("intervention vertex has no child in hedge state");
            b.edge(v, g.vertices()[ch.front()]);
        }
    }
    for (const auto& [x, y] : g.bidirected()) b.arc(g.vertices()[x], g.vertices()[y]);
    w.f = b.build();
    return w;
}

}  // namespace causal
