#pragma once

#include <string>
#include <vector>

#include "causal/graph.hpp"

namespace causal {

// Replaces every bidirected edge A <-> B by a fresh latent vertex with edges
// into A and B. The fresh vertices use names outside the graph-file grammar
// so they can never collide with user vertices.
inline LatentDag expand_bidirected(const Smg& g, const VertexSet& extra_latent = {}) {
    Smg::Builder b;
    for (const auto& v : g.vertices()) b.vertex(v);
    for (const auto& [t, h] : g.directed()) b.edge(g.vertices()[t], g.vertices()[h]);
    std::vector<std::string> fresh;
    int k = 0;
    for (const auto& [x, y] : g.bidirected()) {
        std::string u = "#u" + std::to_string(k++);
        fresh.push_back(u);
        b.edge(u, g.vertices()[x]);
        b.edge(u, g.vertices()[y]);
    }
    LatentDag d;
    d.dag = b.build();
    d.latent.assign(d.dag.size(), 0);
    for (const auto& u : fresh) d.latent[d.dag.index_of(u)] = 1;
    for (const auto& v : extra_latent) d.latent[d.dag.index_of(v)] = 1;
    return d;
}

namespace detail {

// Is there a directed path z -> ... -> w whose interior vertices are all
// latent?
inline bool latent_directed_path(const LatentDag& d, int z, int w) {
    std::vector<char> seen(d.dag.size(), 0);
    std::deque<int> q;
    q.push_back(z);
    seen[z] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int c : d.dag.children_of(v)) {
            if (c == w) return true;
            if (!seen[c] && d.latent[c]) {
                seen[c] = 1;
                q.push_back(c);
            }
        }
    }
    return false;
}

// Is there a collider-free path z .. w whose interior vertices are all
// latent, with arrowheads into both z and w? Searches vertex-simple paths.
// `into` is true when the edge we arrived by points into the current vertex.
inline bool latent_headed_path_dfs(const LatentDag& d, int v, bool into, int w,
                                   std::vector<char>& on_path) {
    // leaving toward a child never forms a collider at v
    for (int c : d.dag.children_of(v)) {
        if (c == w) return true;  // arrives at w with an arrowhead
        if (d.latent[c] && !on_path[c]) {
            on_path[c] = 1;
            if (latent_headed_path_dfs(d, c, true, w, on_path)) return true;
            on_path[c] = 0;
        }
    }
    // leaving toward a parent puts an arrowhead at v; forbidden if we also
    // arrived with one (collider)
    if (!into) {
        for (int p : d.dag.parents_of(v)) {
            if (d.latent[p] && !on_path[p]) {
                on_path[p] = 1;
                if (latent_headed_path_dfs(d, p, false, w, on_path)) return true;
                on_path[p] = 0;
            }
        }
    }
    return false;
}

inline bool latent_bidirected_link(const LatentDag& d, int z, int w) {
    // First edge must point into z, so the path starts toward a parent of z.
    std::vector<char> on_path(d.dag.size(), 0);
    on_path[z] = 1;
    for (int p : d.dag.parents_of(z)) {
        if (!d.latent[p]) continue;  // interior vertices must be latent; w is reached via a child edge
        if (on_path[p]) continue;
        on_path[p] = 1;
        if (latent_headed_path_dfs(d, p, false, w, on_path)) return true;
        on_path[p] = 0;
    }
    return false;
}

}  // namespace detail

// Latent projection of a DAG onto its observed vertices: keeps Z -> W when a
// directed path runs through latents only, and adds Z <-> W when a
// collider-free all-latent path has arrowheads into both endpoints.
inline Smg latent_project_dag(const LatentDag& d, const VertexSet& onto) {
    if (!set_equal(onto, d.observed()))
        throw graph_error("projection target must equal the observed vertex set");
    VertexSet obs;  // in dag insertion order
    for (std::size_t i = 0; i < d.dag.size(); ++i)
        if (!d.latent[i]) obs.push_back(d.dag.vertices()[i]);
    Smg::Builder b;
    for (const auto& v : obs) b.vertex(v);
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (std::size_t j = 0; j < obs.size(); ++j) {
            if (i == j) continue;
            int z = d.dag.index_of(obs[i]), w = d.dag.index_of(obs[j]);
            if (detail::latent_directed_path(d, z, w)) b.edge(obs[i], obs[j]);
            if (i < j && detail::latent_bidirected_link(d, z, w)) b.arc(obs[i], obs[j]);
        }
    }
    return b.build();
}

// Latent projection of an SMG onto a retained subset: expand bidirected edges
// to explicit latents, move the dropped vertices into the latent set, project.
inline Smg latent_project_smg(const Smg& g, const VertexSet& keep) {
    for (const auto& v : keep) g.index_of(v);  // membership check
    VertexSet dropped = set_minus(g.vertices(), keep);
    LatentDag d = expand_bidirected(g, dropped);
    VertexSet onto;  // keep, in g insertion order
    for (const auto& v : g.vertices())
        if (contains(keep, v)) onto.push_back(v);
    return latent_project_dag(d, onto);
}

}  // namespace causal
