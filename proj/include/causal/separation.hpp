#pragma once

#include <deque>
#include <string>
#include <vector>

#include "causal/graph.hpp"
#include "causal/projection.hpp"

namespace causal {

// d-separation over SMGs. Bidirected edges are double-arrowhead segments:
// I <-> M -> J blocks like a chain when M is conditioned on, I <-> M <- J and
// I <-> M <-> J block like colliders when no descendant of M is conditioned
// on. Implemented by expanding each bidirected edge to a latent common cause
// and running the standard active-trail reachability on the resulting DAG.
inline bool d_separated(const Smg& g, const VertexSet& x, const VertexSet& y, const VertexSet& z) {
    if (x.empty() || y.empty()) throw graph_error("d_separated: X and Y must be nonempty");
    for (const auto& v : x)
        if (contains(y, v) || contains(z, v)) throw graph_error("d_separated: sets overlap on " + v);
    for (const auto& v : y)
        if (contains(z, v)) throw graph_error("d_separated: sets overlap on " + v);
    LatentDag d = expand_bidirected(g);
    const Smg& dag = d.dag;
    std::vector<char> in_z(dag.size(), 0);
    for (const auto& v : z) in_z[dag.index_of(v)] = 1;
    std::vector<char> in_y(dag.size(), 0);
    for (const auto& v : y) in_y[dag.index_of(v)] = 1;

    // ancestors of Z (inclusive), for collider activation
    std::vector<char> anc_z = in_z;
    std::deque<int> aq;
    for (std::size_t v = 0; v < dag.size(); ++v)
        if (anc_z[v]) aq.push_back(int(v));
    while (!aq.empty()) {
        int v = aq.front();
        aq.pop_front();
        for (int p : dag.parents_of(v))
            if (!anc_z[p]) {
                anc_z[p] = 1;
                aq.push_back(p);
            }
    }

    // states: (vertex, arrived-from-parent?)
    std::vector<char> seen_up(dag.size(), 0), seen_down(dag.size(), 0);
    std::deque<std::pair<int, bool>> q;
    for (const auto& v : x) {
        int i = dag.index_of(v);
        seen_up[i] = 1;
        q.push_back({i, false});
    }
    while (!q.empty()) {
        auto [v, from_parent] = q.front();
        q.pop_front();
        if (in_y[v]) return false;  // active trail reaches Y
        auto push = [&](int u, bool fp) {
            auto& seen = fp ? seen_down : seen_up;
            if (!seen[u]) {
                seen[u] = 1;
                q.push_back({u, fp});
            }
        };
        if (!from_parent) {
            if (!in_z[v]) {
                for (int p : dag.parents_of(v)) push(p, false);
                for (int c : dag.children_of(v)) push(c, true);
            }
        } else {
            if (!in_z[v])
                for (int c : dag.children_of(v)) push(c, true);
            if (anc_z[v])
                for (int p : dag.parents_of(v)) push(p, false);
        }
    }
    return true;
}

}  // namespace causal
