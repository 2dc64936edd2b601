#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace causal {

// Ordered set of vertex names. All operations that return vertex sets order
// them by insertion order of the graph they came from, which makes every
// downstream computation (topological sorts, component lists, sum binder
// lists) deterministic.
using VertexSet = std::vector<std::string>;

struct graph_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Semi-Markovian graph: an acyclic directed graph over named vertices plus
// bidirected edges, each standing for a hidden common cause of its two
// endpoints. Vertex order is stable insertion order. Immutable once built.
class Smg {
public:
    class Builder;

    const std::vector<std::string>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }

    bool has_vertex(const std::string& v) const { return index_.count(v) != 0; }

    int index_of(const std::string& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) throw graph_error("unknown vertex: " + v);
        return it->second;
    }

    const std::set<std::pair<int, int>>& directed() const { return directed_; }
    const std::set<std::pair<int, int>>& bidirected() const { return bidirected_; }

    bool has_directed(const std::string& a, const std::string& b) const {
        return directed_.count({index_of(a), index_of(b)}) != 0;
    }
    bool has_bidirected(const std::string& a, const std::string& b) const {
        int i = index_of(a), j = index_of(b);
        return bidirected_.count({std::min(i, j), std::max(i, j)}) != 0;
    }

    std::vector<int> parents_of(int v) const {
        std::vector<int> out;
        for (const auto& [t, h] : directed_)
            if (h == v) out.push_back(t);
        return out;
    }
    std::vector<int> children_of(int v) const {
        std::vector<int> out;
        for (const auto& [t, h] : directed_)
            if (t == v) out.push_back(h);
        return out;
    }
    std::vector<int> bidirected_neighbors_of(int v) const {
        std::vector<int> out;
        for (const auto& [a, b] : bidirected_) {
            if (a == v) out.push_back(b);
            if (b == v) out.push_back(a);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<char> mask(const VertexSet& w) const {
        std::vector<char> m(size(), 0);
        for (const auto& v : w) m[index_of(v)] = 1;
        return m;
    }
    VertexSet unmask(const std::vector<char>& m) const {
        VertexSet out;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) out.push_back(vertices_[i]);
        return out;
    }

    // Edge lists by name, for serialization and equality checks.
    std::vector<std::pair<std::string, std::string>> directed_by_name() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& [t, h] : directed_) out.emplace_back(vertices_[t], vertices_[h]);
        return out;
    }
    std::vector<std::pair<std::string, std::string>> bidirected_by_name() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& [a, b] : bidirected_) out.emplace_back(vertices_[a], vertices_[b]);
        return out;
    }

private:
    friend class Builder;
    std::vector<std::string> vertices_;
    std::unordered_map<std::string, int> index_;
    std::set<std::pair<int, int>> directed_;    // (tail, head)
    std::set<std::pair<int, int>> bidirected_;  // normalized (min, max)
};

class Smg::Builder {
public:
    Builder& vertex(const std::string& v) {
        add(v);
        return *this;
    }
    Builder& edge(const std::string& a, const std::string& b) {
        int i = add(a), j = add(b);
        if (i == j) throw graph_error("self-loop on " + a);
        g_.directed_.insert({i, j});
        return *this;
    }
    Builder& arc(const std::string& a, const std::string& b) {
        int i = add(a), j = add(b);
        if (i == j) throw graph_error("bidirected self-loop on " + a);
        g_.bidirected_.insert({std::min(i, j), std::max(i, j)});
        return *this;
    }

    // Validates acyclicity of the directed part.
    Smg build() {
        std::vector<int> indeg(g_.size(), 0);
        for (const auto& [t, h] : g_.directed_) indeg[h]++;
        std::deque<int> q;
        for (std::size_t i = 0; i < g_.size(); ++i)
            if (indeg[i] == 0) q.push_back(int(i));
        std::size_t seen = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            ++seen;
            for (int c : g_.children_of(v))
                if (--indeg[c] == 0) q.push_back(c);
        }
        if (seen != g_.size()) throw graph_error("directed part of graph has a cycle");
        return std::move(g_);
    }

private:
    int add(const std::string& v) {
        auto it = g_.index_.find(v);
        if (it != g_.index_.end()) return it->second;
        int id = int(g_.vertices_.size());
        g_.vertices_.push_back(v);
        g_.index_.emplace(v, id);
        return id;
    }
    Smg g_;
};

// A DAG with a designated latent vertex subset, the input of a latent
// projection. Directed edges only.
struct LatentDag {
    Smg dag;  // bidirected part empty
    std::vector<char> latent;

    VertexSet observed() const {
        VertexSet out;
        for (std::size_t i = 0; i < dag.size(); ++i)
            if (!latent[i]) out.push_back(dag.vertices()[i]);
        return out;
    }
};

enum class Kin { Parents, Children, Ancestors, Descendants };

// Kin set of W in G, including W itself (only directed edges considered).
inline VertexSet kin(Kin kind, const VertexSet& w, const Smg& g) {
    std::vector<char> m = g.mask(w);
    auto step = [&](int v) {
        switch (kind) {
            case Kin::Parents:
            case Kin::Ancestors: return g.parents_of(v);
            default: return g.children_of(v);
        }
    };
    if (kind == Kin::Parents || kind == Kin::Children) {
        std::vector<char> out = m;
        for (std::size_t v = 0; v < m.size(); ++v)
            if (m[v])
                for (int u : step(int(v))) out[u] = 1;
        return g.unmask(out);
    }
    // transitive closure
    std::vector<char> out = m;
    std::deque<int> q;
    for (std::size_t v = 0; v < m.size(); ++v)
        if (m[v]) q.push_back(int(v));
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : step(v))
            if (!out[u]) {
                out[u] = 1;
                q.push_back(u);
            }
    }
    return g.unmask(out);
}

inline VertexSet ancestors(const VertexSet& w, const Smg& g) { return kin(Kin::Ancestors, w, g); }
inline VertexSet descendants(const VertexSet& w, const Smg& g) { return kin(Kin::Descendants, w, g); }

// Vertices connected to W by any path when edge directions are ignored
// (bidirected edges included), W itself included.
inline VertexSet co(const VertexSet& w, const Smg& g) {
    std::vector<char> seen = g.mask(w);
    std::deque<int> q;
    for (std::size_t v = 0; v < seen.size(); ++v)
        if (seen[v]) q.push_back(int(v));
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        auto visit = [&](int u) {
            if (!seen[u]) {
                seen[u] = 1;
                q.push_back(u);
            }
        };
        for (int u : g.parents_of(v)) visit(u);
        for (int u : g.children_of(v)) visit(u);
        for (int u : g.bidirected_neighbors_of(v)) visit(u);
    }
    return g.unmask(seen);
}

// Subgraph induced by W: keeps exactly the directed and bidirected edges with
// both endpoints in W, preserving relative vertex order.
inline Smg induced_subgraph(const Smg& g, const VertexSet& w) {
    std::vector<char> m = g.mask(w);
    Smg::Builder b;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) b.vertex(g.vertices()[i]);
    for (const auto& [t, h] : g.directed())
        if (m[t] && m[h]) b.edge(g.vertices()[t], g.vertices()[h]);
    for (const auto& [x, y] : g.bidirected())
        if (m[x] && m[y]) b.arc(g.vertices()[x], g.vertices()[y]);
    return b.build();
}

// Removes all incoming edges of bar_x and all outgoing directed edges of
// ubar_z. A bidirected edge carries arrowheads into both endpoints, so it
// counts as incoming at each of them and is removed when either endpoint is
// in bar_x; ubar_z never removes bidirected edges.
inline Smg mutilate(const Smg& g, const VertexSet& bar_x, const VertexSet& ubar_z = {}) {
    std::vector<char> bx = g.mask(bar_x);
    std::vector<char> uz = g.mask(ubar_z);
    Smg::Builder b;
    for (const auto& v : g.vertices()) b.vertex(v);
    for (const auto& [t, h] : g.directed())
        if (!bx[h] && !uz[t]) b.edge(g.vertices()[t], g.vertices()[h]);
    for (const auto& [x, y] : g.bidirected())
        if (!bx[x] && !bx[y]) b.arc(g.vertices()[x], g.vertices()[y]);
    return b.build();
}

// Vertices without descendants.
inline VertexSet root_set(const Smg& g) {
    VertexSet out;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g.children_of(int(v)).empty()) out.push_back(g.vertices()[v]);
    return out;
}

// Deterministic topological order of the directed part. Kahn's algorithm with
// a FIFO queue: initial sources enter in insertion order, and vertices freed
// while processing a vertex enter in insertion order of the freed children.
// Bidirected edges are ignored.
inline std::vector<std::string> topological_order(const Smg& g) {
    std::vector<int> indeg(g.size(), 0);
    for (const auto& [t, h] : g.directed()) indeg[h]++;
    std::deque<int> q;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (indeg[v] == 0) q.push_back(int(v));
    std::vector<std::string> order;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        order.push_back(g.vertices()[v]);
        for (int c : g.children_of(v))
            if (--indeg[c] == 0) q.push_back(c);
    }
    return order;
}

// Set equality of vertex sets and both edge sets; labels align by name.
inline bool graphs_equal(const Smg& a, const Smg& b) {
    auto sorted = [](VertexSet v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    if (sorted(a.vertices()) != sorted(b.vertices())) return false;
    auto name_pairs = [](const std::vector<std::pair<std::string, std::string>>& e) {
        std::set<std::pair<std::string, std::string>> s(e.begin(), e.end());
        return s;
    };
    if (name_pairs(a.directed_by_name()) != name_pairs(b.directed_by_name())) return false;
    auto norm_pairs = [](const std::vector<std::pair<std::string, std::string>>& e) {
        std::set<std::pair<std::string, std::string>> s;
        for (auto [x, y] : e) s.insert({std::min(x, y), std::max(x, y)});
        return s;
    };
    return norm_pairs(a.bidirected_by_name()) == norm_pairs(b.bidirected_by_name());
}

// --- small set helpers over VertexSet (order-preserving) ---

inline bool contains(const VertexSet& s, const std::string& v) {
    return std::find(s.begin(), s.end(), v) != s.end();
}

inline VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    for (const auto& v : a)
        if (!contains(b, v)) out.push_back(v);
    return out;
}

inline VertexSet set_and(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    for (const auto& v : a)
        if (contains(b, v)) out.push_back(v);
    return out;
}

inline VertexSet set_or(const VertexSet& a, const VertexSet& b) {
    VertexSet out = a;
    for (const auto& v : b)
        if (!contains(out, v)) out.push_back(v);
    return out;
}

inline bool set_equal(VertexSet a, VertexSet b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
    for (const auto& v : a)
        if (!contains(b, v)) return false;
    return true;
}

}  // namespace causal
