#pragma once

#include <cctype>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "causal/graph.hpp"

namespace causal {

struct parse_error : std::runtime_error {
    int line;
    parse_error(int ln, const std::string& msg)
        : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

// Text format: one edge per line, `A -> B` directed or `A <-> B` bidirected.
// `#` starts a comment. A line `latent U1 U2 ...` marks latent vertices and
// switches the result to a LatentDag. Vertex insertion order is first-mention
// order. Duplicate edges are idempotent (a warning is emitted).
using ParsedGraph = std::variant<Smg, LatentDag>;

namespace detail {

inline bool valid_name(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace detail

inline ParsedGraph parse_graph_text(const std::string& text, std::ostream& warnings = std::cerr) {
    Smg::Builder b;
    std::vector<std::string> latents;
    std::set<std::string> seen_lines;
    std::istringstream in(text);
    std::string raw;
    int ln = 0;
    bool any_vertex = false;
    while (std::getline(in, raw)) {
        ++ln;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "latent") {
            std::string name;
            while (ls >> name) {
                if (!detail::valid_name(name)) throw parse_error(ln, "bad vertex name '" + name + "'");
                latents.push_back(name);
                b.vertex(name);
                any_vertex = true;
            }
            continue;
        }
        std::string op, second, extra;
        if (!(ls >> op >> second) || (ls >> extra))
            throw parse_error(ln, "expected 'A -> B' or 'A <-> B'");
        if (!detail::valid_name(first)) throw parse_error(ln, "bad vertex name '" + first + "'");
        if (!detail::valid_name(second)) throw parse_error(ln, "bad vertex name '" + second + "'");
        std::string key = first + op + second;
        if (op == "<->") {
            std::string norm = first < second ? first + "~" + second : second + "~" + first;
            if (!seen_lines.insert(norm).second)
                warnings << "warning: line " << ln << ": duplicate edge ignored\n";
            b.arc(first, second);
        } else if (op == "->") {
            if (!seen_lines.insert(key).second)
                warnings << "warning: line " << ln << ": duplicate edge ignored\n";
            b.edge(first, second);
        } else {
            throw parse_error(ln, "unknown edge operator '" + op + "'");
        }
        any_vertex = true;
    }
    if (!any_vertex) throw parse_error(ln, "no vertices");
    Smg g;
    try {
        g = b.build();
    } catch (const graph_error& e) {
        throw parse_error(ln, e.what());
    }
    if (latents.empty()) return g;
    if (!g.bidirected().empty())
        throw parse_error(ln, "bidirected edges are not allowed in a latent DAG");
    LatentDag d;
    d.latent.assign(g.size(), 0);
    for (const auto& u : latents) d.latent[g.index_of(u)] = 1;
    d.dag = std::move(g);
    return d;
}

}  // namespace causal
