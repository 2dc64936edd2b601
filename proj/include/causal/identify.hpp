#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "causal/components.hpp"
#include "causal/distribution.hpp"
#include "causal/expression.hpp"
#include "causal/expression_io.hpp"
#include "causal/graph.hpp"
#include "causal/projection.hpp"

namespace causal {

struct Query {
    VertexSet y;  // outcomes, nonempty
    VertexSet x;  // interventions, disjoint from y
};

// Iteration order for the latent-projection loop. The walkthrough convention
// writes topological orders sink-first, so Topological visits sinks first and
// ReverseTopological visits sources first.
struct PruneOrder {
    enum class Policy { Topological, ReverseTopological, Explicit };
    Policy policy = Policy::ReverseTopological;
    std::vector<std::string> explicit_order;
};

struct TraceStep {
    std::string algorithm;  // "id" or "pid"
    int line;               // line number in the respective algorithm
    int depth;
    nlohmann::ordered_json detail;
};

struct IdentifyResult {
    std::optional<Expr> expression;
    std::optional<HedgeWitness> failure;
    std::vector<TraceStep> trace;

    bool identified() const { return expression.has_value(); }
};

// --- pruning criteria, exposed individually ---

// Ancestors of Y that are cut off from Y once incoming edges of X are
// removed. Removal is sound only when the induced subgraph equals the latent
// projection onto the remaining vertices; the caller checks that guard.
inline VertexSet prune_interceptors(const VertexSet& y, const VertexSet& x, const Smg& g) {
    return set_minus(ancestors(y, g), co(y, mutilate(g, x)));
}

// Vertices attached to the rest of the graph only through a single cut
// vertex. Never returns members of x or y.
inline VertexSet prune_connectors(const VertexSet& y, const VertexSet& x, const Smg& g) {
    const VertexSet& v = g.vertices();
    Smg g_bar_x = mutilate(g, x);
    VertexSet de_x = descendants(x, g);
    VertexSet t;
    for (const auto& w : set_minus(v, x)) {
        VertexSet r = set_minus(ancestors({w}, g_bar_x), de_x);
        if (r.empty()) continue;
        VertexSet attached = co(set_minus(v, r), mutilate(g, {w}));
        t = set_or(t, set_minus(r, attached));
    }
    return set_minus(t, set_or(x, y));
}

namespace detail {

inline std::vector<std::string> in_policy_order(const Smg& g, const VertexSet& cands,
                                                const PruneOrder& ord) {
    std::vector<std::string> base;
    if (ord.policy == PruneOrder::Policy::Explicit) {
        base = ord.explicit_order;
        for (const auto& v : cands)
            if (!contains(base, v)) throw graph_error("explicit order misses vertex " + v);
    } else {
        base = topological_order(g);
        if (ord.policy == PruneOrder::Policy::Topological) std::reverse(base.begin(), base.end());
    }
    std::vector<std::string> out;
    for (const auto& v : base)
        if (contains(cands, v)) out.push_back(v);
    return out;
}

inline VertexSet children_within(const Smg& g, const std::string& x, const VertexSet& s) {
    VertexSet out;
    for (int c : g.children_of(g.index_of(x)))
        if (contains(s, g.vertices()[c])) out.push_back(g.vertices()[c]);
    return out;
}

struct RunContext {
    bool pruning = false;
    PruneOrder order;
    std::vector<TraceStep>* trace = nullptr;

    void record(int id_line, int pid_line, int depth, nlohmann::ordered_json detail) const {
        trace->push_back(TraceStep{pruning ? "pid" : "id", pruning ? pid_line : id_line, depth,
                                   std::move(detail)});
    }
};

struct RunResult {
    std::optional<Expr> expr;
    std::optional<HedgeWitness> hedge;
};

// Latent-projection pruning loop (singleton intervention). Mutates p and g;
// records one accept/reject trace event per candidate. After a committed
// projection the untested candidates are reordered on the new graph.
inline void latent_prune_loop(const VertexSet& y, const VertexSet& x, Distribution& p, Smg& g,
                              const RunContext& ctx, int depth) {
    const std::string& xv = x.front();
    VertexSet sx = c_component_of(g, xv);
    if (!children_within(g, xv, sx).empty()) return;
    std::vector<std::string> work =
        in_policy_order(g, set_minus(g.vertices(), set_or(y, x)), ctx.order);
    std::size_t i = 0;
    while (i < work.size()) {
        const std::string w = work[i];
        Smg projected = latent_project_smg(g, set_minus(g.vertices(), {w}));
        VertexSet spx = c_component_of(projected, xv);
        bool ok = children_within(projected, xv, spx).empty();
        ctx.record(0, 5, depth,
                   {{"candidate", w}, {"action", ok ? "accept" : "reject"}});
        if (!ok) {
            ++i;
            continue;
        }
        p = marginalize(p, {w});
        g = std::move(projected);
        VertexSet remaining(work.begin() + long(i) + 1, work.end());
        work = in_policy_order(g, remaining, ctx.order);
        i = 0;
    }
}

inline std::vector<VariableId> as_variables(const VertexSet& vs) {
    std::vector<VariableId> out;
    for (const auto& v : vs) out.emplace_back(v);
    return out;
}

inline RunResult run_identify(VertexSet y, VertexSet x, Distribution p, Smg g,
                              const RunContext& ctx, int depth) {
    if (!set_equal(p.scope, g.vertices()))
        throw graph_error("identify: distribution scope must equal the graph vertex set");

    // line 1: no intervention left, marginalize down to y
    if (x.empty()) {
        VertexSet summed = set_minus(g.vertices(), y);
        ctx.record(1, 1, depth, {{"marginalized", summed}});
        return RunResult{marginalize(p, summed).expr, std::nullopt};
    }

    // line 2: restrict to ancestors of y
    VertexSet an = ancestors(y, g);
    if (!set_equal(an, g.vertices())) {
        ctx.record(2, 2, depth, {{"ancestors", an}});
        return run_identify(y, set_and(x, an), marginalize(p, set_minus(g.vertices(), an)),
                            induced_subgraph(g, an), ctx, depth + 1);
    }

    if (ctx.pruning) {
        // PID line 3: interceptor removal, guarded by projection equality
        VertexSet z = prune_interceptors(y, x, g);
        if (!z.empty()) {
            VertexSet keep = set_minus(g.vertices(), z);
            if (graphs_equal(induced_subgraph(g, keep), latent_project_smg(g, keep))) {
                ctx.record(0, 3, depth, {{"removed", z}});
                return run_identify(y, set_minus(x, z), marginalize(p, z),
                                    induced_subgraph(g, keep), ctx, depth + 1);
            }
        }
        // PID line 4: single-connector removal
        VertexSet t = prune_connectors(y, x, g);
        if (!t.empty()) {
            ctx.record(0, 4, depth, {{"removed", t}});
            return run_identify(y, x, marginalize(p, t),
                                induced_subgraph(g, set_minus(g.vertices(), t)), ctx, depth + 1);
        }
        // PID line 5: latent projections for singleton interventions
        if (x.size() == 1) latent_prune_loop(y, x, p, g, ctx, depth);
    }

    // ID line 3 / PID line 6: enlarge the intervention with the vertices that
    // are no longer ancestors of y once incoming edges of x are cut
    VertexSet w = set_minus(set_minus(g.vertices(), x), ancestors(y, mutilate(g, x)));
    if (!w.empty()) {
        ctx.record(3, 6, depth, {{"enlarged", w}});
        return run_identify(y, set_or(x, w), p, g, ctx, depth + 1);
    }

    // ID line 4 / PID line 7: factorize over the C-components of G[V \ X]
    CComponentPartition cc = maximal_c_components(induced_subgraph(g, set_minus(g.vertices(), x)));
    if (cc.blocks.size() >= 2) {
        ctx.record(4, 7, depth, {{"components", cc.blocks}});
        std::vector<Expr> factors;
        for (const auto& s : cc.blocks) {
            RunResult sub = run_identify(s, set_minus(g.vertices(), s), p, g, ctx, depth + 1);
            if (sub.hedge) return sub;
            factors.push_back(*sub.expr);
        }
        VertexSet bound = set_minus(g.vertices(), set_or(y, x));
        return RunResult{make_sum(as_variables(bound), make_product(std::move(factors))),
                         std::nullopt};
    }

    const VertexSet& s = cc.blocks.front();
    CComponentPartition ccg = maximal_c_components(g);

    // ID line 5 / PID line 8: the whole graph is one C-component -> FAIL
    if (ccg.blocks.size() == 1) {
        ctx.record(5, 8, depth, {{"fail_component", s}});
        return RunResult{std::nullopt, make_hedge_witness(g, s)};
    }

    std::vector<std::string> pi = topological_order(g);

    // ID line 6 / PID line 9: S is itself a maximal C-component of G
    for (const auto& block : ccg.blocks) {
        if (set_equal(block, s)) {
            ctx.record(6, 9, depth, {{"component", s}});
            Expr prod = chain_factorize(p, s, pi);
            return RunResult{make_sum(as_variables(set_minus(s, y)), prod), std::nullopt};
        }
    }

    // ID line 7 / PID line 10: recurse into the maximal C-component S' ⊃ S
    VertexSet s_prime;
    for (const auto& block : ccg.blocks)
        if (contains(block, s.front())) s_prime = block;
    ctx.record(7, 10, depth, {{"component", s_prime}});
    Expr prod = chain_factorize(p, s_prime, pi, set_minus(g.vertices(), s_prime));
    Distribution next{prod, s_prime, false};
    return run_identify(y, set_and(x, s_prime), next, induced_subgraph(g, s_prime), ctx,
                        depth + 1);
}

inline void validate_query(const VertexSet& y, const VertexSet& x, const Smg& g) {
    if (y.empty()) throw graph_error("query: outcome set is empty");
    for (const auto& v : y) g.index_of(v);
    for (const auto& v : x) g.index_of(v);
    if (!set_and(x, y).empty()) throw graph_error("query: intervention and outcome sets overlap");
}

inline IdentifyResult finish(RunResult r, std::vector<TraceStep> trace) {
    IdentifyResult out;
    out.trace = std::move(trace);
    if (r.hedge)
        out.failure = std::move(r.hedge);
    else
        out.expression = rename_bound(*r.expr);
    return out;
}

}  // namespace detail

// The identification algorithm: returns an expression for P_x(y) in terms of
// the observational distribution, or the witness pair of C-forests when the
// effect is not identifiable.
inline IdentifyResult id_algorithm(const VertexSet& y, const VertexSet& x, const Distribution& p,
                                   const Smg& g) {
    detail::validate_query(y, x, g);
    std::vector<TraceStep> trace;
    detail::RunContext ctx{false, PruneOrder{}, &trace};
    detail::RunResult r = detail::run_identify(y, x, p, g, ctx, 0);
    return detail::finish(std::move(r), std::move(trace));
}

// The pruning variant: interceptor removal, single-connector removal and
// latent projections run before each recursive identification step.
inline IdentifyResult pid_algorithm(const VertexSet& y, const VertexSet& x, const Distribution& p,
                                    const Smg& g, const PruneOrder& order = {}) {
    detail::validate_query(y, x, g);
    std::vector<TraceStep> trace;
    detail::RunContext ctx{true, order, &trace};
    detail::RunResult r = detail::run_identify(y, x, p, g, ctx, 0);
    return detail::finish(std::move(r), std::move(trace));
}

inline IdentifyResult id_algorithm(const VertexSet& y, const VertexSet& x, const Smg& g) {
    return id_algorithm(y, x, joint_distribution(g), g);
}
inline IdentifyResult pid_algorithm(const VertexSet& y, const VertexSet& x, const Smg& g,
                                    const PruneOrder& order = {}) {
    return pid_algorithm(y, x, joint_distribution(g), g, order);
}

// Latent-projection pruning as a standalone operation: returns the inputs
// unchanged when the intervention is not a singleton or when a child of X
// shares its C-component.
inline std::pair<Distribution, Smg> prune_latent(const VertexSet& y, const VertexSet& x,
                                                 Distribution p, Smg g, const PruneOrder& order) {
    if (x.size() != 1) return {std::move(p), std::move(g)};
    std::vector<TraceStep> scratch;
    detail::RunContext ctx{true, order, &scratch};
    detail::latent_prune_loop(y, x, p, g, ctx, 0);
    return {std::move(p), std::move(g)};
}

// --- JSON serialization of results ---

inline nlohmann::ordered_json to_json(const Smg& g) {
    nlohmann::ordered_json j;
    j["vertices"] = g.vertices();
    auto edges = nlohmann::ordered_json::array();
    for (const auto& [a, b] : g.directed_by_name()) edges.push_back({a, b});
    j["directed"] = edges;
    auto arcs = nlohmann::ordered_json::array();
    for (const auto& [a, b] : g.bidirected_by_name()) arcs.push_back({a, b});
    j["bidirected"] = arcs;
    return j;
}

inline nlohmann::ordered_json to_json(const HedgeWitness& w) {
    return nlohmann::ordered_json{
        {"F", to_json(w.f)}, {"Fprime", to_json(w.f_prime)}, {"root", w.root}};
}

inline nlohmann::ordered_json to_json(const std::vector<TraceStep>& trace) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : trace) {
        nlohmann::ordered_json j{{"algorithm", s.algorithm}, {"line", s.line}, {"depth", s.depth}};
        for (auto& [k, v] : s.detail.items()) j[k] = v;
        arr.push_back(std::move(j));
    }
    return arr;
}

inline nlohmann::ordered_json to_json(const IdentifyResult& r) {
    nlohmann::ordered_json j;
    if (r.identified()) {
        j["status"] = "identified";
        j["expression"] = to_json(*r.expression);
        ExpressionMetrics m = metrics(*r.expression);
        j["metrics"] = {{"sum-nodes", m.sum_nodes},
                        {"quotient-nodes", m.quotient_nodes},
                        {"atom-nodes", m.atom_nodes},
                        {"distinct-variables", m.distinct_variables}};
    } else {
        j["status"] = "fail";
        j["hedge"] = to_json(*r.failure);
    }
    j["trace"] = to_json(r.trace);
    return j;
}

}  // namespace causal
