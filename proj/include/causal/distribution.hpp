#pragma once

#include <string>
#include <vector>

#include "causal/expression.hpp"
#include "causal/graph.hpp"

namespace causal {

// The probability object threaded through identification: an expression
// together with the ordered variable set it is a distribution over. `atomic`
// marks distributions whose expression is a single raw joint (possibly
// conditional on a fixed context), which factorize without quotients.
struct Distribution {
    Expr expr;
    VertexSet scope;
    bool atomic = false;
};

inline Distribution joint_distribution(const Smg& g) {
    std::vector<VariableId> out;
    for (const auto& v : g.vertices()) out.emplace_back(v);
    return Distribution{make_atom(std::move(out)), g.vertices(), true};
}

// Sums the variables in z out of d. Atomic distributions stay atomic (the
// marginal of a joint is a joint); otherwise the body is wrapped in a Sum,
// merging with an existing outer Sum.
inline Distribution marginalize(const Distribution& d, const VertexSet& z) {
    if (!is_subset(z, d.scope)) throw graph_error("marginalize: variables outside scope");
    if (z.empty()) return d;
    VertexSet rest = set_minus(d.scope, z);
    if (d.atomic) {
        const auto& a = std::get<Expression::Atom>(d.expr->node);
        std::vector<VariableId> out;
        for (const auto& v : a.out)
            if (!contains(z, v.name)) out.push_back(v);
        return Distribution{make_atom(std::move(out), a.given), rest, true};
    }
    std::vector<VariableId> bound;
    Expr body = d.expr;
    if (auto* s = std::get_if<Expression::Sum>(&d.expr->node)) {
        bound = s->bound;
        body = s->body;
    }
    for (const auto& v : z) bound.emplace_back(v);
    return Distribution{make_sum(std::move(bound), body), rest, false};
}

// The conditional P(v | pred) of d, with pred listed in the order it should
// render. Atomic distributions yield a plain Atom (the fixed context of a
// conditional joint rides along in the given list); otherwise the conditional
// is a quotient of two marginals. When pred is empty the denominator is the
// total mass of the distribution and is omitted.
inline Expr conditional(const Distribution& d, const std::string& v,
                        const std::vector<std::string>& pred) {
    if (!contains(d.scope, v)) throw graph_error("conditional: " + v + " outside scope");
    if (d.atomic) {
        const auto& a = std::get<Expression::Atom>(d.expr->node);
        std::vector<VariableId> given;
        for (const auto& p : pred) given.emplace_back(p);
        given.insert(given.end(), a.given.begin(), a.given.end());
        return make_atom({VariableId(v)}, std::move(given));
    }
    VertexSet keep_num{v};
    VertexSet keep_den;
    for (const auto& p : pred) {
        keep_num.push_back(p);
        keep_den.push_back(p);
    }
    Expr num = marginalize(d, set_minus(d.scope, keep_num)).expr;
    if (pred.empty()) return num;
    Expr den = marginalize(d, set_minus(d.scope, keep_den)).expr;
    return make_quotient(num, den);
}

// Product over v in s of P(v | predecessors of v in `order`), the chain
// factorization used by the identification steps. `order` must cover the
// scope of d; fixed_context, when given, names the order variables outside s
// whose values stay fixed (they appear in the conditionals either way; the
// argument is validated for interface completeness).
inline Expr chain_factorize(const Distribution& d, const VertexSet& s,
                            const std::vector<std::string>& order,
                            const VertexSet& fixed_context = {}) {
    for (const auto& v : d.scope)
        if (!contains(order, v)) throw graph_error("chain_factorize: order does not cover scope");
    if (!fixed_context.empty() && !is_subset(fixed_context, set_minus(d.scope, s)))
        throw graph_error("chain_factorize: fixed context must avoid the factorized set");
    std::vector<Expr> factors;
    std::vector<std::string> pred;
    for (const auto& v : order) {
        if (!contains(d.scope, v)) continue;
        if (contains(s, v)) factors.push_back(conditional(d, v, pred));
        pred.push_back(v);
    }
    if (factors.empty()) throw graph_error("chain_factorize: empty factor set");
    return make_product(std::move(factors));
}

}  // namespace causal
