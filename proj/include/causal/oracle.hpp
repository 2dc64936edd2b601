#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "causal/distribution.hpp"
#include "causal/expression.hpp"
#include "causal/graph.hpp"

namespace causal {

struct oracle_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense probability table over an ordered list of discrete variables. The
// first variable is the most significant index digit.
struct ProbTable {
    std::vector<std::string> variables;
    std::vector<int> cards;
    std::vector<double> values;

    static ProbTable zeros(std::vector<std::string> vars, std::vector<int> cards_) {
        ProbTable t{std::move(vars), std::move(cards_), {}};
        std::size_t n = 1;
        for (int c : t.cards) n *= std::size_t(c);
        t.values.assign(n, 0.0);
        return t;
    }

    std::size_t offset(const std::vector<int>& idx) const {
        std::size_t o = 0;
        for (std::size_t i = 0; i < cards.size(); ++i) o = o * std::size_t(cards[i]) + std::size_t(idx[i]);
        return o;
    }
    double at(const std::vector<int>& idx) const { return values[offset(idx)]; }
    double& at(const std::vector<int>& idx) { return values[offset(idx)]; }

    double total() const {
        double s = 0;
        for (double v : values) s += v;
        return s;
    }
};

// Steps a mixed-radix counter; returns false after the last assignment.
inline bool next_assignment(std::vector<int>& idx, const std::vector<int>& cards) {
    for (int i = int(idx.size()) - 1; i >= 0; --i) {
        if (++idx[i] < cards[i]) return true;
        idx[i] = 0;
    }
    return false;
}

inline double compare_tables(const ProbTable& a, const ProbTable& b) {
    if (a.variables != b.variables || a.cards != b.cards)
        throw oracle_error("compare_tables: table shapes differ");
    double m = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::fabs(a.values[i] - b.values[i]));
    return m;
}

// One outcome row per line plus a probability column.
inline std::string to_csv(const ProbTable& t) {
    std::ostringstream out;
    for (std::size_t i = 0; i < t.variables.size(); ++i) out << t.variables[i] << ",";
    out << "p\n";
    std::vector<int> idx(t.variables.size(), 0);
    do {
        for (int v : idx) out << v << ",";
        out << t.at(idx) << "\n";
    } while (next_assignment(idx, t.cards));
    return out.str();
}

// A fully specified discrete semi-Markovian model over an SMG: one latent per
// bidirected edge (two children each), a CPT per observed variable given its
// observed parents and incident latents, and a prior per latent. Every
// probability is at least kCptFloor.
struct DiscreteScm {
    static constexpr double kCptFloor = 0.01;

    Smg graph;
    std::vector<std::string> latents;                          // one per bidirected edge
    std::map<std::string, int> card;                           // observed and latent
    std::map<std::string, std::vector<std::string>> parents;   // observed -> parent list
    std::map<std::string, std::vector<double>> cpt;            // row-major: parent config * card + value
    std::map<std::string, std::vector<double>> prior;          // latent -> distribution
};

namespace detail {

inline double portable_uniform(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

// Draws a strictly positive distribution: floor-mix so every entry >= eps.
inline std::vector<double> positive_distribution(std::mt19937_64& rng, int card, double eps) {
    std::vector<double> u(card);
    double s = 0;
    for (auto& v : u) {
        v = portable_uniform(rng) + 1e-12;
        s += v;
    }
    for (auto& v : u) v = eps + (1.0 - card * eps) * (v / s);
    return u;
}

}  // namespace detail

inline DiscreteScm sample_scm(const Smg& g, std::uint64_t seed, int card) {
    if (card < 2) throw oracle_error("sample_scm: cardinality must be at least 2");
    if (card * DiscreteScm::kCptFloor >= 1.0) throw oracle_error("sample_scm: cardinality too large for the positivity floor");
    DiscreteScm m;
    m.graph = g;
    std::mt19937_64 rng(seed);
    int k = 0;
    std::map<std::string, std::vector<std::string>> incident;
    for (const auto& [a, b] : g.bidirected()) {
        std::string u = "#u" + std::to_string(k++);
        m.latents.push_back(u);
        m.card[u] = card;
        m.prior[u] = detail::positive_distribution(rng, card, DiscreteScm::kCptFloor);
        incident[g.vertices()[a]].push_back(u);
        incident[g.vertices()[b]].push_back(u);
    }
    for (const auto& v : g.vertices()) m.card[v] = card;
    for (const auto& v : g.vertices()) {
        std::vector<std::string> ps;
        for (int p : g.parents_of(g.index_of(v))) ps.push_back(g.vertices()[p]);
        for (const auto& u : incident[v]) ps.push_back(u);
        m.parents[v] = ps;
        std::size_t rows = 1;
        for (const auto& p : ps) rows *= std::size_t(m.card.at(p));
        std::vector<double> table;
        table.reserve(rows * std::size_t(card));
        for (std::size_t r = 0; r < rows; ++r) {
            auto row = detail::positive_distribution(rng, card, DiscreteScm::kCptFloor);
            table.insert(table.end(), row.begin(), row.end());
        }
        m.cpt[v] = std::move(table);
    }
    return m;
}

namespace detail {

struct ScmSpace {
    std::vector<std::string> vars;  // observed (insertion order) then latents
    std::vector<int> cards;
    std::map<std::string, int> pos;
};

inline ScmSpace scm_space(const DiscreteScm& m) {
    ScmSpace s;
    for (const auto& v : m.graph.vertices()) s.vars.push_back(v);
    for (const auto& u : m.latents) s.vars.push_back(u);
    for (const auto& v : s.vars) {
        s.pos[v] = int(s.cards.size());
        s.cards.push_back(m.card.at(v));
    }
    std::size_t cells = 1;
    for (int c : s.cards) {
        cells *= std::size_t(c);
        if (cells > 10'000'000) throw oracle_error("outcome space exceeds the enumeration guard");
    }
    return s;
}

inline double cpt_value(const DiscreteScm& m, const std::string& v, const ScmSpace& s,
                        const std::vector<int>& idx) {
    const auto& ps = m.parents.at(v);
    std::size_t row = 0;
    for (const auto& p : ps) row = row * std::size_t(m.card.at(p)) + std::size_t(idx[s.pos.at(p)]);
    return m.cpt.at(v)[row * std::size_t(m.card.at(v)) + std::size_t(idx[s.pos.at(v)])];
}

}  // namespace detail

// Exact observational joint P(v): the factorized P(v, u) summed over all
// latent configurations.
inline ProbTable observational_joint(const DiscreteScm& m) {
    detail::ScmSpace s = detail::scm_space(m);
    std::vector<int> obs_cards;
    for (const auto& v : m.graph.vertices()) obs_cards.push_back(m.card.at(v));
    ProbTable out = ProbTable::zeros(m.graph.vertices(), obs_cards);
    std::vector<int> idx(s.vars.size(), 0);
    std::vector<int> obs_idx(m.graph.vertices().size(), 0);
    do {
        double p = 1.0;
        for (const auto& u : m.latents) p *= m.prior.at(u)[idx[s.pos.at(u)]];
        for (const auto& v : m.graph.vertices()) p *= detail::cpt_value(m, v, s, idx);
        for (std::size_t i = 0; i < obs_idx.size(); ++i) obs_idx[i] = idx[i];
        out.at(obs_idx) += p;
    } while (next_assignment(idx, s.cards));
    return out;
}

// Truncated factorization: drop the factors of intervened variables, clamp
// their values, and sum out everything except y (latents included).
inline ProbTable interventional_truncated(const DiscreteScm& m,
                                          const std::map<std::string, int>& x,
                                          const VertexSet& y) {
    detail::ScmSpace s = detail::scm_space(m);
    for (const auto& [v, val] : x) {
        if (!m.card.count(v)) throw oracle_error("unknown intervention variable " + v);
        if (val < 0 || val >= m.card.at(v)) throw oracle_error("intervention value out of range for " + v);
    }
    std::vector<int> y_cards;
    for (const auto& v : y) y_cards.push_back(m.card.at(v));
    ProbTable out = ProbTable::zeros(y, y_cards);
    std::vector<int> idx(s.vars.size(), 0);
    std::vector<int> y_idx(y.size(), 0);
    do {
        bool consistent = true;
        for (const auto& [v, val] : x)
            if (idx[s.pos.at(v)] != val) {
                consistent = false;
                break;
            }
        if (!consistent) continue;
        double p = 1.0;
        for (const auto& u : m.latents) p *= m.prior.at(u)[idx[s.pos.at(u)]];
        for (const auto& v : m.graph.vertices())
            if (!x.count(v)) p *= detail::cpt_value(m, v, s, idx);
        for (std::size_t i = 0; i < y.size(); ++i) y_idx[i] = idx[s.pos.at(y[i])];
        out.at(y_idx) += p;
    } while (next_assignment(idx, s.cards));
    return out;
}

// ---------------------------------------------------------------------------
// Numeric evaluation of symbolic expressions against a joint table. Atoms
// evaluate as ratios of marginals of the joint; sums iterate bound variables
// over their cardinalities.
// ---------------------------------------------------------------------------

class Evaluator {
public:
    explicit Evaluator(const ProbTable& joint) : joint_(joint) {}

    double eval(const Expr& e, const std::map<VariableId, int>& assignment) {
        std::map<VariableId, int> env = assignment;
        return eval_rec(e, env);
    }

    int card_of_base(const std::string& base) const {
        for (std::size_t i = 0; i < joint_.variables.size(); ++i)
            if (joint_.variables[i] == base) return joint_.cards[i];
        throw oracle_error("expression references unknown variable " + base);
    }

private:
    double eval_rec(const Expr& e, std::map<VariableId, int>& env) {
        if (auto* a = std::get_if<Expression::Atom>(&e->node)) {
            double num = marginal_value(a->out, a->given, env);
            if (a->given.empty()) return num;
            double den = marginal_value(a->given, {}, env);
            if (den <= 0.0) throw oracle_error("zero conditioning mass: positivity violated");
            return num / den;
        }
        if (auto* s = std::get_if<Expression::Sum>(&e->node)) {
            std::vector<int> cards;
            for (const auto& b : s->bound) cards.push_back(card_of_base(b.name));
            std::vector<int> idx(cards.size(), 0);
            double total = 0;
            do {
                for (std::size_t i = 0; i < idx.size(); ++i) env[s->bound[i]] = idx[i];
                total += eval_rec(s->body, env);
            } while (next_assignment(idx, cards));
            for (const auto& b : s->bound) env.erase(b);
            return total;
        }
        if (auto* p = std::get_if<Expression::Product>(&e->node)) {
            double r = 1;
            for (const auto& f : p->factors) r *= eval_rec(f, env);
            return r;
        }
        auto* q = std::get_if<Expression::Quotient>(&e->node);
        double den = eval_rec(q->den, env);
        if (den <= 0.0) throw oracle_error("zero denominator: positivity violated");
        return eval_rec(q->num, env) / den;
    }

    // P(vars1 = env-values, vars2 = env-values) from the memoized marginal
    // over the union of base names.
    double marginal_value(const std::vector<VariableId>& vars1,
                          const std::vector<VariableId>& vars2,
                          const std::map<VariableId, int>& env) {
        std::vector<int> bases;
        auto add = [&](const std::vector<VariableId>& vs) {
            for (const auto& v : vs) {
                int i = base_index(v.name);
                if (std::find(bases.begin(), bases.end(), i) == bases.end()) bases.push_back(i);
            }
        };
        add(vars1);
        add(vars2);
        std::sort(bases.begin(), bases.end());
        const ProbTable& m = marginal(bases);
        std::vector<int> idx(bases.size(), -1);
        auto fill = [&](const std::vector<VariableId>& vs) {
            for (const auto& v : vs) {
                auto it = env.find(v);
                if (it == env.end()) throw oracle_error("unbound variable " + to_string(v));
                int slot = int(std::find(bases.begin(), bases.end(), base_index(v.name)) - bases.begin());
                idx[std::size_t(slot)] = it->second;
            }
        };
        fill(vars1);
        fill(vars2);
        return m.at(idx);
    }

    int base_index(const std::string& base) const {
        for (std::size_t i = 0; i < joint_.variables.size(); ++i)
            if (joint_.variables[i] == base) return int(i);
        throw oracle_error("expression references unknown variable " + base);
    }

    const ProbTable& marginal(const std::vector<int>& bases) {
        auto it = marginals_.find(bases);
        if (it != marginals_.end()) return it->second;
        std::vector<std::string> vars;
        std::vector<int> cards;
        for (int b : bases) {
            vars.push_back(joint_.variables[std::size_t(b)]);
            cards.push_back(joint_.cards[std::size_t(b)]);
        }
        ProbTable t = ProbTable::zeros(vars, cards);
        std::vector<int> idx(joint_.variables.size(), 0);
        std::vector<int> sub(bases.size(), 0);
        do {
            for (std::size_t i = 0; i < bases.size(); ++i) sub[i] = idx[std::size_t(bases[i])];
            t.at(sub) += joint_.at(idx);
        } while (next_assignment(idx, joint_.cards));
        return marginals_.emplace(bases, std::move(t)).first->second;
    }

    const ProbTable& joint_;
    std::map<std::vector<int>, ProbTable> marginals_;
};

inline double eval_expression(const Expr& e, const ProbTable& joint,
                              const std::map<VariableId, int>& assignment) {
    Evaluator ev(joint);
    return ev.eval(e, assignment);
}

// Checks an identification expression against the truncated-factorization
// ground truth: every (x, y) cell must match, for every assignment of free
// variables the expression carries beyond x and y. Returns the largest
// absolute difference.
inline double verify_expression(const Expr& e, const DiscreteScm& m, const VertexSet& y,
                                const VertexSet& x) {
    ProbTable joint = observational_joint(m);
    Evaluator ev(joint);
    VertexSet extras;
    for (const auto& v : free_vars(e)) {
        if (v.primes != 0) throw oracle_error("free variable with primes: " + to_string(v));
        if (!contains(y, v.name) && !contains(x, v.name)) extras.push_back(v.name);
    }
    std::vector<int> x_cards, y_cards, extra_cards;
    for (const auto& v : x) x_cards.push_back(m.card.at(v));
    for (const auto& v : y) y_cards.push_back(m.card.at(v));
    for (const auto& v : extras) extra_cards.push_back(m.card.at(v));
    double worst = 0;
    std::vector<int> xi(x.size(), 0);
    do {
        std::map<std::string, int> x_assign;
        for (std::size_t i = 0; i < x.size(); ++i) x_assign[x[i]] = xi[i];
        ProbTable truth = interventional_truncated(m, x_assign, y);
        std::vector<int> yi(y.size(), 0);
        do {
            std::vector<int> ei(extras.size(), 0);
            do {
                std::map<VariableId, int> env;
                for (std::size_t i = 0; i < x.size(); ++i) env[VariableId(x[i])] = xi[i];
                for (std::size_t i = 0; i < y.size(); ++i) env[VariableId(y[i])] = yi[i];
                for (std::size_t i = 0; i < extras.size(); ++i) env[VariableId(extras[i])] = ei[i];
                double got = ev.eval(e, env);
                worst = std::max(worst, std::fabs(got - truth.at(yi)));
            } while (next_assignment(ei, extra_cards));
        } while (next_assignment(yi, y_cards));
    } while (next_assignment(xi, x_cards));
    return worst;
}

}  // namespace causal
