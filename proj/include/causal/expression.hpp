#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "causal/variable.hpp"

namespace causal {

struct Expression;
using Expr = std::shared_ptr<const Expression>;

// Symbolic probability formula. Atom is a (conditional) probability term
// P(out | given); Sum binds summation variables over a body; Product and
// Quotient are the usual combinators. Values are immutable and shared.
struct Expression {
    struct Atom {
        std::vector<VariableId> out;
        std::vector<VariableId> given;
    };
    struct Sum {
        std::vector<VariableId> bound;  // nonempty, duplicate-free
        Expr body;
    };
    struct Product {
        std::vector<Expr> factors;
    };
    struct Quotient {
        Expr num;
        Expr den;
    };

    std::variant<Atom, Sum, Product, Quotient> node;
};

inline Expr make_atom(std::vector<VariableId> out, std::vector<VariableId> given = {}) {
    return std::make_shared<Expression>(Expression{Expression::Atom{std::move(out), std::move(given)}});
}

inline Expr make_sum(std::vector<VariableId> bound, Expr body) {
    if (bound.empty()) return body;
    std::set<VariableId> dedup(bound.begin(), bound.end());
    if (dedup.size() != bound.size()) throw std::invalid_argument("duplicate summation variable");
    return std::make_shared<Expression>(Expression{Expression::Sum{std::move(bound), std::move(body)}});
}

// Flattens nested products and unwraps singletons.
inline Expr make_product(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    for (auto& f : factors) {
        if (auto* p = std::get_if<Expression::Product>(&f->node))
            flat.insert(flat.end(), p->factors.begin(), p->factors.end());
        else
            flat.push_back(f);
    }
    if (flat.empty()) throw std::invalid_argument("empty product");
    if (flat.size() == 1) return flat.front();
    return std::make_shared<Expression>(Expression{Expression::Product{std::move(flat)}});
}

inline Expr make_quotient(Expr num, Expr den) {
    return std::make_shared<Expression>(Expression{Expression::Quotient{std::move(num), std::move(den)}});
}

inline bool expr_equal(const Expr& a, const Expr& b);

namespace detail {

inline bool vars_equal(const std::vector<VariableId>& a, const std::vector<VariableId>& b) {
    return a == b;
}

}  // namespace detail

inline bool expr_equal(const Expr& a, const Expr& b) {
    if (a.get() == b.get()) return true;
    if (a->node.index() != b->node.index()) return false;
    if (auto* x = std::get_if<Expression::Atom>(&a->node)) {
        auto* y = std::get_if<Expression::Atom>(&b->node);
        return detail::vars_equal(x->out, y->out) && detail::vars_equal(x->given, y->given);
    }
    if (auto* x = std::get_if<Expression::Sum>(&a->node)) {
        auto* y = std::get_if<Expression::Sum>(&b->node);
        return detail::vars_equal(x->bound, y->bound) && expr_equal(x->body, y->body);
    }
    if (auto* x = std::get_if<Expression::Product>(&a->node)) {
        auto* y = std::get_if<Expression::Product>(&b->node);
        if (x->factors.size() != y->factors.size()) return false;
        for (std::size_t i = 0; i < x->factors.size(); ++i)
            if (!expr_equal(x->factors[i], y->factors[i])) return false;
        return true;
    }
    auto* x = std::get_if<Expression::Quotient>(&a->node);
    auto* y = std::get_if<Expression::Quotient>(&b->node);
    return expr_equal(x->num, y->num) && expr_equal(x->den, y->den);
}

namespace detail {

inline void free_vars_rec(const Expr& e, std::set<VariableId>& bound, std::set<VariableId>& out) {
    if (auto* a = std::get_if<Expression::Atom>(&e->node)) {
        for (const auto& v : a->out)
            if (!bound.count(v)) out.insert(v);
        for (const auto& v : a->given)
            if (!bound.count(v)) out.insert(v);
    } else if (auto* s = std::get_if<Expression::Sum>(&e->node)) {
        std::vector<VariableId> added;
        for (const auto& v : s->bound)
            if (bound.insert(v).second) added.push_back(v);
        free_vars_rec(s->body, bound, out);
        for (const auto& v : added) bound.erase(v);
    } else if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        for (const auto& f : p->factors) free_vars_rec(f, bound, out);
    } else {
        auto* q = std::get_if<Expression::Quotient>(&e->node);
        free_vars_rec(q->num, bound, out);
        free_vars_rec(q->den, bound, out);
    }
}

// Renames free occurrences of `from` to `to`, stopping at shadowing binders.
inline Expr subst_free(const Expr& e, const VariableId& from, const VariableId& to) {
    if (auto* a = std::get_if<Expression::Atom>(&e->node)) {
        auto map_vars = [&](std::vector<VariableId> vs) {
            for (auto& v : vs)
                if (v == from) v = to;
            return vs;
        };
        return make_atom(map_vars(a->out), map_vars(a->given));
    }
    if (auto* s = std::get_if<Expression::Sum>(&e->node)) {
        if (std::find(s->bound.begin(), s->bound.end(), from) != s->bound.end()) return e;
        return make_sum(s->bound, subst_free(s->body, from, to));
    }
    if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        std::vector<Expr> fs;
        for (const auto& f : p->factors) fs.push_back(subst_free(f, from, to));
        return make_product(std::move(fs));
    }
    auto* q = std::get_if<Expression::Quotient>(&e->node);
    return make_quotient(subst_free(q->num, from, to), subst_free(q->den, from, to));
}

}  // namespace detail

inline std::set<VariableId> free_vars(const Expr& e) {
    std::set<VariableId> bound, out;
    detail::free_vars_rec(e, bound, out);
    return out;
}

namespace detail {

inline Expr rename_bound_rec(const Expr& e, const std::set<VariableId>& root_free,
                             std::set<VariableId>& active) {
    if (std::get_if<Expression::Atom>(&e->node)) return e;
    if (auto* s = std::get_if<Expression::Sum>(&e->node)) {
        std::vector<VariableId> new_bound;
        Expr body = s->body;
        std::vector<VariableId> entered;
        for (const auto& b : s->bound) {
            VariableId nb = b;
            if (root_free.count(nb) || active.count(nb)) {
                int k = 1;
                while (root_free.count(nb.with_primes(k)) || active.count(nb.with_primes(k))) ++k;
                nb = nb.with_primes(k);
                body = subst_free(body, b, nb);
            }
            new_bound.push_back(nb);
            active.insert(nb);
            entered.push_back(nb);
        }
        Expr nb_body = rename_bound_rec(body, root_free, active);
        for (const auto& v : entered) active.erase(v);
        return make_sum(std::move(new_bound), nb_body);
    }
    if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        std::vector<Expr> fs;
        for (const auto& f : p->factors) fs.push_back(rename_bound_rec(f, root_free, active));
        return make_product(std::move(fs));
    }
    auto* q = std::get_if<Expression::Quotient>(&e->node);
    return make_quotient(rename_bound_rec(q->num, root_free, active),
                         rename_bound_rec(q->den, root_free, active));
}

}  // namespace detail

// Gives every bound variable that collides with a free variable of the whole
// expression, or with another binder enclosing it, the smallest prime count
// that makes it unique. Free variables are untouched.
inline Expr rename_bound(const Expr& e) {
    std::set<VariableId> root_free = free_vars(e);
    std::set<VariableId> active;
    return detail::rename_bound_rec(e, root_free, active);
}

// ---------------------------------------------------------------------------
// Canonicalization: flattens products, merges nested sums, sorts factor lists,
// binder lists and atom variable lists, and renames bound variables to a
// positional scheme ("#1", "#2", ...; '#' cannot occur in user names). Two
// expressions denote the same formula up to commutativity and alpha-renaming
// iff their canonical forms are structurally equal.
// ---------------------------------------------------------------------------

namespace detail {

// unique temporary binder names so sums can be merged without capture
inline Expr freshen_binders(const Expr& e, int& counter) {
    if (std::get_if<Expression::Atom>(&e->node)) return e;
    if (auto* s = std::get_if<Expression::Sum>(&e->node)) {
        Expr body = s->body;
        std::vector<VariableId> bs;
        for (const auto& b : s->bound) {
            VariableId nb("#t" + std::to_string(counter++));
            body = subst_free(body, b, nb);
            bs.push_back(nb);
        }
        return make_sum(std::move(bs), freshen_binders(body, counter));
    }
    if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        std::vector<Expr> fs;
        for (const auto& f : p->factors) fs.push_back(freshen_binders(f, counter));
        return make_product(std::move(fs));
    }
    auto* q = std::get_if<Expression::Quotient>(&e->node);
    return make_quotient(freshen_binders(q->num, counter), freshen_binders(q->den, counter));
}

inline Expr merge_sums(const Expr& e) {
    if (std::get_if<Expression::Atom>(&e->node)) return e;
    if (auto* s = std::get_if<Expression::Sum>(&e->node)) {
        Expr body = merge_sums(s->body);
        std::vector<VariableId> bs = s->bound;
        while (auto* inner = std::get_if<Expression::Sum>(&body->node)) {
            bs.insert(bs.end(), inner->bound.begin(), inner->bound.end());
            body = inner->body;
        }
        return make_sum(std::move(bs), body);
    }
    if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        std::vector<Expr> fs;
        for (const auto& f : p->factors) fs.push_back(merge_sums(f));
        return make_product(std::move(fs));
    }
    auto* q = std::get_if<Expression::Quotient>(&e->node);
    return make_quotient(merge_sums(q->num), merge_sums(q->den));
}

struct CanonNames {
    std::map<std::string, std::string> assigned;  // temp name -> canonical name
    std::string key_of(const VariableId& v) const {
        if (v.name.rfind("#t", 0) == 0) {
            auto it = assigned.find(v.name);
            return it == assigned.end() ? std::string("?") : it->second;
        }
        return to_string(v);
    }
};

inline void canon_key(const Expr& e, const CanonNames& names, std::string& out) {
    if (auto* a = std::get_if<Expression::Atom>(&e->node)) {
        std::vector<std::string> os, gs;
        for (const auto& v : a->out) os.push_back(names.key_of(v));
        for (const auto& v : a->given) gs.push_back(names.key_of(v));
        std::sort(os.begin(), os.end());
        std::sort(gs.begin(), gs.end());
        out += "P(";
        for (const auto& s : os) out += s + ",";
        out += "|";
        for (const auto& s : gs) out += s + ",";
        out += ")";
    } else if (auto* s = std::get_if<Expression::Sum>(&e->node)) {
        out += "S[";
        canon_key(s->body, names, out);
        out += "]";
    } else if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        std::vector<std::string> ks;
        for (const auto& f : p->factors) {
            std::string k;
            canon_key(f, names, k);
            ks.push_back(std::move(k));
        }
        std::sort(ks.begin(), ks.end());
        out += "*(";
        for (const auto& k : ks) out += k + ";";
        out += ")";
    } else {
        auto* q = std::get_if<Expression::Quotient>(&e->node);
        out += "/(";
        canon_key(q->num, names, out);
        out += ";";
        canon_key(q->den, names, out);
        out += ")";
    }
}

inline std::string canon_key(const Expr& e, const CanonNames& names) {
    std::string k;
    canon_key(e, names, k);
    return k;
}

// Sorts products and binder lists under the current name assignment.
inline Expr canon_sort(const Expr& e, const CanonNames& names) {
    if (auto* a = std::get_if<Expression::Atom>(&e->node)) {
        auto by_key = [&](const VariableId& x, const VariableId& y) {
            return names.key_of(x) < names.key_of(y);
        };
        auto out = a->out;
        auto given = a->given;
        std::stable_sort(out.begin(), out.end(), by_key);
        std::stable_sort(given.begin(), given.end(), by_key);
        return make_atom(std::move(out), std::move(given));
    }
    if (auto* s = std::get_if<Expression::Sum>(&e->node)) {
        Expr body = canon_sort(s->body, names);
        auto bs = s->bound;
        // order binders by the body rendered with that binder highlighted
        auto binder_key = [&](const VariableId& b) {
            CanonNames marked = names;
            marked.assigned[b.name] = "!";
            return canon_key(body, marked);
        };
        std::stable_sort(bs.begin(), bs.end(), [&](const VariableId& x, const VariableId& y) {
            return binder_key(x) < binder_key(y);
        });
        return make_sum(std::move(bs), body);
    }
    if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        std::vector<Expr> fs;
        for (const auto& f : p->factors) fs.push_back(canon_sort(f, names));
        std::stable_sort(fs.begin(), fs.end(), [&](const Expr& x, const Expr& y) {
            return canon_key(x, names) < canon_key(y, names);
        });
        return make_product(std::move(fs));
    }
    auto* q = std::get_if<Expression::Quotient>(&e->node);
    return make_quotient(canon_sort(q->num, names), canon_sort(q->den, names));
}

inline void canon_assign(const Expr& e, CanonNames& names, int& next) {
    if (std::get_if<Expression::Atom>(&e->node)) return;
    if (auto* s = std::get_if<Expression::Sum>(&e->node)) {
        for (const auto& b : s->bound)
            if (!names.assigned.count(b.name)) names.assigned[b.name] = "#" + std::to_string(next++);
        canon_assign(s->body, names, next);
    } else if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        for (const auto& f : p->factors) canon_assign(f, names, next);
    } else {
        auto* q = std::get_if<Expression::Quotient>(&e->node);
        canon_assign(q->num, names, next);
        canon_assign(q->den, names, next);
    }
}

inline Expr canon_apply_names(const Expr& e, const CanonNames& names) {
    if (auto* a = std::get_if<Expression::Atom>(&e->node)) {
        auto map_vars = [&](std::vector<VariableId> vs) {
            for (auto& v : vs)
                if (v.name.rfind("#t", 0) == 0) v = VariableId(names.assigned.at(v.name));
            return vs;
        };
        return make_atom(map_vars(a->out), map_vars(a->given));
    }
    if (auto* s = std::get_if<Expression::Sum>(&e->node)) {
        std::vector<VariableId> bs;
        for (const auto& b : s->bound) bs.push_back(VariableId(names.assigned.at(b.name)));
        return make_sum(std::move(bs), canon_apply_names(s->body, names));
    }
    if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        std::vector<Expr> fs;
        for (const auto& f : p->factors) fs.push_back(canon_apply_names(f, names));
        return make_product(std::move(fs));
    }
    auto* q = std::get_if<Expression::Quotient>(&e->node);
    return make_quotient(canon_apply_names(q->num, names), canon_apply_names(q->den, names));
}

}  // namespace detail

inline Expr canonicalize(const Expr& e) {
    int counter = 0;
    Expr cur = detail::merge_sums(detail::freshen_binders(e, counter));
    detail::CanonNames names;
    // Iterative refinement: sorting depends on names, names on traversal
    // order after sorting. Converges quickly on formula-sized inputs.
    std::string prev_key;
    for (int round = 0; round < 12; ++round) {
        cur = detail::canon_sort(cur, names);
        detail::CanonNames next;
        int n = 1;
        detail::canon_assign(cur, next, n);
        std::string key = detail::canon_key(cur, next);
        bool stable = (next.assigned == names.assigned) && (key == prev_key);
        names = std::move(next);
        prev_key = std::move(key);
        if (stable) break;
    }
    cur = detail::canon_sort(cur, names);
    return detail::canon_apply_names(cur, names);
}

inline bool canonical_equal(const Expr& a, const Expr& b) {
    return expr_equal(canonicalize(a), canonicalize(b));
}

// Node and variable counts. Node counts are taken on the canonical form (so
// mergeable sum towers count once); the variable count is the number of
// distinct base names, primes marking bound copies of an existing base name.
struct ExpressionMetrics {
    int sum_nodes = 0;
    int quotient_nodes = 0;
    int atom_nodes = 0;
    int distinct_variables = 0;
};

namespace detail {

inline void count_nodes(const Expr& e, ExpressionMetrics& m) {
    if (std::get_if<Expression::Atom>(&e->node)) {
        m.atom_nodes++;
    } else if (auto* s = std::get_if<Expression::Sum>(&e->node)) {
        m.sum_nodes++;
        count_nodes(s->body, m);
    } else if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        for (const auto& f : p->factors) count_nodes(f, m);
    } else {
        auto* q = std::get_if<Expression::Quotient>(&e->node);
        m.quotient_nodes++;
        count_nodes(q->num, m);
        count_nodes(q->den, m);
    }
}

inline void collect_base_names(const Expr& e, std::set<std::string>& names) {
    if (auto* a = std::get_if<Expression::Atom>(&e->node)) {
        for (const auto& v : a->out) names.insert(v.name);
        for (const auto& v : a->given) names.insert(v.name);
    } else if (auto* s = std::get_if<Expression::Sum>(&e->node)) {
        for (const auto& v : s->bound) names.insert(v.name);
        collect_base_names(s->body, names);
    } else if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        for (const auto& f : p->factors) collect_base_names(f, names);
    } else {
        auto* q = std::get_if<Expression::Quotient>(&e->node);
        collect_base_names(q->num, names);
        collect_base_names(q->den, names);
    }
}

}  // namespace detail

inline ExpressionMetrics metrics(const Expr& e) {
    ExpressionMetrics m;
    detail::count_nodes(canonicalize(e), m);
    std::set<std::string> names;
    detail::collect_base_names(e, names);
    m.distinct_variables = int(names.size());
    return m;
}

// Collects every variable appearing anywhere (free or bound), by base name.
inline std::set<std::string> variable_base_names(const Expr& e) {
    std::set<std::string> names;
    detail::collect_base_names(e, names);
    return names;
}

}  // namespace causal
