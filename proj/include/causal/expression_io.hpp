#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "causal/expression.hpp"

namespace causal {

enum class RenderFormat { Text, Latex, Json };

namespace detail {

inline std::string lower(std::string s) {
    for (auto& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

inline std::string text_var(const VariableId& v) {
    std::string s = lower(v.name);
    for (int i = 0; i < v.primes; ++i) s += '\'';
    return s;
}

// Z2 -> z_2, X -> x, primes as ^{\prime}.
inline std::string latex_var(const VariableId& v) {
    std::string letters, digits;
    for (char c : v.name) (std::isdigit(static_cast<unsigned char>(c)) ? digits : letters) += c;
    std::string s = lower(letters);
    if (!digits.empty()) s += digits.size() == 1 ? "_" + digits : "_{" + digits + "}";
    if (v.primes > 0) {
        s += "^{";
        for (int i = 0; i < v.primes; ++i) s += "\\prime";
        s += "}";
    }
    return s;
}

inline std::string join_vars(const std::vector<VariableId>& vs, bool latex) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ",";
        s += latex ? latex_var(vs[i]) : text_var(vs[i]);
    }
    return s;
}

inline std::string render_text_rec(const Expr& e, bool in_quotient) {
    if (auto* a = std::get_if<Expression::Atom>(&e->node)) {
        std::string s = "P(" + join_vars(a->out, false);
        if (!a->given.empty()) s += "|" + join_vars(a->given, false);
        return s + ")";
    }
    if (auto* s = std::get_if<Expression::Sum>(&e->node))
        return "sum_{" + join_vars(s->bound, false) + "} [ " + render_text_rec(s->body, false) + " ]";
    if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        std::string s;
        for (std::size_t i = 0; i < p->factors.size(); ++i) {
            if (i) s += " ";
            const Expr& f = p->factors[i];
            bool wrap = std::holds_alternative<Expression::Quotient>(f->node);
            s += wrap ? "( " + render_text_rec(f, false) + " )" : render_text_rec(f, false);
        }
        return in_quotient ? "( " + s + " )" : s;
    }
    auto* q = std::get_if<Expression::Quotient>(&e->node);
    return render_text_rec(q->num, true) + " / " + render_text_rec(q->den, true);
}

// Conditioning lists render with unprimed variables first, matching the
// typeset convention for bound copies.
inline std::vector<VariableId> latex_given_order(std::vector<VariableId> vs) {
    std::stable_partition(vs.begin(), vs.end(), [](const VariableId& v) { return v.primes == 0; });
    return vs;
}

inline std::string render_latex_rec(const Expr& e) {
    if (auto* a = std::get_if<Expression::Atom>(&e->node)) {
        std::string s = "P(" + join_vars(a->out, true);
        if (!a->given.empty()) s += "|" + join_vars(latex_given_order(a->given), true);
        return s + ")";
    }
    if (auto* s = std::get_if<Expression::Sum>(&e->node))
        return "\\sum_{" + join_vars(s->bound, true) + "}" + render_latex_rec(s->body);
    if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        std::string s;
        for (const auto& f : p->factors) {
            bool wrap = std::holds_alternative<Expression::Sum>(f->node);
            s += wrap ? "\\left(" + render_latex_rec(f) + "\\right)" : render_latex_rec(f);
        }
        return s;
    }
    auto* q = std::get_if<Expression::Quotient>(&e->node);
    return "\\frac{" + render_latex_rec(q->num) + "}{" + render_latex_rec(q->den) + "}";
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const VariableId& v) {
    return nlohmann::ordered_json{{"name", v.name}, {"primes", v.primes}};
}

inline nlohmann::ordered_json to_json(const Expr& e) {
    using J = nlohmann::ordered_json;
    auto vars = [](const std::vector<VariableId>& vs) {
        J a = J::array();
        for (const auto& v : vs) a.push_back(to_json(v));
        return a;
    };
    if (auto* a = std::get_if<Expression::Atom>(&e->node))
        return J{{"atom", J{{"out", vars(a->out)}, {"given", vars(a->given)}}}};
    if (auto* s = std::get_if<Expression::Sum>(&e->node))
        return J{{"sum", J{{"bound", vars(s->bound)}, {"body", to_json(s->body)}}}};
    if (auto* p = std::get_if<Expression::Product>(&e->node)) {
        J fs = J::array();
        for (const auto& f : p->factors) fs.push_back(to_json(f));
        return J{{"prod", fs}};
    }
    auto* q = std::get_if<Expression::Quotient>(&e->node);
    return J{{"div", J{{"num", to_json(q->num)}, {"den", to_json(q->den)}}}};
}

inline VariableId variable_from_json(const nlohmann::json& j) {
    return VariableId(j.at("name").get<std::string>(), j.value("primes", 0));
}

inline Expr expr_from_json(const nlohmann::json& j) {
    auto vars = [](const nlohmann::json& a) {
        std::vector<VariableId> vs;
        for (const auto& v : a) vs.push_back(variable_from_json(v));
        return vs;
    };
    if (j.contains("atom"))
        return make_atom(vars(j["atom"].at("out")), vars(j["atom"].at("given")));
    if (j.contains("sum"))
        return make_sum(vars(j["sum"].at("bound")), expr_from_json(j["sum"].at("body")));
    if (j.contains("prod")) {
        std::vector<Expr> fs;
        for (const auto& f : j["prod"]) fs.push_back(expr_from_json(f));
        return make_product(std::move(fs));
    }
    if (j.contains("div"))
        return make_quotient(expr_from_json(j["div"].at("num")), expr_from_json(j["div"].at("den")));
    throw std::invalid_argument("unknown expression node: " + j.dump());
}

inline std::string render(const Expr& e, RenderFormat fmt) {
    switch (fmt) {
        case RenderFormat::Text: return detail::render_text_rec(e, false);
        case RenderFormat::Latex: return detail::render_latex_rec(e);
        default: return to_json(e).dump();
    }
}

// ---------------------------------------------------------------------------
// Text formula parser for the render text format:
//   expr    := factor+
//   factor  := primary ( '/' primary )?
//   primary := 'sum_{' vars '}' '[' expr ']' | 'P(' vars ('|' vars)? ')'
//              | '(' expr ')'
// Variable names are normalized to upper case so formulas written in the
// conventional lower case line up with graph vertex labels.
// ---------------------------------------------------------------------------

namespace detail {

struct FormulaParser {
    std::string s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(const std::string& tok) {
        skip();
        if (s.compare(i, tok.size(), tok) == 0) {
            i += tok.size();
            return true;
        }
        return false;
    }
    void expect(const std::string& tok) {
        if (!eat(tok)) throw std::invalid_argument("formula parse error at offset " + std::to_string(i) + ": expected '" + tok + "'");
    }
    VariableId variable() {
        skip();
        std::string name;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            name += char(std::toupper(static_cast<unsigned char>(s[i++])));
        if (name.empty()) throw std::invalid_argument("formula parse error: expected variable at offset " + std::to_string(i));
        int primes = 0;
        while (i < s.size() && s[i] == '\'') {
            ++primes;
            ++i;
        }
        return VariableId(name, primes);
    }
    std::vector<VariableId> variables(char stop1, char stop2) {
        std::vector<VariableId> vs;
        for (;;) {
            vs.push_back(variable());
            skip();
            if (i < s.size() && s[i] == ',') {
                ++i;
                continue;
            }
            if (i < s.size() && (s[i] == stop1 || s[i] == stop2)) return vs;
            throw std::invalid_argument("formula parse error at offset " + std::to_string(i));
        }
    }
    bool at_primary() {
        skip();
        if (i >= s.size()) return false;
        return s[i] == '(' || s.compare(i, 4, "sum_") == 0 || (s[i] == 'P' && i + 1 < s.size() && s[i + 1] == '(');
    }
    Expr primary() {
        skip();
        if (eat("sum_{")) {
            auto bound = variables('}', '}');
            expect("}");
            expect("[");
            Expr body = expr();
            expect("]");
            return make_sum(std::move(bound), body);
        }
        if (s.compare(i, 2, "P(") == 0) {
            i += 2;
            auto out = variables('|', ')');
            std::vector<VariableId> given;
            skip();
            if (s[i] == '|') {
                ++i;
                given = variables(')', ')');
            }
            expect(")");
            return make_atom(std::move(out), std::move(given));
        }
        expect("(");
        Expr e = expr();
        expect(")");
        return e;
    }
    Expr factor() {
        Expr num = primary();
        skip();
        if (i < s.size() && s[i] == '/') {
            ++i;
            return make_quotient(num, primary());
        }
        return num;
    }
    Expr expr() {
        std::vector<Expr> fs;
        fs.push_back(factor());
        while (at_primary()) fs.push_back(factor());
        return make_product(std::move(fs));
    }
};

}  // namespace detail

inline Expr parse_formula(const std::string& text) {
    detail::FormulaParser p{text};
    Expr e = p.expr();
    p.skip();
    if (p.i != text.size()) throw std::invalid_argument("formula parse error: trailing input at offset " + std::to_string(p.i));
    return e;
}

}  // namespace causal
