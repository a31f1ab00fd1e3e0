//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include "swstab/polynomial.hpp"
#include "swstab/rational.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace swstab {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonDifferentiableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPolynomialError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class NodeKind { Constant, Variable, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Min, Max };

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    NodeKind kind;
    Rational value;   // Constant
    int var = -1;     // Variable (0-based)
    unsigned exponent = 0; // Pow
    NodePtr a, b;     // children
};

/// Scalar field on R^d as an immutable expression tree, with an exact sparse
/// polynomial form attached whenever the tree is polynomial (no sin/cos/exp/
/// min/max and no division by a non-constant).
///
/// Evaluation of a polynomial-backed Expr goes through exact rational
/// arithmetic and rounds once; tree evaluation is plain double arithmetic.
class Expr {
  public:
    Expr() = default;

    static Expr constant(int dim, Rational c) {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Constant;
        n->value = c;
        return Expr(dim, std::move(n), PolyQ::constant(dim, c));
    }

    /// Variable x_{index1} with a 1-based surface index.
    static Expr variable(int dim, int index1) {
        if (index1 < 1 || index1 > dim)
            throw std::invalid_argument("variable index out of range: x" + std::to_string(index1));
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Variable;
        n->var = index1 - 1;
        return Expr(dim, std::move(n), PolyQ::variable(dim, index1 - 1));
    }

    static Expr from_poly(PolyQ p) {
        int dim = p.dim();
        return Expr(dim, nullptr, std::move(p)); // tree synthesized lazily for printing
    }

    int dim() const { return dim_; }
    bool is_polynomial() const { return poly_.has_value(); }
    const PolyQ& poly() const {
        if (!poly_) throw NonPolynomialError("expression has no polynomial form");
        return *poly_;
    }
    bool is_zero() const { return poly_ && poly_->is_zero(); }

    static Expr add(const Expr& x, const Expr& y) { return binary(NodeKind::Add, x, y); }
    static Expr sub(const Expr& x, const Expr& y) { return binary(NodeKind::Sub, x, y); }
    static Expr mul(const Expr& x, const Expr& y) { return binary(NodeKind::Mul, x, y); }

    static Expr div(const Expr& x, const Expr& y) {
        if (y.poly_ && y.poly_->total_degree() <= 0) {
            Rational c = y.poly_->constant_term();
            if (c == 0) throw EvalError("division by zero constant");
            if (x.poly_) return from_poly(x.poly_->scaled(Rational(1) / c));
        }
        return Expr(x.dim_, make_node(NodeKind::Div, x.node(), y.node()), std::nullopt);
    }

    static Expr pow(const Expr& x, unsigned e) {
        if (e == 0) return constant(x.dim_, 1);
        if (e == 1) return x;
        if (x.poly_) return from_poly(x.poly_->pow(e));
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Pow;
        n->exponent = e;
        n->a = x.node();
        return Expr(x.dim_, std::move(n), std::nullopt);
    }

    static Expr apply(NodeKind fn, const Expr& x, const Expr* y = nullptr) {
        auto n = std::make_shared<ExprNode>();
        n->kind = fn;
        n->a = x.node();
        if (y) n->b = y->node();
        return Expr(x.dim_, std::move(n), std::nullopt);
    }

    /// Evaluate at x. Polynomial-backed expressions are evaluated exactly
    /// (inputs are dyadic rationals) and rounded once at the end.
    double evaluate(std::span<const double> x) const {
        check_point(x);
        if (poly_) {
            std::vector<Rational> xr(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) xr[i] = rational_from_double(x[i]);
            return to_double(poly_->eval<Rational>(xr));
        }
        return eval_node(*node(), x);
    }

    /// Plain double evaluation; the fast path for samplers and integration.
    double eval(std::span<const double> x) const {
        check_point(x);
        if (poly_) return poly_->eval_double(x);
        return eval_node(*node(), x);
    }

    Rational eval_exact(std::span<const Rational> x) const {
        return poly().eval<Rational>(x);
    }

    /// Exact symbolic partial derivative with respect to x_{index1} (1-based).
    /// Rejected on min/max nodes.
    Expr partial(int index1) const {
        if (index1 < 1 || index1 > dim_)
            throw std::invalid_argument("partial: variable index out of range");
        if (poly_) return from_poly(poly_->partial(index1 - 1));
        return partial_node(*node(), index1 - 1);
    }

    std::string to_string() const {
        if (poly_) return poly_->to_string();
        return print_node(*node(), 0);
    }

    /// Tree (synthesizing one from the polynomial if needed).
    NodePtr node() const {
        if (node_) return node_;
        // build a canonical tree from the polynomial: sum of monomial products
        Expr acc = constant_tree(dim_, 0);
        bool first = true;
        for (const auto& [m, c] : poly_->terms()) {
            Expr term = constant_tree(dim_, c);
            for (int i = 0; i < dim_; ++i)
                for (int e = 0; e < m[i]; ++e) term = Expr(dim_, make_node(NodeKind::Mul, term.node_, variable_tree(dim_, i).node_), std::nullopt);
            acc = first ? term : Expr(dim_, make_node(NodeKind::Add, acc.node_, term.node_), std::nullopt);
            first = false;
        }
        return acc.node_;
    }

    static Expr parse(const std::string& text, int dim);

  private:
    Expr(int dim, NodePtr node, std::optional<PolyQ> poly)
        : dim_(dim), node_(std::move(node)), poly_(std::move(poly)) {}

    static Expr constant_tree(int dim, Rational c) {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Constant;
        n->value = std::move(c);
        return Expr(dim, std::move(n), std::nullopt);
    }
    static Expr variable_tree(int dim, int i0) {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Variable;
        n->var = i0;
        return Expr(dim, std::move(n), std::nullopt);
    }

    static NodePtr make_node(NodeKind k, NodePtr a, NodePtr b) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    static Expr binary(NodeKind k, const Expr& x, const Expr& y) {
        if (x.dim_ != y.dim_) throw std::invalid_argument("expression dimension mismatch");
        if (x.poly_ && y.poly_) {
            switch (k) {
                case NodeKind::Add: return from_poly(*x.poly_ + *y.poly_);
                case NodeKind::Sub: return from_poly(*x.poly_ - *y.poly_);
                case NodeKind::Mul: return from_poly(*x.poly_ * *y.poly_);
                default: break;
            }
        }
        return Expr(x.dim_, make_node(k, x.node(), y.node()), std::nullopt);
    }

    void check_point(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != dim_)
            throw std::invalid_argument("evaluation point has wrong dimension");
    }

    static double eval_node(const ExprNode& n, std::span<const double> x) {
        switch (n.kind) {
            case NodeKind::Constant: return to_double(n.value);
            case NodeKind::Variable: return x[n.var];
            case NodeKind::Add: return eval_node(*n.a, x) + eval_node(*n.b, x);
            case NodeKind::Sub: return eval_node(*n.a, x) - eval_node(*n.b, x);
            case NodeKind::Mul: return eval_node(*n.a, x) * eval_node(*n.b, x);
            case NodeKind::Div: {
                double den = eval_node(*n.b, x);
                if (den == 0.0) throw EvalError("division by zero");
                return eval_node(*n.a, x) / den;
            }
            case NodeKind::Pow: {
                double b = eval_node(*n.a, x);
                double r = 1.0;
                for (unsigned i = 0; i < n.exponent; ++i) r *= b;
                return r;
            }
            case NodeKind::Sin: return std::sin(eval_node(*n.a, x));
            case NodeKind::Cos: return std::cos(eval_node(*n.a, x));
            case NodeKind::Exp: return std::exp(eval_node(*n.a, x));
            case NodeKind::Min: return std::min(eval_node(*n.a, x), eval_node(*n.b, x));
            case NodeKind::Max: return std::max(eval_node(*n.a, x), eval_node(*n.b, x));
        }
        throw EvalError("corrupt expression node");
    }

    // Tree-path differentiation; used only when no polynomial form exists.
    Expr partial_node(const ExprNode& n, int j) const {
        auto wrap = [&](NodePtr p) { return Expr(dim_, std::move(p), std::nullopt); };
        switch (n.kind) {
            case NodeKind::Constant: return constant(dim_, 0);
            case NodeKind::Variable: return constant(dim_, n.var == j ? 1 : 0);
            case NodeKind::Add: return add(partial_node(*n.a, j), partial_node(*n.b, j));
            case NodeKind::Sub: return sub(partial_node(*n.a, j), partial_node(*n.b, j));
            case NodeKind::Mul: {
                Expr fa = wrap(n.a), fb = wrap(n.b);
                return add(mul(partial_node(*n.a, j), fb), mul(fa, partial_node(*n.b, j)));
            }
            case NodeKind::Div: {
                Expr u = wrap(n.a), v = wrap(n.b);
                Expr num = sub(mul(partial_node(*n.a, j), v), mul(u, partial_node(*n.b, j)));
                return div(num, pow(v, 2));
            }
            case NodeKind::Pow: {
                Expr base = wrap(n.a);
                Expr d = partial_node(*n.a, j);
                if (d.is_zero()) return constant(dim_, 0);
                Expr e = mul(constant(dim_, Rational(n.exponent)), pow(base, n.exponent - 1));
                return mul(e, d);
            }
            case NodeKind::Sin: {
                Expr d = partial_node(*n.a, j);
                if (d.is_zero()) return constant(dim_, 0);
                return mul(apply(NodeKind::Cos, wrap(n.a)), d);
            }
            case NodeKind::Cos: {
                Expr d = partial_node(*n.a, j);
                if (d.is_zero()) return constant(dim_, 0);
                return mul(sub(constant(dim_, 0), apply(NodeKind::Sin, wrap(n.a))), d);
            }
            case NodeKind::Exp: {
                Expr d = partial_node(*n.a, j);
                if (d.is_zero()) return constant(dim_, 0);
                return mul(apply(NodeKind::Exp, wrap(n.a)), d);
            }
            case NodeKind::Min:
            case NodeKind::Max:
                throw NonDifferentiableError("cannot differentiate min/max");
        }
        throw NonDifferentiableError("corrupt expression node");
    }

    static std::string print_node(const ExprNode& n, int parent_prec) {
        auto paren = [&](int prec, std::string s) {
            return prec < parent_prec ? "(" + std::move(s) + ")" : std::move(s);
        };
        switch (n.kind) {
            case NodeKind::Constant: {
                std::string s = rational_to_string(n.value);
                return n.value < 0 ? "(" + s + ")" : s;
            }
            case NodeKind::Variable: return "x" + std::to_string(n.var + 1);
            case NodeKind::Add: return paren(1, print_node(*n.a, 1) + " + " + print_node(*n.b, 1));
            case NodeKind::Sub: return paren(1, print_node(*n.a, 1) + " - " + print_node(*n.b, 2));
            case NodeKind::Mul: return paren(2, print_node(*n.a, 2) + "*" + print_node(*n.b, 2));
            case NodeKind::Div: return paren(2, print_node(*n.a, 2) + "/" + print_node(*n.b, 3));
            case NodeKind::Pow: return print_node(*n.a, 4) + "^" + std::to_string(n.exponent);
            case NodeKind::Sin: return "sin(" + print_node(*n.a, 0) + ")";
            case NodeKind::Cos: return "cos(" + print_node(*n.a, 0) + ")";
            case NodeKind::Exp: return "exp(" + print_node(*n.a, 0) + ")";
            case NodeKind::Min: return "min(" + print_node(*n.a, 0) + ", " + print_node(*n.b, 0) + ")";
            case NodeKind::Max: return "max(" + print_node(*n.a, 0) + ", " + print_node(*n.b, 0) + ")";
        }
        return "?";
    }

    int dim_ = 0;
    NodePtr node_;
    std::optional<PolyQ> poly_;
};

namespace detail {

class Parser {
  public:
    Parser(const std::string& text, int dim) : text_(text), dim_(dim) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

  private:
    // expr := ('-')? term (('+'|'-') term)*
    // Leading unary minus is a strict superset of the published grammar.
    Expr expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        Expr acc = term();
        if (neg) acc = Expr::sub(Expr::constant(dim_, 0), acc);
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                Expr rhs = term();
                acc = c == '+' ? Expr::add(acc, rhs) : Expr::sub(acc, rhs);
            } else {
                return acc;
            }
        }
    }

    Expr term() {
        Expr acc = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*' || c == '/') {
                std::size_t at = pos_;
                ++pos_;
                Expr rhs = factor();
                if (c == '*') {
                    acc = Expr::mul(acc, rhs);
                } else {
                    try {
                        acc = Expr::div(acc, rhs);
                    } catch (const EvalError& e) {
                        throw ParseError(e.what(), at);
                    }
                }
            } else {
                return acc;
            }
        }
    }

    Expr factor() {
        Expr b = base();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError("expected unsigned integer exponent", at);
            unsigned long e = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                e = e * 10 + static_cast<unsigned>(peek() - '0');
                if (e > 1000) throw ParseError("exponent too large", at);
                ++pos_;
            }
            return Expr::pow(b, static_cast<unsigned>(e));
        }
        return b;
    }

    Expr base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return ident_or_func();
        throw ParseError("expected number, variable, function or '('", pos_);
    }

    Expr number() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '.') {
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        std::string tok = text_.substr(start, pos_ - start);
        if (tok.empty() || tok == ".") throw ParseError("malformed number", start);
        try {
            return Expr::constant(dim_, rational_from_decimal(tok));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), start);
        }
    }

    Expr ident_or_func() {
        std::size_t start = pos_;
        while (std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        if (name == "sin" || name == "cos" || name == "exp" || name == "min" || name == "max") {
            NodeKind k = name == "sin"   ? NodeKind::Sin
                         : name == "cos" ? NodeKind::Cos
                         : name == "exp" ? NodeKind::Exp
                         : name == "min" ? NodeKind::Min
                                         : NodeKind::Max;
            bool binary = (k == NodeKind::Min || k == NodeKind::Max);
            expect('(');
            Expr a = expr();
            if (binary) {
                skip_ws();
                if (peek() != ',') throw ParseError(name + " takes two arguments", pos_);
                ++pos_;
                Expr b = expr();
                expect(')');
                Expr r = Expr::apply(k, a, &b);
                return r;
            }
            skip_ws();
            if (peek() == ',') throw ParseError(name + " takes one argument", pos_);
            expect(')');
            return Expr::apply(k, a);
        }
        if (name == "x") {
            std::size_t at = pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError("expected variable index after 'x'", at);
            long idx = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                idx = idx * 10 + (peek() - '0');
                if (idx > 1'000'000) throw ParseError("variable index too large", at);
                ++pos_;
            }
            if (idx < 1 || idx > dim_)
                throw ParseError("variable index out of range: x" + std::to_string(idx) +
                                     " with dim " + std::to_string(dim_),
                                 start);
            return Expr::variable(dim_, static_cast<int>(idx));
        }
        throw ParseError("unknown identifier '" + name + "'", start);
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    const std::string& text_;
    int dim_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Expr Expr::parse(const std::string& text, int dim) {
    return detail::Parser(text, dim).run();
}

} // namespace swstab
