//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include "swstab/expr.hpp"

#include <string>
#include <vector>

namespace swstab {

/// Vector field on R^d given componentwise as expressions.
struct VectorFieldExpr {
    int dim = 0;
    std::vector<Expr> components;

    VectorFieldExpr() = default;
    VectorFieldExpr(int dim, std::vector<Expr> comps) : dim(dim), components(std::move(comps)) {
        if (static_cast<int>(components.size()) != dim)
            throw std::invalid_argument("vector field needs exactly dim components");
        for (const auto& c : components)
            if (c.dim() != dim) throw std::invalid_argument("vector field component dimension mismatch");
    }

    static VectorFieldExpr parse(const std::vector<std::string>& texts, int dim) {
        std::vector<Expr> comps;
        comps.reserve(texts.size());
        for (const auto& t : texts) comps.push_back(Expr::parse(t, dim));
        return VectorFieldExpr(dim, std::move(comps));
    }

    bool is_polynomial() const {
        for (const auto& c : components)
            if (!c.is_polynomial()) return false;
        return true;
    }

    void eval_into(std::span<const double> x, std::span<double> out) const {
        for (int i = 0; i < dim; ++i) out[i] = components[i].eval(x);
    }
};

/// Nonzero homogeneous polynomial of a single total degree; the lowest-order
/// derivative data of an iterated Lie derivative at the origin.
struct HomogeneousForm {
    int degree = 0;
    int dim = 0;
    PolyQ poly;

    double eval(std::span<const double> x) const { return poly.eval_double(x); }
};

/// Lie derivative of V along f: sum_j dV/dx_j * f_j. Exact on the polynomial
/// path; on the tree path the sum is assembled with zero-term pruning and no
/// further simplification.
inline Expr lie_derivative(const Expr& V, const VectorFieldExpr& f) {
    if (V.dim() != f.dim) throw std::invalid_argument("lie_derivative: dimension mismatch");
    if (V.is_polynomial() && f.is_polynomial()) {
        PolyQ acc(V.dim());
        for (int j = 0; j < f.dim; ++j)
            acc += V.poly().partial(j) * f.components[j].poly();
        return Expr::from_poly(std::move(acc));
    }
    Expr acc = Expr::constant(V.dim(), 0);
    bool have = false;
    for (int j = 0; j < f.dim; ++j) {
        Expr dj = V.partial(j + 1);
        if (dj.is_zero() || f.components[j].is_zero()) continue;
        Expr t = Expr::mul(dj, f.components[j]);
        acc = have ? Expr::add(acc, t) : t;
        have = true;
    }
    return acc;
}

/// [L^1 V, ..., L^kmax V], each exact. Restricted to polynomial data: iterated
/// derivatives of transcendental trees grow without bound.
inline std::vector<Expr> lie_chain(const Expr& V, const VectorFieldExpr& f, int kmax) {
    if (!V.is_polynomial() || !f.is_polynomial())
        throw NonPolynomialError("lie_chain requires polynomial V and field");
    if (kmax < 1) throw std::invalid_argument("lie_chain: kmax must be >= 1");
    std::vector<Expr> out;
    out.reserve(kmax);
    Expr cur = V;
    for (int k = 0; k < kmax; ++k) {
        cur = lie_derivative(cur, f);
        out.push_back(cur);
    }
    return out;
}

/// The nonzero homogeneous component of lowest degree of a polynomial
/// vanishing at 0. Its degree is the smallest l with D^l e(0) != 0.
inline HomogeneousForm lowest_homogeneous(const Expr& e) {
    const PolyQ& p = e.poly();
    if (p.is_zero()) throw std::invalid_argument("lowest_homogeneous: zero polynomial");
    if (!(p.constant_term() == 0))
        throw std::invalid_argument("lowest_homogeneous: polynomial does not vanish at 0");
    int d = p.lowest_degree();
    return HomogeneousForm{d, p.dim(), p.homogeneous_component(d)};
}

} // namespace swstab
