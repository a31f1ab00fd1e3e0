//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
// Test-only oracles, kept independent of the library implementation paths
// they are used to check.
#pragma once

#include "swstab/rational.hpp"

#include <map>
#include <random>
#include <vector>

namespace swstab::test {

/// Independent dense-map polynomial over exact rationals. Deliberately naive:
/// no fast paths, no pruning tricks; used as the ground truth for the sparse
/// implementation.
struct NaivePoly {
    int dim;
    std::map<std::vector<int>, Rational> coef;

    explicit NaivePoly(int d) : dim(d) {}

    static NaivePoly var(int d, int i) {
        NaivePoly p(d);
        std::vector<int> m(d, 0);
        m[i] = 1;
        p.coef[m] = 1;
        return p;
    }
    static NaivePoly cons(int d, Rational c) {
        NaivePoly p(d);
        p.coef[std::vector<int>(d, 0)] = c;
        return p;
    }

    NaivePoly add(const NaivePoly& o) const {
        NaivePoly r = *this;
        for (auto& [m, c] : o.coef) r.coef[m] += c;
        return r;
    }
    NaivePoly mul(const NaivePoly& o) const {
        NaivePoly r(dim);
        for (auto& [ma, ca] : coef)
            for (auto& [mb, cb] : o.coef) {
                std::vector<int> m(dim);
                for (int i = 0; i < dim; ++i) m[i] = ma[i] + mb[i];
                r.coef[m] += ca * cb;
            }
        return r;
    }
    NaivePoly scale(Rational s) const {
        NaivePoly r = *this;
        for (auto& [m, c] : r.coef) c *= s;
        return r;
    }
    NaivePoly diff(int j) const {
        NaivePoly r(dim);
        for (auto& [m, c] : coef) {
            if (m[j] == 0) continue;
            std::vector<int> d = m;
            d[j] -= 1;
            r.coef[d] += c * m[j];
        }
        return r;
    }
    Rational eval(const std::vector<Rational>& x) const {
        Rational acc = 0;
        for (auto& [m, c] : coef) {
            Rational t = c;
            for (int i = 0; i < dim; ++i)
                for (int e = 0; e < m[i]; ++e) t *= x[i];
            acc += t;
        }
        return acc;
    }
    /// Map of nonzero coefficients (canonical form for comparisons).
    std::map<std::vector<int>, Rational> nonzero() const {
        std::map<std::vector<int>, Rational> out;
        for (auto& [m, c] : coef)
            if (!(c == 0)) out[m] = c;
        return out;
    }
};

inline NaivePoly naive_lie(const NaivePoly& V, const std::vector<NaivePoly>& f) {
    NaivePoly acc(V.dim);
    for (int j = 0; j < V.dim; ++j) acc = acc.add(V.diff(j).mul(f[j]));
    return acc;
}

/// Random sparse polynomial with small integer coefficients.
inline NaivePoly random_naive_poly(int dim, int max_degree, std::mt19937& rng) {
    std::uniform_int_distribution<int> coefd(-4, 4);
    std::uniform_int_distribution<int> degd(0, max_degree);
    std::uniform_int_distribution<int> termsd(1, 5);
    NaivePoly p(dim);
    int terms = termsd(rng);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> m(dim, 0);
        int deg = degd(rng);
        std::uniform_int_distribution<int> vard(0, dim - 1);
        for (int k = 0; k < deg; ++k) m[vard(rng)] += 1;
        int c = coefd(rng);
        if (c != 0) p.coef[m] += c;
    }
    return p;
}

} // namespace swstab::test
