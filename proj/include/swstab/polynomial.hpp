//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include "swstab/rational.hpp"

#include <algorithm>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace swstab {

/// Exponent vector of a monomial; length equals the ambient dimension.
using Monomial = std::vector<int>;

inline int monomial_degree(const Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

/// Sparse multivariate polynomial with coefficients of type C (Rational for
/// the exact path, double for numeric work such as the centre-manifold solve).
/// Zero coefficients are never stored; term order is lexicographic in the
/// exponent vector, which keeps printing and serialization deterministic.
template <class C>
class SparsePoly {
  public:
    SparsePoly() : dim_(0) {}
    explicit SparsePoly(int dim) : dim_(dim) {}

    static SparsePoly zero(int dim) { return SparsePoly(dim); }

    static SparsePoly constant(int dim, const C& c) {
        SparsePoly p(dim);
        if (!(c == C(0))) p.terms_.emplace(Monomial(dim, 0), c);
        return p;
    }

    /// Variable x_{i+1} (index is 0-based internally).
    static SparsePoly variable(int dim, int i) {
        SparsePoly p(dim);
        Monomial m(dim, 0);
        m.at(i) = 1;
        p.terms_.emplace(std::move(m), C(1));
        return p;
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, C>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    C coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C(0) : it->second;
    }

    C constant_term() const { return coefficient(Monomial(dim_, 0)); }

    void add_term(const Monomial& m, const C& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!(c == C(0))) terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == C(0)) terms_.erase(it);
        }
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        check_dim(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& o) {
        check_dim(o);
        for (const auto& [m, c] : o.terms_) add_term(m, C(-c));
        return *this;
    }
    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    SparsePoly operator-() const {
        SparsePoly r(dim_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, C(-c));
        return r;
    }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        a.check_dim(b);
        SparsePoly r(a.dim_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(a.dim_);
                for (int i = 0; i < a.dim_; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }

    SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

    SparsePoly scaled(const C& c) const {
        SparsePoly r(dim_);
        if (c == C(0)) return r;
        for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
        return r;
    }

    SparsePoly pow(unsigned n) const {
        SparsePoly r = constant(dim_, C(1));
        SparsePoly base = *this;
        while (n) {
            if (n & 1u) r *= base;
            base = (n >>= 1) ? base * base : base;
        }
        return r;
    }

    /// Exact partial derivative with respect to variable j (0-based).
    SparsePoly partial(int j) const {
        SparsePoly r(dim_);
        for (const auto& [m, c] : terms_) {
            if (m[j] == 0) continue;
            Monomial d = m;
            d[j] -= 1;
            r.add_term(d, c * C(m[j]));
        }
        return r;
    }

    /// Evaluate at a point whose scalar type T may differ from C
    /// (e.g. exact evaluation of a Rational poly at a Rational point).
    template <class T>
    T eval(std::span<const T> x) const {
        T acc(0);
        for (const auto& [m, c] : terms_) {
            T t = coeff_as<T>(c);
            for (int i = 0; i < dim_; ++i)
                for (int e = 0; e < m[i]; ++e) t *= x[i];
            acc += t;
        }
        return acc;
    }

    double eval_double(std::span<const double> x) const { return eval<double>(x); }

    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
        return d; // -1 for the zero polynomial
    }

    int lowest_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) {
            int md = monomial_degree(m);
            if (d < 0 || md < d) d = md;
        }
        return d;
    }

    SparsePoly homogeneous_component(int k) const {
        SparsePoly r(dim_);
        for (const auto& [m, c] : terms_)
            if (monomial_degree(m) == k) r.terms_.emplace(m, c);
        return r;
    }

    /// Terms of degree < k only.
    SparsePoly truncated_below(int k) const {
        SparsePoly r(dim_);
        for (const auto& [m, c] : terms_)
            if (monomial_degree(m) < k) r.terms_.emplace(m, c);
        return r;
    }

    /// Substitute each variable by the given polynomial (full composition).
    /// All replacement polynomials must share one dimension.
    SparsePoly substitute(const std::vector<SparsePoly>& repl) const {
        if (static_cast<int>(repl.size()) != dim_)
            throw std::invalid_argument("substitute: wrong replacement count");
        int out_dim = repl.empty() ? 0 : repl.front().dim();
        // memoized powers of each replacement
        std::vector<std::vector<SparsePoly>> pows(dim_);
        for (int i = 0; i < dim_; ++i) pows[i].push_back(constant(out_dim, C(1)));
        auto power = [&](int i, int e) -> const SparsePoly& {
            auto& v = pows[i];
            while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * repl[i]);
            return v[e];
        };
        SparsePoly r(out_dim);
        for (const auto& [m, c] : terms_) {
            SparsePoly t = constant(out_dim, c);
            for (int i = 0; i < dim_; ++i)
                if (m[i] > 0) t *= power(i, m[i]);
            r += t;
        }
        return r;
    }

    bool operator==(const SparsePoly& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            std::string cs = coeff_to_string(c);
            bool neg = !cs.empty() && cs.front() == '-';
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            if (neg) cs.erase(cs.begin());
            bool has_vars = monomial_degree(m) > 0;
            bool unit = (cs == "1");
            if (!unit || !has_vars) os << cs;
            bool lead = !unit || !has_vars;
            for (int i = 0; i < dim_; ++i) {
                if (m[i] == 0) continue;
                if (lead) os << "*";
                os << "x" << (i + 1);
                if (m[i] > 1) os << "^" << m[i];
                lead = true;
            }
            first = false;
        }
        return os.str();
    }

  private:
    void check_dim(const SparsePoly& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("polynomial dimension mismatch");
    }

    template <class T>
    static T coeff_as(const C& c) {
        if constexpr (std::is_same_v<T, C>)
            return c;
        else if constexpr (std::is_same_v<C, Rational> && std::is_same_v<T, double>)
            return to_double(c);
        else
            return static_cast<T>(c);
    }

    static std::string coeff_to_string(const Rational& c) { return rational_to_string(c); }
    static std::string coeff_to_string(double c) {
        std::ostringstream os;
        os.precision(17);
        os << c;
        return os.str();
    }

    int dim_;
    std::map<Monomial, C> terms_;
};

using PolyQ = SparsePoly<Rational>;
using PolyD = SparsePoly<double>;

/// Lossy conversion from exact to double coefficients.
inline PolyD to_poly_d(const PolyQ& p) {
    PolyD r(p.dim());
    for (const auto& [m, c] : p.terms()) r.add_term(m, to_double(c));
    return r;
}

/// Enumerate all monomials of the given total degree in `dim` variables,
/// in deterministic lexicographic order.
inline std::vector<Monomial> monomials_of_degree(int dim, int degree) {
    std::vector<Monomial> out;
    Monomial cur(dim, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == dim - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[pos] = e;
            self(self, pos + 1, left - e);
        }
    };
    if (dim == 0) return out;
    rec(rec, 0, degree);
    for (auto& m : out) std::reverse(m.begin(), m.end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace swstab
