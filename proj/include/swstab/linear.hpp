//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include "swstab/lie.hpp"
#include "swstab/subspace.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace swstab {

/// Splitting of R^d into the characteristic subspaces of A grouped by the
/// sign of the real part of the eigenvalues.
struct SpectralSplit {
    Eigen::MatrixXd A;
    LinearSubspace center; // sum of E_a with Re(a) = 0
    LinearSubspace stable; // Re(a) < 0
    bool has_unstable = false;
    bool semisimple_on_center = true;
    std::vector<std::complex<double>> eigenvalues;

    nlohmann::json to_json() const {
        nlohmann::json eigs = nlohmann::json::array();
        for (const auto& e : eigenvalues) eigs.push_back({{"re", e.real()}, {"im", e.imag()}});
        return {{"center", center.to_json()},
                {"stable", stable.to_json()},
                {"has_unstable", has_unstable},
                {"semisimple_on_center", semisimple_on_center},
                {"eigenvalues", eigs}};
    }
};

namespace detail {

struct EigenCluster {
    std::complex<double> value;
    int multiplicity = 0; // conjugate pairs counted once, with pair multiplicity
    bool complex_pair = false;
};

/// Cluster eigenvalues, pairing conjugates, so characteristic subspaces can be
/// assembled from real polynomial factors (A - aI) and (A^2 - 2Re a A + |a|^2 I).
inline std::vector<EigenCluster> cluster_eigenvalues(
    const std::vector<std::complex<double>>& eigs, double tol) {
    std::vector<EigenCluster> clusters;
    std::vector<bool> used(eigs.size(), false);
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        if (used[i]) continue;
        std::complex<double> v = eigs[i];
        if (std::abs(v.imag()) <= tol) v.imag(0.0);
        EigenCluster c;
        c.value = v;
        c.complex_pair = v.imag() != 0.0;
        for (std::size_t j = i; j < eigs.size(); ++j) {
            if (used[j]) continue;
            std::complex<double> w = eigs[j];
            if (std::abs(w.imag()) <= tol) w.imag(0.0);
            bool same = std::abs(w.real() - v.real()) <= tol &&
                        std::abs(std::abs(w.imag()) - std::abs(v.imag())) <= tol;
            if (same) {
                used[j] = true;
                ++c.multiplicity;
            }
        }
        if (c.complex_pair) c.multiplicity /= 2; // conjugates were counted together
        clusters.push_back(c);
    }
    return clusters;
}

/// Product over the selected clusters of the real characteristic factors,
/// each raised to its algebraic multiplicity.
inline Eigen::MatrixXd characteristic_factor(const Eigen::MatrixXd& A,
                                             const std::vector<EigenCluster>& clusters) {
    int d = static_cast<int>(A.rows());
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(d, d);
    for (const auto& c : clusters) {
        Eigen::MatrixXd f;
        if (c.complex_pair) {
            double re = c.value.real();
            double n2 = std::norm(c.value);
            f = A * A - 2.0 * re * A + n2 * Eigen::MatrixXd::Identity(d, d);
        } else {
            f = A - c.value.real() * Eigen::MatrixXd::Identity(d, d);
        }
        for (int k = 0; k < c.multiplicity; ++k) M = M * f;
    }
    return M;
}

} // namespace detail

/// Group the spectrum of A by the sign of the real part (tolerance on Re) and
/// return the center/stable characteristic subspaces. Works on defective
/// matrices: subspaces come from kernels of real characteristic factors, not
/// from eigenvectors.
inline SpectralSplit spectral_split(const Eigen::MatrixXd& A, double re_tol = 1e-9) {
    if (A.rows() != A.cols()) throw std::invalid_argument("spectral_split: square matrix required");
    int d = static_cast<int>(A.rows());
    SpectralSplit out;
    out.A = A;
    if (d == 0) return out;
    Eigen::EigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    double tol = re_tol * scale;
    std::vector<std::complex<double>> eigs(d);
    for (int i = 0; i < d; ++i) eigs[i] = es.eigenvalues()(i);
    std::sort(eigs.begin(), eigs.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    out.eigenvalues = eigs;

    double cluster_tol = std::max(tol, 1e-7 * scale);
    auto clusters = detail::cluster_eigenvalues(eigs, cluster_tol);
    std::vector<detail::EigenCluster> center_cl, stable_cl;
    for (const auto& c : clusters) {
        if (std::abs(c.value.real()) <= tol)
            center_cl.push_back(c);
        else if (c.value.real() < 0)
            stable_cl.push_back(c);
        else
            out.has_unstable = true;
    }
    double kernel_tol = 1e-8;
    if (center_cl.empty()) {
        out.center = LinearSubspace(d);
    } else {
        out.center = LinearSubspace::kernel_of(detail::characteristic_factor(A, center_cl), kernel_tol);
    }
    if (stable_cl.empty()) {
        out.stable = LinearSubspace(d);
    } else {
        out.stable = LinearSubspace::kernel_of(detail::characteristic_factor(A, stable_cl), kernel_tol);
    }
    // semisimple on the center part: geometric = algebraic multiplicity for
    // every center eigenvalue
    for (const auto& c : center_cl) {
        Eigen::MatrixXd single = detail::characteristic_factor(A, {detail::EigenCluster{c.value, 1, c.complex_pair}});
        int geo = LinearSubspace::kernel_of(single, kernel_tol).rank();
        int alg = c.multiplicity * (c.complex_pair ? 2 : 1);
        if (geo != alg) out.semisimple_on_center = false;
    }
    return out;
}

/// For a stable linear mode with semisimple center spectrum the invariant set
/// of constant-V trajectories is exactly the center subspace.
inline LinearSubspace linear_invariant_subspace(const Eigen::MatrixXd& A,
                                                const SpectralSplit& split) {
    if (split.has_unstable)
        throw std::runtime_error("linear mode has an unstable eigenvalue; not applicable");
    if (!split.semisimple_on_center)
        throw std::runtime_error("center spectrum is defective; stability hypothesis fails");
    (void)A;
    return split.center;
}

/// Jacobian at the origin via exact symbolic partials (polynomial path) or
/// symbolic tree differentiation evaluated at 0.
inline Eigen::MatrixXd jacobian_at_origin(const VectorFieldExpr& f) {
    int d = f.dim;
    Eigen::MatrixXd J(d, d);
    std::vector<double> zero(d, 0.0);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) J(r, c) = f.components[r].partial(c + 1).eval(zero);
    return J;
}

/// Center subspace of the linearization at 0 (the tangent space of any centre
/// manifold of f). Throws when the linearization has an unstable eigenvalue.
inline LinearSubspace tangent_center_subspace(const VectorFieldExpr& f) {
    SpectralSplit split = spectral_split(jacobian_at_origin(f));
    if (split.has_unstable)
        throw std::runtime_error("linearization at 0 has an unstable eigenvalue");
    return split.center;
}

/// Polynomial graph approximation of a centre manifold: x_stable = h(x_center)
/// with h solved degree by degree from the invariance equation
///   Dh(s) * (A1 s + g1(s, h(s))) = A2 h(s) + g2(s, h(s)).
struct CenterManifoldApprox {
    int center_dim = 0;
    int stable_dim = 0;
    int order = 0;
    Eigen::MatrixXd transform;          // columns: center basis then stable basis
    std::vector<PolyD> h;               // stable_dim polynomials in the center variables
    std::map<int, double> residual_norm_per_degree;
    double offblock_norm = 0.0;         // coupling left after the basis change
    bool axis_aligned = false;          // transform is a signed permutation
    std::vector<int> center_vars;       // original 1-based indices when axis aligned
    std::vector<int> stable_vars;

    /// Max-norm of residual coefficients of degree < k.
    double residual_truncated_below(int k) const {
        double n = 0.0;
        for (const auto& [deg, norm] : residual_norm_per_degree)
            if (deg < k) n = std::max(n, norm);
        return n;
    }

    nlohmann::json to_json() const {
        nlohmann::json hs = nlohmann::json::array();
        for (const auto& p : h) hs.push_back(p.to_string());
        nlohmann::json res = nlohmann::json::object();
        for (const auto& [deg, norm] : residual_norm_per_degree)
            res[std::to_string(deg)] = norm;
        nlohmann::json tf = nlohmann::json::array();
        for (int r = 0; r < transform.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < transform.cols(); ++c) row.push_back(transform(r, c));
            tf.push_back(row);
        }
        return {{"center_dim", center_dim},
                {"stable_dim", stable_dim},
                {"order", order},
                {"h", hs},
                {"transform", tf},
                {"axis_aligned", axis_aligned},
                {"center_vars", center_vars},
                {"stable_vars", stable_vars},
                {"residual_norm_per_degree", res}};
    }
};

struct ResonanceError : std::runtime_error {
    ResonanceError(int degree)
        : std::runtime_error("centre-manifold solve: singular linear system at degree " +
                             std::to_string(degree)),
          degree(degree) {}
    int degree;
};

inline CenterManifoldApprox center_manifold_approx(const VectorFieldExpr& f, int order) {
    if (order < 2) throw std::invalid_argument("center_manifold_approx: order >= 2 required");
    if (!f.is_polynomial()) throw NonPolynomialError("center_manifold_approx: polynomial field required");
    int d = f.dim;
    Eigen::MatrixXd J = jacobian_at_origin(f);
    SpectralSplit split = spectral_split(J);
    if (split.has_unstable)
        throw std::runtime_error("center_manifold_approx: unstable linearization");
    int n = split.center.rank();
    int m = split.stable.rank();
    if (n + m != d) throw std::runtime_error("center_manifold_approx: center+stable do not span");

    CenterManifoldApprox out;
    out.center_dim = n;
    out.stable_dim = m;
    out.order = order;
    Eigen::MatrixXd T(d, d);
    T.leftCols(n) = split.center.basis();
    T.rightCols(m) = split.stable.basis();
    out.transform = T;

    // axis alignment: every column a signed coordinate vector
    out.axis_aligned = true;
    for (int c = 0; c < d && out.axis_aligned; ++c) {
        int nz = 0, idx = -1;
        for (int r = 0; r < d; ++r)
            if (std::abs(T(r, c)) > 1e-12) {
                ++nz;
                idx = r;
            }
        if (nz != 1 || std::abs(std::abs(T(idx, c)) - 1.0) > 1e-12) out.axis_aligned = false;
        else (c < n ? out.center_vars : out.stable_vars).push_back(idx + 1);
    }
    if (!out.axis_aligned) {
        out.center_vars.clear();
        out.stable_vars.clear();
    }

    Eigen::MatrixXd Tinv = T.inverse();
    Eigen::MatrixXd Ablock = Tinv * J * T;
    out.offblock_norm = std::max(Ablock.topRightCorner(n, m).cwiseAbs().maxCoeff(),
                                 Ablock.bottomLeftCorner(m, n).cwiseAbs().maxCoeff());
    Eigen::MatrixXd A1 = Ablock.topLeftCorner(n, n);
    Eigen::MatrixXd A2 = Ablock.bottomRightCorner(m, m);

    // transformed field F(y) = Tinv f(T y); g = F minus its linear part
    std::vector<PolyD> Ty(d, PolyD(d));
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            if (T(r, c) != 0.0) Ty[r].add_term(
                [&] { Monomial mm(d, 0); mm[c] = 1; return mm; }(), T(r, c));
    std::vector<PolyD> F(d, PolyD(d));
    for (int r = 0; r < d; ++r) {
        PolyD fr = to_poly_d(f.components[r].poly()).substitute(Ty);
        for (int rr = 0; rr < d; ++rr)
            if (Tinv(rr, r) != 0.0) F[rr] += fr.scaled(Tinv(rr, r));
    }
    std::vector<PolyD> g(d, PolyD(d));
    for (int r = 0; r < d; ++r) {
        g[r] = F[r];
        for (int c = 0; c < d; ++c) {
            Monomial mm(d, 0);
            mm[c] = 1;
            double lin = g[r].coefficient(mm);
            if (lin != 0.0) g[r].add_term(mm, -lin);
        }
        // drop numeric dust at degree <= 1 left by the basis change
        PolyD cleaned(d);
        for (const auto& [mon, coef] : g[r].terms())
            if (monomial_degree(mon) >= 2 && std::abs(coef) > 1e-13) cleaned.add_term(mon, coef);
        g[r] = cleaned;
    }

    // h holds m polynomials in the n center variables
    out.h.assign(m, PolyD(n));
    if (m == 0 || n == 0) return out;

    auto substituted = [&](const std::vector<PolyD>& hcur) {
        // y = (s, h(s)) as polynomials in the center variables
        std::vector<PolyD> repl(d, PolyD(n));
        for (int c = 0; c < n; ++c) repl[c] = PolyD::variable(n, c);
        for (int s = 0; s < m; ++s) repl[n + s] = hcur[s];
        return repl;
    };

    auto residual = [&](const std::vector<PolyD>& hcur) {
        auto repl = substituted(hcur);
        std::vector<PolyD> res(m, PolyD(n));
        for (int s = 0; s < m; ++s) {
            PolyD lhs(n);
            for (int c = 0; c < n; ++c) {
                // (A1 s + g1)_c composed on the manifold
                PolyD rate(n);
                for (int cc = 0; cc < n; ++cc) {
                    if (A1(c, cc) == 0.0) continue;
                    rate += PolyD::variable(n, cc).scaled(A1(c, cc));
                }
                rate += g[c].substitute(repl);
                lhs += hcur[s].partial(c) * rate;
            }
            PolyD rhs(n);
            for (int ss = 0; ss < m; ++ss)
                if (A2(s, ss) != 0.0) rhs += hcur[ss].scaled(A2(s, ss));
            rhs += g[n + s].substitute(repl);
            res[s] = lhs - rhs;
        }
        return res;
    };

    for (int deg = 2; deg <= order; ++deg) {
        auto mons = monomials_of_degree(n, deg);
        int nb = static_cast<int>(mons.size());
        int unknowns = m * nb;
        // residual with the current h (unknown degree absent) gives the
        // inhomogeneous side; the homological operator acts on the new terms
        auto res0 = residual(out.h);
        Eigen::VectorXd rhs(unknowns);
        for (int s = 0; s < m; ++s)
            for (int b = 0; b < nb; ++b) rhs(s * nb + b) = -res0[s].coefficient(mons[b]);
        Eigen::MatrixXd op(unknowns, unknowns);
        for (int s = 0; s < m; ++s)
            for (int b = 0; b < nb; ++b) {
                std::vector<PolyD> probe(m, PolyD(n));
                probe[s].add_term(mons[b], 1.0);
                // linear part of the operator: Dh * A1 s - A2 h
                std::vector<PolyD> lin(m, PolyD(n));
                for (int ss = 0; ss < m; ++ss) {
                    PolyD acc(n);
                    for (int c = 0; c < n; ++c) {
                        PolyD rate(n);
                        for (int cc = 0; cc < n; ++cc)
                            if (A1(c, cc) != 0.0) rate += PolyD::variable(n, cc).scaled(A1(c, cc));
                        acc += probe[ss].partial(c) * rate;
                    }
                    for (int s2 = 0; s2 < m; ++s2)
                        if (A2(ss, s2) != 0.0) acc -= probe[s2].scaled(A2(ss, s2));
                    lin[ss] = acc;
                }
                for (int ss = 0; ss < m; ++ss)
                    for (int b2 = 0; b2 < nb; ++b2)
                        op(ss * nb + b2, s * nb + b) = lin[ss].coefficient(mons[b2]);
            }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(op);
        lu.setThreshold(1e-10);
        if (!lu.isInvertible()) throw ResonanceError(deg);
        Eigen::VectorXd sol = lu.solve(rhs);
        for (int s = 0; s < m; ++s)
            for (int b = 0; b < nb; ++b)
                if (sol(s * nb + b) != 0.0) out.h[s].add_term(mons[b], sol(s * nb + b));
    }

    auto res = residual(out.h);
    for (const auto& rp : res)
        for (const auto& [mon, coef] : rp.terms()) {
            int deg = monomial_degree(mon);
            auto& slot = out.residual_norm_per_degree[deg];
            slot = std::max(slot, std::abs(coef));
        }
    return out;
}

} // namespace swstab
