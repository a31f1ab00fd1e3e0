//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include "swstab/model.hpp"
#include "swstab/subspace.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace swstab {

/// Membership oracle for a set given as the common zero locus of a list of
/// expressions. The defect of a point is the largest |e_i(x)|; the point is
/// inside when the defect is at most `tol`.
struct SetOracle {
    enum class Kind { KSet, MSet, KIntersection, Custom };

    Kind kind = Kind::Custom;
    std::string name;
    int dim = 0;
    std::vector<Expr> defining;
    double tol = 1e-6;
    int truncated_at_kmax = 0;     // MSet only: odd orders kept up to this k
    bool all_orders_zero = false;  // every defining expression was identically 0

    double defect(std::span<const double> x) const {
        double d = 0.0;
        for (const auto& e : defining) d = std::max(d, std::abs(e.eval(x)));
        return d;
    }

    bool member(std::span<const double> x) const { return defect(x) <= tol; }

    nlohmann::json to_json() const {
        nlohmann::json defs = nlohmann::json::array();
        for (const auto& e : defining) defs.push_back(e.to_string());
        nlohmann::json j{{"name", name}, {"tol", tol}, {"defining", defs}};
        if (kind == Kind::MSet) {
            j["truncated_at_kmax"] = truncated_at_kmax;
            j["all_orders_zero"] = all_orders_zero;
        }
        return j;
    }
};

/// Cone given as the common zero set of homogeneous forms. Membership is
/// scale-invariant by homogeneity.
struct HomogeneousCone {
    int dim = 0;
    std::vector<HomogeneousForm> forms;
    std::vector<int> skipped_zero_orders; // Lie orders k with L^k V identically zero
    int truncated_at_kmax = 0;

    double defect(std::span<const double> x) const {
        double d = 0.0;
        for (const auto& f : forms) d = std::max(d, std::abs(f.eval(x)));
        return d;
    }

    bool is_whole_space() const { return forms.empty(); }

    nlohmann::json to_json() const {
        nlohmann::json fs = nlohmann::json::array();
        for (const auto& f : forms)
            fs.push_back({{"degree", f.degree}, {"poly", f.poly.to_string()}});
        return {{"forms", fs},
                {"skipped_zero_orders", skipped_zero_orders},
                {"truncated_at_kmax", truncated_at_kmax}};
    }
};

enum class Holds { Yes, No, Inconclusive };

inline std::string to_string(Holds h) {
    switch (h) {
        case Holds::Yes: return "yes";
        case Holds::No: return "no";
        default: return "inconclusive";
    }
}

/// Outcome of one geometric stability condition. `witness` carries sample
/// points of an offending connected component (or offending subspace data)
/// whenever the condition fails.
struct ConditionVerdict {
    std::string condition; // "C", "K", "Kzero", "Cor5.1".."Cor5.4", "Cor5", "Theo2"
    Holds holds = Holds::Inconclusive;
    std::vector<std::vector<double>> witness;
    nlohmann::json params;
    std::string note;

    nlohmann::json to_json() const {
        nlohmann::json j{{"condition", condition},
                         {"holds", to_string(holds)},
                         {"witness", witness},
                         {"params", params}};
        if (!note.empty()) j["note"] = note;
        return j;
    }
};

//---------------------------------------------------------------------------//
// Set constructions
//---------------------------------------------------------------------------//

/// K_i: the locus where mode i is tangent to a level set of V.
inline SetOracle k_set(const SwitchedSystem& sys, int i, double tol = 1e-6) {
    SetOracle o;
    o.kind = SetOracle::Kind::KSet;
    o.name = "K(" + sys.label(i) + ")";
    o.dim = sys.dim();
    o.tol = tol;
    o.defining.push_back(lie_derivative(sys.lyapunov(), sys.field(i)));
    return o;
}

/// M_i truncated at kmax: the common zero set of the odd-order iterated Lie
/// derivatives L^1, L^3, ... up to kmax. Identically-zero orders are dropped
/// (and recorded) instead of constraining.
inline SetOracle m_set(const SwitchedSystem& sys, int i, int kmax, double tol = 1e-6) {
    if (kmax < 1) throw std::invalid_argument("m_set: kmax >= 1 required");
    if (!sys.lyapunov().is_polynomial() || !sys.field(i).is_polynomial())
        throw NonPolynomialError("m_set requires a polynomial mode and Lyapunov function");
    SetOracle o;
    o.kind = SetOracle::Kind::MSet;
    o.name = "M(" + sys.label(i) + ")";
    o.dim = sys.dim();
    o.tol = tol;
    o.truncated_at_kmax = kmax;
    auto chain = lie_chain(sys.lyapunov(), sys.field(i), kmax);
    bool any_nonzero = false;
    for (int k = 1; k <= kmax; k += 2) {
        const Expr& L = chain[k - 1];
        if (L.is_zero()) continue;
        any_nonzero = true;
        o.defining.push_back(L);
    }
    o.all_orders_zero = !any_nonzero;
    return o;
}

/// K = intersection of all K_i (defining expressions of every mode together),
/// plus a sphere-sampled flag for K = {0}.
struct KIntersection {
    SetOracle oracle;
    bool k_is_origin = false;
    std::vector<double> counterexample; // sampled point in K away from 0, if any
};

inline KIntersection k_intersection(const SwitchedSystem& sys, double tol = 1e-6, int mesh = 4096,
                                    std::vector<double> radii = {0.1, 0.5, 1.0}) {
    KIntersection out;
    out.oracle.kind = SetOracle::Kind::KIntersection;
    out.oracle.name = "K";
    out.oracle.dim = sys.dim();
    out.oracle.tol = tol;
    for (int i = 0; i < sys.mode_count(); ++i)
        out.oracle.defining.push_back(lie_derivative(sys.lyapunov(), sys.field(i)));
    out.k_is_origin = true;
    auto dirs = unit_directions(sys.dim(), mesh);
    std::vector<double> pt(sys.dim());
    for (double rho : radii) {
        for (const auto& d : dirs) {
            for (int j = 0; j < sys.dim(); ++j) pt[j] = rho * d[j];
            if (out.oracle.defect(pt) <= tol) {
                out.k_is_origin = false;
                out.counterexample = pt;
                return out;
            }
        }
    }
    return out;
}

/// Kernel of the Hessian of L_{f_i}V at the origin. Exact degree-2 extraction
/// on the polynomial path, central finite differences otherwise. Throws if a
/// positive eigenvalue beyond tolerance shows up (the weak-Lyapunov
/// hypothesis forces negative semidefiniteness).
inline LinearSubspace hessian_kernel(const SwitchedSystem& sys, int i, double rank_tol = 1e-8) {
    int d = sys.dim();
    Expr L = lie_derivative(sys.lyapunov(), sys.field(i));
    Eigen::MatrixXd H(d, d);
    if (L.is_polynomial()) {
        PolyQ q = L.poly().homogeneous_component(2);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                Monomial m(d, 0);
                m[r] += 1;
                m[c] += 1;
                Rational coef = q.coefficient(m);
                H(r, c) = to_double(coef) * (r == c ? 2.0 : 1.0);
            }
    } else {
        const double h = 1e-4;
        std::vector<double> x(d, 0.0);
        auto at = [&](int a, double va, int b, double vb) {
            std::fill(x.begin(), x.end(), 0.0);
            x[a] += va;
            x[b] += vb;
            return L.eval(x);
        };
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                if (r == c) {
                    double f0 = at(r, 0, r, 0);
                    H(r, r) = (at(r, h, r, 0) - 2 * f0 + at(r, -h, r, 0)) / (h * h);
                } else {
                    H(r, c) = (at(r, h, c, h) - at(r, h, c, -h) - at(r, -h, c, h) +
                               at(r, -h, c, -h)) /
                              (4 * h * h);
                }
            }
        H = 0.5 * (H + H.transpose().eval());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    double cut = rank_tol * scale;
    // FD noise is ~1e-8 * scale; keep the positive-eigenvalue guard above it
    double pos_guard = L.is_polynomial() ? cut : std::max(cut, 1e-5 * scale);
    std::vector<int> keep;
    for (int k = 0; k < d; ++k) {
        double lam = es.eigenvalues()(k);
        if (lam > pos_guard)
            throw std::runtime_error("hessian_kernel: positive eigenvalue " + std::to_string(lam) +
                                     " violates the weak-Lyapunov hypothesis");
        if (std::abs(lam) <= pos_guard) keep.push_back(k);
    }
    Eigen::MatrixXd span(d, static_cast<int>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) span.col(static_cast<int>(k)) = es.eigenvectors().col(keep[k]);
    return LinearSubspace::from_span(span, 1e-12);
}

/// Truncated cone approximation of M_i: for every order k <= kmax with
/// L^k V not identically zero, keep the lowest nonzero homogeneous component.
inline HomogeneousCone m_cone(const SwitchedSystem& sys, int i, int kmax) {
    if (!sys.lyapunov().is_polynomial() || !sys.field(i).is_polynomial())
        throw NonPolynomialError("m_cone requires a polynomial mode and Lyapunov function");
    HomogeneousCone cone;
    cone.dim = sys.dim();
    cone.truncated_at_kmax = kmax;
    auto chain = lie_chain(sys.lyapunov(), sys.field(i), kmax);
    for (int k = 1; k <= kmax; ++k) {
        const Expr& L = chain[k - 1];
        if (L.is_zero()) {
            cone.skipped_zero_orders.push_back(k);
            continue;
        }
        cone.forms.push_back(lowest_homogeneous(L));
    }
    return cone;
}

//---------------------------------------------------------------------------//
// Level-set sampling and connected-component analysis
//---------------------------------------------------------------------------//

struct LevelSample {
    std::vector<std::vector<double>> points; // on {V=R}, inside the oracle union
    std::vector<std::vector<bool>> member;   // per point, per oracle
    int rays_total = 0;
    int rays_skipped = 0;
    std::vector<double> min_defect; // per oracle, over all level points (not just retained)
};

/// Sample {V=R} by bisection along rays, keep points inside the union of the
/// oracles. V positive definite makes V(t*dir) increase from 0 near the
/// origin; rays whose bracket fails are counted, not hidden.
inline LevelSample sample_level_set(const Expr& V, const std::vector<SetOracle>& oracles, double R,
                                    double r, int mesh) {
    LevelSample out;
    out.min_defect.assign(oracles.size(), std::numeric_limits<double>::infinity());
    auto dirs = unit_directions(V.dim(), mesh);
    out.rays_total = static_cast<int>(dirs.size());
    std::vector<double> pt(V.dim());
    for (const auto& dir : dirs) {
        auto v_at = [&](double t) {
            for (int j = 0; j < V.dim(); ++j) pt[j] = t * dir[j];
            return V.eval(pt);
        };
        double hi = r;
        if (!(v_at(hi) >= R)) {
            ++out.rays_skipped;
            continue;
        }
        double lo = 0.0;
        for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (lo + hi);
            (v_at(mid) < R ? lo : hi) = mid;
        }
        double t = 0.5 * (lo + hi);
        std::vector<double> x(V.dim());
        for (int j = 0; j < V.dim(); ++j) x[j] = t * dir[j];
        bool any = false;
        std::vector<bool> mem(oracles.size(), false);
        for (std::size_t oi = 0; oi < oracles.size(); ++oi) {
            double def = oracles[oi].defect(x);
            out.min_defect[oi] = std::min(out.min_defect[oi], def);
            mem[oi] = def <= oracles[oi].tol;
            any = any || mem[oi];
        }
        if (any) {
            out.points.push_back(std::move(x));
            out.member.push_back(std::move(mem));
        }
    }
    return out;
}

namespace detail {

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t i) {
        while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  private:
    std::vector<std::size_t> parent_;
};

inline double point_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

/// eps-graph connected components; eps <= 0 selects 3x the mean
/// nearest-neighbor spacing.
inline std::vector<std::vector<std::size_t>> eps_components(
    const std::vector<std::vector<double>>& pts, double& eps) {
    std::size_t n = pts.size();
    std::vector<std::vector<std::size_t>> comps;
    if (n == 0) return comps;
    if (eps <= 0) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) best = std::min(best, point_dist(pts[i], pts[j]));
            if (std::isfinite(best)) total += best;
        }
        eps = n > 1 ? 3.0 * total / static_cast<double>(n) : 1.0;
    }
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (point_dist(pts[i], pts[j]) <= eps) uf.unite(i, j);
    std::map<std::size_t, std::vector<std::size_t>> group;
    for (std::size_t i = 0; i < n; ++i) group[uf.find(i)].push_back(i);
    comps.reserve(group.size());
    for (auto& [root, idx] : group) comps.push_back(std::move(idx));
    return comps;
}

} // namespace detail

struct LevelCheckParams {
    double r = 1.0;              // neighborhood radius
    std::vector<double> levels;  // values R of V
    int mesh = 2000;             // unit directions per level
    double eps = 0.0;            // component graph radius; auto when <= 0
    int min_points = 8;          // fewer retained points => inconclusive
    double absent_factor = 100.; // oracle absent at level if min defect > factor*tol
};

inline void fill_common_params(ConditionVerdict& v, const std::vector<SetOracle>& oracles,
                               const LevelCheckParams& p) {
    nlohmann::json os = nlohmann::json::array();
    for (const auto& o : oracles) os.push_back(o.to_json());
    v.params["oracles"] = os;
    v.params["r"] = p.r;
    v.params["mesh"] = p.mesh;
    v.params["eps_requested"] = p.eps;
}

/// Core connected-component condition: for every level R, no component of
/// {V=R} (ball r) intersected with the union of the oracles may touch all of
/// them. Sampling-based: a falsifier and strong-evidence tool, with
/// inconclusive outcomes under sparse sampling.
inline ConditionVerdict check_components_touch_all(const SwitchedSystem& sys,
                                                   const std::vector<SetOracle>& oracles,
                                                   const LevelCheckParams& p,
                                                   const std::string& label) {
    ConditionVerdict v;
    v.condition = label;
    nlohmann::json levels_out = nlohmann::json::array();
    if (oracles.empty()) throw std::invalid_argument("condition check needs at least one oracle");
    for (const auto& o : oracles)
        if (o.dim != sys.dim()) throw std::invalid_argument("oracle dimension mismatch");

    bool any_inconclusive = false;
    for (double R : p.levels) {
        if (R <= 0) throw std::invalid_argument("levels must be positive");
        LevelSample s = sample_level_set(sys.lyapunov(), oracles, R, p.r, p.mesh);
        nlohmann::json lj{{"R", R},
                          {"rays", s.rays_total},
                          {"rays_skipped", s.rays_skipped},
                          {"retained_points", s.points.size()}};
        if (s.rays_skipped == s.rays_total) {
            throw std::invalid_argument("level R=" + std::to_string(R) +
                                        " does not meet the ball of radius " + std::to_string(p.r));
        }
        if (s.rays_skipped * 2 > s.rays_total) {
            lj["status"] = "inconclusive (ray root-finding skipped > 50%)";
            any_inconclusive = true;
            levels_out.push_back(lj);
            continue;
        }
        // A component touching all oracles needs every oracle near this level.
        bool some_absent = false;
        for (std::size_t oi = 0; oi < oracles.size(); ++oi)
            if (s.min_defect[oi] > p.absent_factor * oracles[oi].tol) some_absent = true;
        if (some_absent) {
            lj["status"] = "pass (some oracle absent from this level)";
            levels_out.push_back(lj);
            continue;
        }
        if (static_cast<int>(s.points.size()) < p.min_points) {
            lj["status"] = "inconclusive (fewer than " + std::to_string(p.min_points) +
                           " retained points)";
            any_inconclusive = true;
            levels_out.push_back(lj);
            continue;
        }
        double eps = p.eps;
        auto comps = detail::eps_components(s.points, eps);
        lj["eps"] = eps;
        lj["components"] = comps.size();
        bool offending = false;
        for (const auto& comp : comps) {
            std::vector<bool> touched(oracles.size(), false);
            for (std::size_t idx : comp)
                for (std::size_t oi = 0; oi < oracles.size(); ++oi)
                    if (s.member[idx][oi]) touched[oi] = true;
            if (std::all_of(touched.begin(), touched.end(), [](bool t) { return t; })) {
                offending = true;
                for (std::size_t idx : comp) {
                    if (v.witness.size() >= 16) break;
                    v.witness.push_back(s.points[idx]);
                }
                break;
            }
        }
        if (offending) {
            lj["status"] = "fail (component touches every oracle)";
            levels_out.push_back(lj);
            v.holds = Holds::No;
            v.params["levels"] = levels_out;
            fill_common_params(v, oracles, p);
            return v;
        }
        lj["status"] = "pass";
        levels_out.push_back(lj);
    }
    v.holds = any_inconclusive ? Holds::Inconclusive : Holds::Yes;
    v.params["levels"] = levels_out;
    fill_common_params(v, oracles, p);
    return v;
}

/// Condition (C) over the truncated M_i sets.
inline ConditionVerdict check_condition_C(const SwitchedSystem& sys,
                                          const std::vector<SetOracle>& m_oracles,
                                          const LevelCheckParams& p) {
    return check_components_touch_all(sys, m_oracles, p, "C");
}

/// Condition (K) over K_i for the given mode subset J (0-based indices).
inline ConditionVerdict check_condition_K(const SwitchedSystem& sys, const std::vector<int>& J,
                                          const LevelCheckParams& p, double tol = 1e-6) {
    if (J.empty()) throw std::invalid_argument("condition K: J must be nonempty");
    std::vector<SetOracle> oracles;
    oracles.reserve(J.size());
    for (int i : J) oracles.push_back(k_set(sys, i, tol));
    ConditionVerdict v = check_components_touch_all(sys, oracles, p, "K");
    nlohmann::json jj = nlohmann::json::array();
    for (int i : J) jj.push_back(sys.label(i));
    v.params["J"] = jj;
    return v;
}

//---------------------------------------------------------------------------//
// Cone and subspace conditions
//---------------------------------------------------------------------------//

/// Sphere test for M_i cap M_j = {0} on the cone approximations: yes when no
/// sampled unit direction lies in both cones.
inline Holds cone_pair_trivial(const HomogeneousCone& c1, const HomogeneousCone& c2, int mesh,
                               double tol = 1e-6, std::vector<double>* witness = nullptr) {
    if (c1.dim != c2.dim) throw std::invalid_argument("cone dimension mismatch");
    if (mesh < 8) return Holds::Inconclusive;
    auto dirs = unit_directions(c1.dim, mesh);
    for (const auto& d : dirs) {
        if (c1.defect(d) <= tol && c2.defect(d) <= tol) {
            if (witness) *witness = d;
            return Holds::No;
        }
    }
    return Holds::Yes;
}

/// Connected-component test on the unit sphere for a family of cones
/// (each cone contributing its forms as a membership oracle).
inline ConditionVerdict check_cones_on_sphere(const std::vector<HomogeneousCone>& cones, int mesh,
                                              double tol, double eps = 0.0) {
    ConditionVerdict v;
    v.condition = "Theo2";
    if (cones.empty()) throw std::invalid_argument("need at least one cone");
    int dim = cones.front().dim;
    auto dirs = unit_directions(dim, mesh);
    std::vector<std::vector<double>> pts;
    std::vector<std::vector<bool>> member;
    std::vector<double> min_defect(cones.size(), std::numeric_limits<double>::infinity());
    for (const auto& d : dirs) {
        bool any = false;
        std::vector<bool> mem(cones.size(), false);
        for (std::size_t ci = 0; ci < cones.size(); ++ci) {
            double def = cones[ci].defect(d);
            min_defect[ci] = std::min(min_defect[ci], def);
            mem[ci] = def <= tol;
            any = any || mem[ci];
        }
        if (any) {
            pts.push_back(d);
            member.push_back(std::move(mem));
        }
    }
    v.params["mesh"] = mesh;
    v.params["tol"] = tol;
    v.params["retained_points"] = pts.size();
    for (std::size_t ci = 0; ci < cones.size(); ++ci) {
        if (cones[ci].is_whole_space()) {
            // whole-space cone touches everything; it cannot separate
            continue;
        }
        if (min_defect[ci] > 100.0 * tol) {
            v.holds = Holds::Yes;
            v.note = "a cone misses the unit sphere entirely";
            return v;
        }
    }
    if (static_cast<int>(pts.size()) < 8) {
        bool all_empty = pts.empty();
        v.holds = all_empty ? Holds::Yes : Holds::Inconclusive;
        if (all_empty) v.note = "no sphere direction lies in any cone";
        return v;
    }
    auto comps = detail::eps_components(pts, eps);
    v.params["eps"] = eps;
    v.params["components"] = comps.size();
    for (const auto& comp : comps) {
        std::vector<bool> touched(cones.size(), false);
        for (std::size_t ci = 0; ci < cones.size(); ++ci)
            if (cones[ci].is_whole_space()) touched[ci] = true;
        for (std::size_t idx : comp)
            for (std::size_t ci = 0; ci < cones.size(); ++ci)
                if (member[idx][ci]) touched[ci] = true;
        if (std::all_of(touched.begin(), touched.end(), [](bool t) { return t; })) {
            v.holds = Holds::No;
            for (std::size_t idx : comp) {
                if (v.witness.size() >= 16) break;
                v.witness.push_back(pts[idx]);
            }
            return v;
        }
    }
    v.holds = Holds::Yes;
    return v;
}

/// The four sufficient subspace conditions under the common hypothesis that
/// the intersection of the family is {0}:
///   1. some space is {0};
///   2. some space is a line contained in no strictly larger member;
///   3. exactly two spaces;
///   4. dim of the sum exceeds sum of dims - p + 1.
/// The verdict records the first condition that fires and per-condition flags.
inline ConditionVerdict subspace_conditions(const std::vector<LinearSubspace>& spaces,
                                            double tol = 1e-8) {
    if (spaces.empty()) throw std::invalid_argument("subspace_conditions: empty family");
    int d = spaces.front().dim();
    for (const auto& s : spaces)
        if (s.dim() != d) throw std::invalid_argument("subspace dimension mismatch");
    int p = static_cast<int>(spaces.size());

    ConditionVerdict v;
    LinearSubspace inter = subspace_intersection(spaces);
    bool trivial_intersection = inter.rank() == 0;

    bool c1 = false, c2 = false, c4 = false;
    for (const auto& s : spaces) c1 = c1 || s.rank() == 0;
    for (int i = 0; i < p && !c2; ++i) {
        if (spaces[i].rank() != 1) continue;
        bool ok = true;
        for (int j = 0; j < p; ++j) {
            if (spaces[i].contained_in(spaces[j], tol) && !spaces[i].equals(spaces[j], tol)) {
                ok = false;
                break;
            }
        }
        c2 = ok;
    }
    bool c3 = p == 2;
    if (p > 2) {
        int sum_dim = subspace_sum_dim(spaces);
        int dims = 0;
        for (const auto& s : spaces) dims += s.rank();
        c4 = sum_dim > dims - p + 1;
    }

    int fired = c1 ? 1 : c2 ? 2 : c3 ? 3 : c4 ? 4 : 0;
    v.params["intersection_rank"] = inter.rank();
    v.params["condition_flags"] = {{"1", c1}, {"2", c2}, {"3", c3}, {"4", c4}};
    v.params["dims"] = [&] {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& s : spaces) a.push_back(s.rank());
        return a;
    }();
    if (trivial_intersection && fired > 0) {
        v.condition = "Cor5." + std::to_string(fired);
        v.params["fired"] = fired;
        v.holds = Holds::Yes;
    } else {
        v.condition = "Cor5";
        v.params["fired"] = nullptr;
        v.holds = Holds::No;
        if (!trivial_intersection) {
            v.note = "intersection of the subspaces is nontrivial";
            for (int c = 0; c < inter.rank(); ++c) {
                Eigen::VectorXd b = inter.basis().col(c);
                v.witness.emplace_back(b.data(), b.data() + b.size());
            }
        } else {
            v.note = "none of conditions 1-4 fires";
            for (const auto& s : spaces)
                for (int c = 0; c < s.rank(); ++c) {
                    Eigen::VectorXd b = s.basis().col(c);
                    v.witness.emplace_back(b.data(), b.data() + b.size());
                }
        }
    }
    return v;
}

} // namespace swstab
