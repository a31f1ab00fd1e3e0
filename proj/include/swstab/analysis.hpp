//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include "swstab/geometry.hpp"
#include "swstab/linear.hpp"
#include "swstab/model.hpp"
#include "swstab/planar.hpp"
#include "swstab/version.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace swstab {

struct AnalysisParams {
    double cert_radius = 2.0;
    int cert_samples = 10000;
    double cert_tol = 1e-12;
    std::uint64_t seed = 0;

    double membership_tol = 1e-6; // defect tolerance for set oracles
    int kmax = 5;                 // truncation order for the M sets and cones
    int mesh = 2000;
    double eps = 0.0;             // component graph radius, auto when <= 0
    double radius = 0.0;          // level-set ball; <= 0 selects the unit ball
    std::vector<double> levels;   // empty selects fractions of min V on the sphere

    double planar_box = 2.0;
    int planar_resolution = 512;

    nlohmann::json to_json() const {
        return {{"cert_radius", cert_radius},
                {"cert_samples", cert_samples},
                {"cert_tol", cert_tol},
                {"seed", seed},
                {"membership_tol", membership_tol},
                {"kmax", kmax},
                {"mesh", mesh},
                {"eps", eps},
                {"radius", radius},
                {"levels", levels},
                {"planar_box", planar_box},
                {"planar_resolution", planar_resolution}};
    }
};

/// A stability claim always names the geometric condition it rests on and the
/// class of switching signals it covers.
struct StabilityClaim {
    std::string statement;
    std::string condition;    // verdict label, e.g. "C", "K", "Kzero", "Cor5.2"
    std::string signal_class; // e.g. "regular", "J_u={...}", "all"
    std::vector<std::string> requires_assumptions;

    nlohmann::json to_json() const {
        return {{"statement", statement},
                {"condition", condition},
                {"signal_class", signal_class},
                {"requires_assumptions", requires_assumptions}};
    }
};

struct ModeAnalysis {
    std::string name;
    std::string lie_derivative;
    std::optional<SetOracle> k_oracle;
    std::optional<LinearSubspace> hessian_ker;
    std::string hessian_error;
    std::optional<SetOracle> m_oracle;
    std::string m_error;
    std::optional<HomogeneousCone> cone;
    std::string cone_error;
    std::optional<LinearSubspace> center_subspace;
    std::string center_error;

    nlohmann::json to_json() const {
        nlohmann::json j{{"name", name}, {"lie_derivative", lie_derivative}};
        j["k_set"] = k_oracle ? k_oracle->to_json() : nlohmann::json();
        j["hessian_kernel"] = hessian_ker ? hessian_ker->to_json() : nlohmann::json(hessian_error);
        j["m_set"] = m_oracle ? m_oracle->to_json() : nlohmann::json(m_error);
        j["m_cone"] = cone ? cone->to_json() : nlohmann::json(cone_error);
        j["center_subspace"] =
            center_subspace ? center_subspace->to_json() : nlohmann::json(center_error);
        return j;
    }
};

struct AnalysisReport {
    nlohmann::json system;
    AnalysisParams params;
    CertificationReport certification;
    PositiveDefiniteResult positive_definite;
    std::vector<ModeAnalysis> modes;
    std::vector<ConditionVerdict> conditions;
    std::optional<PlanarTestResult> planar;
    DeclaredAssumptions assumptions;
    std::vector<StabilityClaim> claims;
    std::vector<std::string> notes;

    nlohmann::json to_json() const {
        nlohmann::json jmodes = nlohmann::json::array();
        for (const auto& m : modes) jmodes.push_back(m.to_json());
        nlohmann::json jconds = nlohmann::json::array();
        for (const auto& c : conditions) jconds.push_back(c.to_json());
        nlohmann::json jclaims = nlohmann::json::array();
        for (const auto& c : claims) jclaims.push_back(c.to_json());
        return {{"version", kVersion},
                {"system", system},
                {"parameters", params.to_json()},
                {"certification", certification.to_json()},
                {"positive_definite", positive_definite.to_json()},
                {"modes", jmodes},
                {"conditions", jconds},
                {"planar", planar ? planar->to_json() : nlohmann::json()},
                {"assumptions", assumptions.to_json()},
                {"claims", jclaims},
                {"notes", notes}};
    }
};

struct CertificationFailure : std::runtime_error {
    explicit CertificationFailure(const CertificationReport& rep)
        : std::runtime_error("weak-Lyapunov certification failed"), report(rep) {}
    CertificationReport report;
};

/// Full analysis pipeline: certification, per-mode geometric objects, every
/// applicable condition check, the planar test, and the claims they support.
inline AnalysisReport analyze(const SwitchedSystem& sys, const AnalysisParams& inp = {}) {
    AnalysisReport rep;
    AnalysisParams p = inp;
    rep.system = sys.to_json();
    rep.assumptions = sys.assumptions();

    rep.certification = certify_weak_lyapunov(sys, p.cert_radius, p.cert_samples, p.cert_tol, p.seed);
    if (!rep.certification.pass) throw CertificationFailure(rep.certification);
    rep.positive_definite = positive_definite_check(sys.lyapunov(), p.cert_radius, p.cert_samples, p.seed);

    // default neighborhood: largest sublevel set inside the unit ball
    if (p.radius <= 0) p.radius = 1.0;
    if (p.levels.empty()) {
        double vmin = std::numeric_limits<double>::infinity();
        for (const auto& d : unit_directions(sys.dim(), 512)) {
            std::vector<double> x(d.begin(), d.end());
            for (auto& c : x) c *= p.radius;
            vmin = std::min(vmin, sys.lyapunov().eval(x));
        }
        p.levels = {0.25 * vmin, 0.5 * vmin, 0.75 * vmin};
    }
    rep.params = p;

    bool poly = sys.is_polynomial();
    std::vector<SetOracle> m_oracles;
    std::vector<HomogeneousCone> cones;
    std::vector<LinearSubspace> hessian_kernels;
    std::vector<LinearSubspace> center_subspaces;
    bool all_m = true, all_cones = true, all_hessian = true, all_centers = true;

    for (int i = 0; i < sys.mode_count(); ++i) {
        ModeAnalysis ma;
        ma.name = sys.label(i);
        Expr L = lie_derivative(sys.lyapunov(), sys.field(i));
        ma.lie_derivative = L.to_string();
        ma.k_oracle = k_set(sys, i, p.membership_tol);
        try {
            ma.hessian_ker = hessian_kernel(sys, i);
            hessian_kernels.push_back(*ma.hessian_ker);
        } catch (const std::exception& e) {
            ma.hessian_error = e.what();
            all_hessian = false;
        }
        if (poly) {
            ma.m_oracle = m_set(sys, i, p.kmax, p.membership_tol);
            m_oracles.push_back(*ma.m_oracle);
            ma.cone = m_cone(sys, i, p.kmax);
            cones.push_back(*ma.cone);
        } else {
            try {
                ma.m_oracle = m_set(sys, i, p.kmax, p.membership_tol);
                m_oracles.push_back(*ma.m_oracle);
            } catch (const std::exception& e) {
                ma.m_error = e.what();
                all_m = false;
            }
            try {
                ma.cone = m_cone(sys, i, p.kmax);
                cones.push_back(*ma.cone);
            } catch (const std::exception& e) {
                ma.cone_error = e.what();
                all_cones = false;
            }
        }
        try {
            ma.center_subspace = tangent_center_subspace(sys.field(i));
            center_subspaces.push_back(*ma.center_subspace);
        } catch (const std::exception& e) {
            ma.center_error = e.what();
            all_centers = false;
        }
        rep.modes.push_back(std::move(ma));
    }

    LevelCheckParams lp;
    lp.r = p.radius;
    lp.levels = p.levels;
    lp.mesh = p.mesh;
    lp.eps = p.eps;

    auto add_claim = [&](std::string stmt, std::string cond, std::string cls,
                         std::vector<std::string> needs) {
        rep.claims.push_back({std::move(stmt), std::move(cond), std::move(cls), std::move(needs)});
    };

    // Condition (C) on the truncated M sets (regular switching class)
    if (all_m && !m_oracles.empty()) {
        // isolated-origin pre-check on the cone pairs: sufficient, not necessary
        std::string iso_note;
        if (all_cones && cones.size() >= 2) {
            bool confirmed = false;
            for (std::size_t i = 0; i < cones.size() && !confirmed; ++i)
                for (std::size_t j = i + 1; j < cones.size() && !confirmed; ++j)
                    if (cone_pair_trivial(cones[i], cones[j], p.mesh, p.membership_tol) == Holds::Yes)
                        confirmed = true;
            iso_note = confirmed
                           ? "origin isolation confirmed via a trivial cone pair"
                           : "cone pre-check could not confirm origin isolation (not necessary)";
        }
        try {
            ConditionVerdict v = check_condition_C(sys, m_oracles, lp);
            if (!iso_note.empty()) v.note = v.note.empty() ? iso_note : v.note + "; " + iso_note;
            if (v.holds == Holds::Yes)
                add_claim("asymptotically stable for every regular switching signal", "C",
                          "regular", {});
            rep.conditions.push_back(std::move(v));
        } catch (const std::exception& e) {
            rep.notes.push_back(std::string("condition C check failed: ") + e.what());
        }
    } else {
        rep.notes.push_back("condition C skipped: M sets unavailable for some mode");
    }

    // Cone version on the unit sphere
    if (all_cones && !cones.empty()) {
        ConditionVerdict v = check_cones_on_sphere(cones, p.mesh, p.membership_tol, p.eps);
        v.params["applied_to"] = "m_cones";
        if (v.holds == Holds::Yes)
            add_claim("asymptotically stable for every regular switching signal", "Theo2",
                      "regular", {});
        rep.conditions.push_back(std::move(v));
    }

    // Center-subspace routes need analyticity of the data
    if (all_centers && !center_subspaces.empty()) {
        std::vector<std::string> need = {"analytic"};
        bool analytic = sys.assumptions().analytic;
        {
            ConditionVerdict v = subspace_conditions(center_subspaces);
            v.params["applied_to"] = "center_subspaces";
            if (!analytic)
                v.note = "requires the declared analyticity assumption (not asserted)";
            if (v.holds == Holds::Yes && analytic)
                add_claim("asymptotically stable for every regular switching signal", v.condition,
                          "regular", need);
            rep.conditions.push_back(std::move(v));
        }
        {
            std::vector<HomogeneousCone> sub_cones;
            for (const auto& s : center_subspaces) {
                // distance-to-subspace as one quadratic form
                HomogeneousCone c;
                c.dim = s.dim();
                Eigen::MatrixXd P = Eigen::MatrixXd::Identity(s.dim(), s.dim());
                if (s.rank() > 0) P -= s.basis() * s.basis().transpose();
                PolyQ q(s.dim());
                for (int r = 0; r < s.dim(); ++r)
                    for (int cc = 0; cc < s.dim(); ++cc) {
                        if (P(r, cc) == 0.0) continue;
                        Monomial m(s.dim(), 0);
                        m[r] += 1;
                        m[cc] += 1;
                        q.add_term(m, rational_from_double(P(r, cc)));
                    }
                if (!q.is_zero()) c.forms.push_back(HomogeneousForm{2, s.dim(), q});
                sub_cones.push_back(std::move(c));
            }
            ConditionVerdict v = check_cones_on_sphere(sub_cones, p.mesh, p.membership_tol, p.eps);
            v.params["applied_to"] = "center_subspaces";
            if (!analytic)
                v.note = "requires the declared analyticity assumption (not asserted)";
            if (v.holds == Holds::Yes && analytic)
                add_claim("asymptotically stable for every regular switching signal", "Theo2",
                          "regular", need);
            rep.conditions.push_back(std::move(v));
        }
    }

    // Condition (K) for J = all modes
    {
        std::vector<int> J(sys.mode_count());
        std::iota(J.begin(), J.end(), 0);
        try {
            ConditionVerdict v = check_condition_K(sys, J, lp, p.membership_tol);
            if (v.holds == Holds::Yes) {
                std::string cls = "J_u={all modes}";
                std::string stmt = "asymptotically stable for every signal activating all modes "
                                   "on infinite total time";
                add_claim(stmt, "K", cls, {});
            }
            rep.conditions.push_back(std::move(v));
        } catch (const std::exception& e) {
            rep.notes.push_back(std::string("condition K check failed: ") + e.what());
        }
    }

    // Linearized K condition on the Hessian kernels
    if (all_hessian && !hessian_kernels.empty()) {
        ConditionVerdict v = subspace_conditions(hessian_kernels);
        v.params["applied_to"] = "hessian_kernels";
        if (v.holds == Holds::Yes)
            add_claim("asymptotically stable for every signal activating all modes on infinite "
                      "total time",
                      v.condition, "J_u={all modes}", {});
        rep.conditions.push_back(std::move(v));
    }

    // Two-mode intersection route
    if (sys.mode_count() == 2) {
        KIntersection K = k_intersection(sys, p.membership_tol, std::max(p.mesh, 4096));
        ConditionVerdict v;
        v.condition = "Kzero";
        v.holds = K.k_is_origin ? Holds::Yes : Holds::No;
        if (!K.k_is_origin) v.witness.push_back(K.counterexample);
        v.params["oracle"] = K.oracle.to_json();
        std::vector<std::string> need = {"modes_gas", "radially_unbounded"};
        bool ok = sys.assumptions().modes_gas && sys.assumptions().radially_unbounded;
        if (K.k_is_origin && ok)
            add_claim("globally uniformly asymptotically stable for every switching signal",
                      "Kzero", "all", need);
        if (K.k_is_origin && !ok)
            v.note = "requires declared GAS modes and radially unbounded V (not asserted)";
        rep.conditions.push_back(std::move(v));
    }

    // Planar collinearity test
    if (sys.dim() == 2 && sys.mode_count() == 2) {
        rep.planar = planar_guas_test(sys, p.planar_box, p.planar_resolution);
        if (rep.planar->verdict == PlanarVerdict::Guas)
            add_claim("globally uniformly asymptotically stable for every switching signal",
                      "colinear", "all",
                      {"analytic", "modes_gas", "radially_unbounded",
                       "dv_vanishes_only_at_origin"});
        if (rep.planar->verdict == PlanarVerdict::NotGuas)
            add_claim("not GUAS: the convexified system has a nonzero equilibrium", "colinear",
                      "all",
                      {"analytic", "modes_gas", "radially_unbounded",
                       "dv_vanishes_only_at_origin"});
    }

    return rep;
}

} // namespace swstab
