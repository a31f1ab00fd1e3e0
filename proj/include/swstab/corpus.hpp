//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include "swstab/analysis.hpp"
#include "swstab/sim.hpp"

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace swstab {

/// One expected fact about a corpus case. `min_kmax` marks facts that need a
/// deep enough Lie-chain truncation; with a smaller analysis kmax the fact is
/// reported as skipped-by-parameter instead of failed.
struct ExpectedFact {
    std::string name;
    std::string source; // corpus label of the originating example
    int min_kmax = 1;
    std::function<std::optional<std::string>(const AnalysisReport&, const SwitchedSystem&)> check;
};

struct SimScenario {
    std::string name;
    std::string signal_spec;
    std::vector<double> x0;
    double h = 1e-3;
    double T = 100.0;
    double rho = 0.2;
    double eta = 1e-3;
    std::function<std::optional<std::string>(const SwitchedSystem&, const Trajectory&,
                                             const OmegaEstimate&)>
        check;
};

struct CorpusCase {
    std::string name;
    nlohmann::json system_json;
    AnalysisParams params;
    std::vector<ExpectedFact> facts;
    std::vector<SimScenario> scenarios;

    SwitchedSystem build() const { return SwitchedSystem::from_json(system_json); }
};

namespace corpus_detail {

inline std::optional<std::string> expect_poly_equal(const std::string& got_label,
                                                    const Expr& got,
                                                    const std::string& want_text) {
    Expr want = Expr::parse(want_text, got.dim());
    if (got.is_polynomial() && want.is_polynomial() && got.poly() == want.poly())
        return std::nullopt;
    return got_label + " = " + got.to_string() + ", expected " + want_text;
}

inline const ConditionVerdict* find_condition(const AnalysisReport& rep, const std::string& label,
                                              const std::string& applied_to = "") {
    for (const auto& c : rep.conditions) {
        if (c.condition.rfind(label, 0) != 0) continue;
        if (!applied_to.empty()) {
            auto it = c.params.find("applied_to");
            if (it == c.params.end() || it->get<std::string>() != applied_to) continue;
        }
        return &c;
    }
    return nullptr;
}

inline std::optional<std::string> expect_holds(const AnalysisReport& rep, const std::string& label,
                                               Holds want, const std::string& applied_to = "") {
    const ConditionVerdict* c = find_condition(rep, label, applied_to);
    if (!c) return "condition " + label + " missing from the report";
    if (c->holds != want)
        return "condition " + label + ": holds=" + to_string(c->holds) + ", expected " +
               to_string(want);
    if (want == Holds::No && c->witness.empty()) return "condition " + label + ": no witness";
    return std::nullopt;
}

inline Expr lie_of(const SwitchedSystem& sys, int i) {
    return lie_derivative(sys.lyapunov(), sys.field(i));
}

} // namespace corpus_detail

/// The built-in corpus: the paper-style benchmark family the acceptance suite
/// drives. Expected facts are derived values, cross-checked symbolically and
/// numerically; each carries its corpus source label.
inline std::vector<CorpusCase> builtin_corpus() {
    using corpus_detail::expect_holds;
    using corpus_detail::expect_poly_equal;
    using corpus_detail::lie_of;
    std::vector<CorpusCase> cases;

    //-- example-9.1: two cusp-degenerate modes ------------------------------//
    {
        CorpusCase c;
        c.name = "example-9.1";
        c.system_json = {
            {"dim", 2},
            {"lyapunov", "x1^2 + x2^2"},
            {"modes",
             {{{"name", "f1"},
               {"field", {"-x1*(x1^2 - x2^3)^2", "-x2*(x1^2 - x2^3)^2"}}},
              {{"name", "f2"},
               {"field", {"-x1*(x2^2 - x1^3)^2", "-x2*(x2^2 - x1^3)^2"}}}}},
            {"assumptions",
             {{"analytic", true},
              {"modes_gas", false}, // both modes have curves of equilibria
              {"radially_unbounded", true},
              {"dv_vanishes_only_at_origin", true}}}};
        c.params.membership_tol = 1e-3;
        c.params.radius = 1.5;
        c.params.levels = {0.25, 1.0, 1.96};
        c.facts.push_back({"lie_f1", "example 9.1", 1,
                           [](const AnalysisReport&, const SwitchedSystem& sys) {
                               return expect_poly_equal(
                                   "L_f1 V", lie_of(sys, 0),
                                   "-2*(x1^2 + x2^2)*(x1^2 - x2^3)^2");
                           }});
        c.facts.push_back({"m1_is_cusp", "example 9.1", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&)
                               -> std::optional<std::string> {
                               // M1 membership follows the cusp x1^2 = x2^3
                               const auto& o = *rep.modes[0].m_oracle;
                               double on[2] = {0.512, 0.64}; // (0.8^3, 0.8^2)
                               double off[2] = {0.6, 0.64};
                               if (o.defect(on) > o.tol) return std::string("cusp point rejected");
                               if (o.defect(off) <= o.tol) return std::string("off-cusp point accepted");
                               return std::nullopt;
                           }});
        c.facts.push_back({"condition_C", "example 9.1", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&) {
                               return expect_holds(rep, "C", Holds::Yes);
                           }});
        c.facts.push_back({"planar_inconclusive", "example 9.1", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&)
                               -> std::optional<std::string> {
                               if (!rep.planar) return std::string("planar test missing");
                               if (rep.planar->verdict != PlanarVerdict::Inconclusive)
                                   return "planar verdict " + to_string(rep.planar->verdict) +
                                          ", expected inconclusive (modes not declared GAS)";
                               return std::nullopt;
                           }});
        c.scenarios.push_back(
            {"regular-slow-decay", "regular:delta=0.5", {0.8, 0.8}, 1e-3, 500.0, 0.2, 1e-3,
             [](const SwitchedSystem&, const Trajectory& tr, const OmegaEstimate& om)
                 -> std::optional<std::string> {
                 if (om.final_norm > 0.30)
                     return "final norm " + std::to_string(om.final_norm) + " > 0.30";
                 if (tr.samples.back().v >= tr.samples.front().v)
                     return std::string("V did not decrease");
                 return std::nullopt;
             }});
        cases.push_back(std::move(c));
    }

    //-- example-9.2: shared L^1, separated at the third order ---------------//
    {
        CorpusCase c;
        c.name = "example-9.2";
        c.system_json = {
            {"dim", 2},
            {"lyapunov", "x1^2 + x2^2"},
            {"modes",
             {{{"name", "f1"}, {"field", {"0", "-x2"}}},
              {{"name", "f2"}, {"field", {"x1*x2", "-x2 - x1^2"}}}}},
            {"assumptions",
             {{"analytic", true},
              {"modes_gas", false}, // f1 freezes the x1 axis
              {"radially_unbounded", true},
              {"dv_vanishes_only_at_origin", true}}}};
        c.params.membership_tol = 1e-3;
        c.params.radius = 1.5;
        c.params.levels = {0.25, 1.0};
        c.facts.push_back({"lie_f1", "example 9.2", 1,
                           [](const AnalysisReport&, const SwitchedSystem& sys) {
                               return expect_poly_equal("L_f1 V", lie_of(sys, 0), "-2*x2^2");
                           }});
        c.facts.push_back({"lie_f2", "example 9.2", 1,
                           [](const AnalysisReport&, const SwitchedSystem& sys) {
                               return expect_poly_equal("L_f2 V", lie_of(sys, 1), "-2*x2^2");
                           }});
        c.facts.push_back({"m1_line_m2_origin", "example 9.2", 3,
                           [](const AnalysisReport& rep, const SwitchedSystem&)
                               -> std::optional<std::string> {
                               const auto& m1 = *rep.modes[0].m_oracle;
                               const auto& m2 = *rep.modes[1].m_oracle;
                               double online[2] = {0.7, 0.0};
                               if (m1.defect(online) > m1.tol)
                                   return std::string("M1 should contain the x1 axis");
                               if (m2.defect(online) <= m2.tol)
                                   return std::string("M2 should be the origin only");
                               return std::nullopt;
                           }});
        c.facts.push_back({"condition_C", "example 9.2", 3,
                           [](const AnalysisReport& rep, const SwitchedSystem&) {
                               return expect_holds(rep, "C", Holds::Yes);
                           }});
        c.scenarios.push_back(
            {"regular-decay", "regular:delta=1", {1.0, 1.0}, 1e-3, 500.0, 0.2, 1e-3,
             [](const SwitchedSystem&, const Trajectory&, const OmegaEstimate& om)
                 -> std::optional<std::string> {
                 if (om.final_norm > 0.08)
                     return "final norm " + std::to_string(om.final_norm) + " > 0.08";
                 return std::nullopt;
             }});
        cases.push_back(std::move(c));
    }

    //-- example-9.3: cubic pair, K = {0}, globally uniformly stable ---------//
    {
        CorpusCase c;
        c.name = "example-9.3";
        c.system_json = {
            {"dim", 2},
            {"lyapunov", "x1^4 + x2^4"},
            {"modes",
             {{{"name", "f1"}, {"field", {"x2^3", "-x1^3 - 2*x2^3"}}},
              {{"name", "f2"}, {"field", {"-2*x1^3 - x2^3", "x1^3"}}}}},
            {"assumptions",
             {{"analytic", true},
              {"modes_gas", true},
              {"radially_unbounded", true},
              {"dv_vanishes_only_at_origin", true}}}};
        c.params.membership_tol = 1e-3;
        c.params.radius = 1.5;
        c.params.levels = {0.25, 1.0};
        c.facts.push_back({"lie_f1", "example 9.3", 1,
                           [](const AnalysisReport&, const SwitchedSystem& sys) {
                               return expect_poly_equal("L_f1 V", lie_of(sys, 0), "-8*x2^6");
                           }});
        c.facts.push_back({"lie_f2", "example 9.3", 1,
                           [](const AnalysisReport&, const SwitchedSystem& sys) {
                               return expect_poly_equal("L_f2 V", lie_of(sys, 1), "-8*x1^6");
                           }});
        c.facts.push_back({"k_zero_guas", "example 9.3", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&)
                               -> std::optional<std::string> {
                               auto err = expect_holds(rep, "Kzero", Holds::Yes);
                               if (err) return err;
                               for (const auto& cl : rep.claims)
                                   if (cl.condition == "Kzero" && cl.signal_class == "all")
                                       return std::nullopt;
                               return std::string("missing GUAS claim from the Kzero route");
                           }});
        c.facts.push_back({"condition_K", "example 9.3", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&) {
                               return expect_holds(rep, "K", Holds::Yes);
                           }});
        for (const char* spec : {"dwell:delta=1,pattern=seeded,seed=7", "regular:delta=1",
                                 "chaotic:tau=1,shrink=0.5"}) {
            c.scenarios.push_back(
                {std::string("decay-") + spec, spec, {1.0, 1.0}, 1e-3, 500.0, 0.2, 1e-3,
                 [](const SwitchedSystem& sys, const Trajectory& tr, const OmegaEstimate& om)
                     -> std::optional<std::string> {
                     if (om.final_norm > 0.06)
                         return "final norm " + std::to_string(om.final_norm) + " > 0.06";
                     // the tail sits in a small K neighborhood: both defects tiny
                     auto K = k_intersection(sys, 1e-9);
                     double d = K.oracle.defect(tr.samples.back().x);
                     if (d > 1e-3) return "tail K defect " + std::to_string(d);
                     return std::nullopt;
                 }});
        }
        cases.push_back(std::move(c));
    }

    //-- example-9.4: rotation pair with odd damping, not GUAS ---------------//
    {
        CorpusCase c;
        c.name = "example-9.4";
        c.system_json = {
            {"dim", 2},
            {"lyapunov", "x1^2 + x2^2"},
            {"modes",
             {{{"name", "f1"}, {"field", {"-x2", "x1 - x2^3"}}},
              {{"name", "f2"}, {"field", {"x2", "-x1 - x2^3"}}}}},
            {"assumptions",
             {{"analytic", true},
              {"modes_gas", true},
              {"radially_unbounded", true},
              {"dv_vanishes_only_at_origin", true}}}};
        c.params.membership_tol = 1e-3;
        c.params.radius = 1.5;
        c.params.levels = {0.25, 1.0};
        c.facts.push_back({"lie_common", "example 9.4", 1,
                           [](const AnalysisReport&, const SwitchedSystem& sys)
                               -> std::optional<std::string> {
                               auto a = expect_poly_equal("L_f1 V", lie_of(sys, 0), "-2*x2^4");
                               if (a) return a;
                               return expect_poly_equal("L_f2 V", lie_of(sys, 1), "-2*x2^4");
                           }});
        c.facts.push_back({"condition_K_fails", "example 9.4", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&) {
                               return expect_holds(rep, "K", Holds::No);
                           }});
        c.facts.push_back({"condition_C_via_order5", "example 9.4", 5,
                           [](const AnalysisReport& rep, const SwitchedSystem&) {
                               // odd chains vanish on {x2=0} through order 3;
                               // order 5 pins M_i = {0}
                               return expect_holds(rep, "C", Holds::Yes);
                           }});
        c.facts.push_back({"planar_not_guas", "example 9.4", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&)
                               -> std::optional<std::string> {
                               if (!rep.planar) return std::string("planar test missing");
                               if (rep.planar->verdict != PlanarVerdict::NotGuas)
                                   return "planar verdict " + to_string(rep.planar->verdict) +
                                          ", expected not-GUAS (the mode average freezes the "
                                          "x1 axis)";
                               if (rep.planar->witness.empty())
                                   return std::string("not-GUAS verdict carries no witness");
                               return std::nullopt;
                           }});
        c.scenarios.push_back(
            {"chaotic-limit-on-K", "chaotic:tau=0.2,shrink=0.98", {1.0, 1.0}, 1e-3, 200.0, 0.2,
             1e-3,
             [](const SwitchedSystem& sys, const Trajectory& tr, const OmegaEstimate&)
                 -> std::optional<std::string> {
                 auto rep = limit_localization_test(sys, gen_chaotic_like(2, 200.0, 0.2, 0.98).signal,
                                                    {1.0, 1.0}, {k_set(sys, 0, 1e-3)}, 1e-3, 200.0,
                                                    1e-3);
                 (void)tr;
                 if (!rep.inclusion_pass)
                     return "tail leaves the K band, worst defect " +
                            std::to_string(rep.worst_inclusion_defect);
                 if (!rep.intersection_pass) return std::string("tail never meets the K band");
                 return std::nullopt;
             }});
        c.scenarios.push_back(
            {"h1-convergence", "constant:mode=1", {1.0, 1.0}, 1e-2, 20000.0, 0.2, 1e-2,
             [](const SwitchedSystem&, const Trajectory&, const OmegaEstimate& om)
                 -> std::optional<std::string> {
                 if (!om.converged_to_origin)
                     return "expected convergence within eta=1e-2, final norm " +
                            std::to_string(om.final_norm);
                 return std::nullopt;
             }});
        cases.push_back(std::move(c));
    }

    //-- example-9.5: sextic tangency pair, GUAS via the planar route --------//
    {
        CorpusCase c;
        c.name = "example-9.5";
        c.system_json = {
            {"dim", 2},
            {"lyapunov", "x1^4 + 2*x2^2"},
            {"modes",
             {{{"name", "f1"}, {"field", {"-x1^3 - x2", "x1^3"}}},
              {{"name", "f2"}, {"field", {"-2*x1^3 - x2", "x1^3"}}}}},
            {"assumptions",
             {{"analytic", true},
              {"modes_gas", true},
              {"radially_unbounded", true},
              {"dv_vanishes_only_at_origin", true}}}};
        c.params.membership_tol = 1e-3;
        c.params.radius = 1.5;
        c.params.levels = {0.25, 1.0};
        c.facts.push_back({"lie_f1", "example 9.5", 1,
                           [](const AnalysisReport&, const SwitchedSystem& sys) {
                               return expect_poly_equal("L_f1 V", lie_of(sys, 0), "-4*x1^6");
                           }});
        c.facts.push_back({"lie_f2", "example 9.5", 1,
                           [](const AnalysisReport&, const SwitchedSystem& sys) {
                               return expect_poly_equal("L_f2 V", lie_of(sys, 1), "-8*x1^6");
                           }});
        c.facts.push_back({"condition_K_fails_on_line", "example 9.5", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&)
                               -> std::optional<std::string> {
                               auto err = expect_holds(rep, "K", Holds::No);
                               if (err) return err;
                               const auto* v = corpus_detail::find_condition(rep, "K");
                               for (const auto& w : v->witness)
                                   if (std::abs(w[0]) > 0.35)
                                       return std::string("witness far from {x1=0}");
                               return std::nullopt;
                           }});
        c.facts.push_back({"k_not_origin", "example 9.5", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&) {
                               return expect_holds(rep, "Kzero", Holds::No);
                           }});
        c.facts.push_back({"planar_guas", "example 9.5", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&)
                               -> std::optional<std::string> {
                               if (!rep.planar) return std::string("planar test missing");
                               if (rep.planar->verdict != PlanarVerdict::Guas)
                                   return "planar verdict " + to_string(rep.planar->verdict);
                               if (rep.planar->min_inner < -1e-9)
                                   return "negative inner product " +
                                          std::to_string(rep.planar->min_inner);
                               return std::nullopt;
                           }});
        c.scenarios.push_back(
            {"regular-decay", "regular:delta=1", {1.0, 1.0}, 1e-3, 500.0, 0.2, 1e-3,
             [](const SwitchedSystem&, const Trajectory&, const OmegaEstimate& om)
                 -> std::optional<std::string> {
                 if (om.final_norm > 0.05)
                     return "final norm " + std::to_string(om.final_norm) + " > 0.05";
                 return std::nullopt;
             }});
        cases.push_back(std::move(c));
    }

    //-- example-9.6: three modes in R^3, one transcendental -----------------//
    {
        CorpusCase c;
        c.name = "example-9.6";
        c.system_json = {
            {"dim", 3},
            {"lyapunov", "x1^2 + 2*x2^2 + x3^2"},
            {"modes",
             {{{"name", "f1"}, {"field", {"-2*x2 + x1*x3", "x1", "-x3 - x1^2"}}},
              {{"name", "f2"}, {"field", {"-x1", "-2*x2", "-x1^2*x3^3"}}},
              {{"name", "f3"},
               {"field", {"-x1 + 2*x3 - 2*x2*cos(x1)", "x1*cos(x1)", "-x3"}}}}},
            {"assumptions",
             {{"analytic", true},
              {"modes_gas", true},
              {"radially_unbounded", true},
              {"dv_vanishes_only_at_origin", true}}}};
        c.params.membership_tol = 1e-3;
        c.params.radius = 3.0;
        c.params.levels = {0.25, 1.0, 4.0};
        c.facts.push_back({"lie_forms", "example 9.6", 1,
                           [](const AnalysisReport&, const SwitchedSystem& sys)
                               -> std::optional<std::string> {
                               auto a = expect_poly_equal("L_f1 V", lie_of(sys, 0), "-2*x3^2");
                               if (a) return a;
                               auto b = expect_poly_equal("L_f2 V", lie_of(sys, 1),
                                                          "-2*x1^2 - 8*x2^2 - 2*x1^2*x3^4");
                               if (b) return b;
                               // mode 3 is transcendental; compare numerically with
                               // the closed form -2(x1-x3)^2
                               Expr L3 = lie_of(sys, 2);
                               for (double t : {0.3, -0.7, 1.1}) {
                                   double x[3] = {t, 0.5 * t, -t};
                                   double want = -2.0 * (x[0] - x[2]) * (x[0] - x[2]);
                                   if (std::abs(L3.eval(x) - want) > 1e-12)
                                       return std::string("L_f3 V does not match -2*(x1-x3)^2");
                               }
                               return std::nullopt;
                           }});
        c.facts.push_back(
            {"center_subspaces", "example 9.6", 1,
             [](const AnalysisReport& rep, const SwitchedSystem&) -> std::optional<std::string> {
                 const auto& m = rep.modes;
                 if (!m[0].center_subspace || !m[1].center_subspace || !m[2].center_subspace)
                     return std::string("missing center subspaces");
                 Eigen::MatrixXd b1(3, 2);
                 b1 << 1, 0, 0, 1, 0, 0; // {x3=0}
                 Eigen::MatrixXd b2(3, 1);
                 b2 << 0, 0, 1; // {x1=x2=0}
                 if (m[0].center_subspace->principal_angle(LinearSubspace::from_span(b1)) > 1e-7)
                     return std::string("V1 is not {x3=0}");
                 if (m[1].center_subspace->principal_angle(LinearSubspace::from_span(b2)) > 1e-7)
                     return std::string("V2 is not {x1=x2=0}");
                 // the third linearization is Hurwitz: center {0}
                 if (m[2].center_subspace->rank() != 0)
                     return std::string("V3 should be trivial (Hurwitz linearization)");
                 return std::nullopt;
             }});
        c.facts.push_back({"subspace_conditions", "example 9.6", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&)
                               -> std::optional<std::string> {
                               const auto* v = corpus_detail::find_condition(rep, "Cor5",
                                                                             "center_subspaces");
                               if (!v) return std::string("Cor5 verdict missing");
                               if (v->holds != Holds::Yes)
                                   return std::string("Cor5 should hold on the center subspaces");
                               if (v->params.at("intersection_rank").get<int>() != 0)
                                   return std::string("intersection should be trivial");
                               // dim V3 = 0 fires condition 1 first; condition 2 holds as well
                               if (v->params.at("fired").get<int>() != 1)
                                   return std::string("condition 1 should fire first");
                               if (!v->params.at("condition_flags").at("2").get<bool>())
                                   return std::string("condition 2 should hold too");
                               return std::nullopt;
                           }});
        c.facts.push_back({"linearized_K_route", "example 9.6", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&)
                               -> std::optional<std::string> {
                               const auto* v = corpus_detail::find_condition(rep, "Cor5",
                                                                             "hessian_kernels");
                               if (!v) return std::string("hessian-kernel verdict missing");
                               if (v->holds != Holds::Yes)
                                   return std::string("kernel conditions should hold");
                               if (v->params.at("fired").get<int>() != 2)
                                   return std::string("condition 2 should fire (dim K2 = 1)");
                               return std::nullopt;
                           }});
        c.facts.push_back({"condition_K_all_modes", "example 9.6", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&) {
                               return expect_holds(rep, "K", Holds::Yes);
                           }});
        c.scenarios.push_back(
            {"regular-converges", "regular:delta=1", {1.0, 1.0, 1.0}, 1e-3, 300.0, 0.2, 1e-3,
             [](const SwitchedSystem&, const Trajectory&, const OmegaEstimate& om)
                 -> std::optional<std::string> {
                 if (!om.converged_to_origin)
                     return "expected convergence, final norm " + std::to_string(om.final_norm);
                 return std::nullopt;
             }});
        cases.push_back(std::move(c));
    }

    //-- example-4.1: linear pair where the first-order sets are too coarse --//
    {
        CorpusCase c;
        c.name = "example-4.1";
        c.system_json = {
            {"dim", 2},
            {"lyapunov", "x1^2 + x2^2"},
            {"modes",
             {{{"name", "f1"}, {"field", {"-x1 - x2", "x1"}}},
              {{"name", "f2"}, {"field", {"-x1", "-x2"}}}}},
            {"assumptions",
             {{"analytic", true},
              {"modes_gas", true},
              {"radially_unbounded", true},
              {"dv_vanishes_only_at_origin", true}}}};
        c.params.membership_tol = 1e-3;
        c.params.radius = 1.5;
        c.params.levels = {0.25, 1.0};
        c.facts.push_back({"lie_forms", "example 4.1", 1,
                           [](const AnalysisReport&, const SwitchedSystem& sys)
                               -> std::optional<std::string> {
                               auto a = expect_poly_equal("L_f1 V", lie_of(sys, 0), "-2*x1^2");
                               if (a) return a;
                               return expect_poly_equal("L_f2 V", lie_of(sys, 1),
                                                        "-2*x1^2 - 2*x2^2");
                           }});
        c.facts.push_back(
            {"hessian_kernels", "example 4.1", 1,
             [](const AnalysisReport& rep, const SwitchedSystem&) -> std::optional<std::string> {
                 if (!rep.modes[0].hessian_ker || !rep.modes[1].hessian_ker)
                     return std::string("missing Hessian kernels");
                 Eigen::MatrixXd e2(2, 1);
                 e2 << 0, 1;
                 if (rep.modes[0].hessian_ker->principal_angle(LinearSubspace::from_span(e2)) >
                     1e-7)
                     return std::string("ker D2 L_f1 V should be the x2 axis");
                 if (rep.modes[1].hessian_ker->rank() != 0)
                     return std::string("ker D2 L_f2 V should be trivial");
                 return std::nullopt;
             }});
        c.facts.push_back({"m_sets_origin", "example 4.1", 3,
                           [](const AnalysisReport& rep, const SwitchedSystem&)
                               -> std::optional<std::string> {
                               // L^3 along f1 separates the x2 axis from M1
                               const auto& m1 = *rep.modes[0].m_oracle;
                               double axis[2] = {0.0, 0.8};
                               if (m1.defect(axis) <= m1.tol)
                                   return std::string("M1 should exclude the x2 axis");
                               return std::nullopt;
                           }});
        c.facts.push_back({"condition_C", "example 4.1", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&) {
                               return expect_holds(rep, "C", Holds::Yes);
                           }});
        c.facts.push_back({"kzero_guas", "example 4.1", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&) {
                               return expect_holds(rep, "Kzero", Holds::Yes);
                           }});
        c.scenarios.push_back(
            {"dwell-exponential", "dwell:delta=0.7,pattern=seeded,seed=3", {1.0, 1.0}, 1e-3, 60.0,
             0.2, 1e-6,
             [](const SwitchedSystem&, const Trajectory&, const OmegaEstimate& om)
                 -> std::optional<std::string> {
                 if (!om.converged_to_origin)
                     return "expected exponential convergence, final norm " +
                            std::to_string(om.final_norm);
                 return std::nullopt;
             }});
        cases.push_back(std::move(c));
    }

    //-- counterexample-smooth: smooth but non-analytic planar pair ----------//
    {
        CorpusCase c;
        c.name = "counterexample-smooth";
        c.system_json = {
            {"dim", 2},
            {"lyapunov", "x1^2 + x2^2"},
            {"modes",
             {{{"name", "f1"},
               {"field",
                {"-min(x1*x2, 0)^2*x1 - x2", "-min(x1*x2, 0)^2*x2 + x1"}}},
              {{"name", "f2"},
               {"field",
                {"-max(x1*x2, 0)^2*x1 - x2", "-max(x1*x2, 0)^2*x2 + x1"}}}}},
            {"assumptions",
             {{"analytic", false}, // the whole point of the construction
              {"modes_gas", true},
              {"radially_unbounded", true},
              {"dv_vanishes_only_at_origin", true}}}};
        c.params.membership_tol = 1e-3;
        c.params.radius = 1.5;
        c.params.levels = {0.25, 1.0};
        c.facts.push_back({"planar_inconclusive", "smooth counterexample", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&)
                               -> std::optional<std::string> {
                               if (!rep.planar) return std::string("planar test missing");
                               if (rep.planar->verdict != PlanarVerdict::Inconclusive)
                                   return "planar verdict " + to_string(rep.planar->verdict) +
                                          ", expected inconclusive without analyticity";
                               if (rep.planar->min_inner < -1e-9)
                                   return std::string("inner products on Z should be nonnegative");
                               return std::nullopt;
                           }});
        c.facts.push_back({"condition_K_fails", "smooth counterexample", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&) {
                               // each closed quadrant pair covers the level circle
                               return expect_holds(rep, "K", Holds::No);
                           }});
        c.facts.push_back({"m_sets_unavailable", "smooth counterexample", 1,
                           [](const AnalysisReport& rep, const SwitchedSystem&)
                               -> std::optional<std::string> {
                               if (rep.modes[0].m_oracle || rep.modes[1].m_oracle)
                                   return std::string(
                                       "M sets should be unavailable (min/max fields)");
                               return std::nullopt;
                           }});
        // quadrant-aligned switching commutes with the rotation: V constant
        c.scenarios.push_back(
            {"quadrant-periodic", "dwell:delta=1.5707963267948966,pattern=cyclic", {1.0, 0.0},
             1e-3, 200.0, 0.25, 1e-3,
             [](const SwitchedSystem&, const Trajectory& tr, const OmegaEstimate& om)
                 -> std::optional<std::string> {
                 if (om.converged_to_origin) return std::string("periodic run must not converge");
                 double vmin = 1e300, vmax = -1e300;
                 for (const auto& s : tr.samples) {
                     if (s.t < 150.0) continue;
                     vmin = std::min(vmin, s.v);
                     vmax = std::max(vmax, s.v);
                 }
                 if (vmax - vmin > 1e-6)
                     return "V drifts by " + std::to_string(vmax - vmin) +
                            " over the final 50 time units";
                 return std::nullopt;
             }});
        cases.push_back(std::move(c));
    }

    return cases;
}

//---------------------------------------------------------------------------//
// Corpus runner
//---------------------------------------------------------------------------//

struct FactOutcome {
    std::string fact;
    std::string status; // "pass" | "fail" | "skipped(kmax)"
    std::string detail;
};

struct CaseOutcome {
    std::string name;
    bool pass = true;
    std::vector<FactOutcome> facts;
    nlohmann::json report; // analysis + scenario summaries, for reproducibility checks
};

inline CaseOutcome run_corpus_case(const CorpusCase& c, std::optional<int> kmax_override = {},
                                   std::uint64_t seed = 0) {
    CaseOutcome out;
    out.name = c.name;
    SwitchedSystem sys = c.build();
    AnalysisParams params = c.params;
    params.seed = seed;
    if (kmax_override) params.kmax = *kmax_override;
    AnalysisReport rep;
    try {
        rep = analyze(sys, params);
    } catch (const std::exception& e) {
        out.pass = false;
        out.facts.push_back({"analysis", "fail", e.what()});
        return out;
    }
    out.report["analysis"] = rep.to_json();

    for (const auto& f : c.facts) {
        FactOutcome fo;
        fo.fact = f.name + " [" + f.source + "]";
        if (params.kmax < f.min_kmax) {
            fo.status = "skipped(kmax)";
            fo.detail = "needs kmax >= " + std::to_string(f.min_kmax);
        } else {
            auto err = f.check(rep, sys);
            fo.status = err ? "fail" : "pass";
            if (err) {
                fo.detail = *err;
                out.pass = false;
            }
        }
        out.facts.push_back(std::move(fo));
    }

    nlohmann::json scen = nlohmann::json::array();
    for (const auto& s : c.scenarios) {
        FactOutcome fo;
        fo.fact = "scenario " + s.name;
        try {
            SwitchingSignal sig = parse_signal_spec(s.signal_spec, sys.mode_count(), s.T);
            Trajectory tr = integrate(sys, sig, s.x0, s.h, s.T);
            MonotoneCheck mono = v_monotone_check(tr, sys);
            OmegaEstimate om = omega_estimate(tr, sys, {}, s.rho, s.eta);
            scen.push_back({{"name", s.name},
                            {"monotone", mono.to_json()},
                            {"omega", om.to_json()}});
            if (!mono.pass) {
                fo.status = "fail";
                fo.detail = "V increased by " + std::to_string(mono.worst_increase);
            } else {
                auto err = s.check ? s.check(sys, tr, om) : std::nullopt;
                fo.status = err ? "fail" : "pass";
                if (err) fo.detail = *err;
            }
        } catch (const std::exception& e) {
            fo.status = "fail";
            fo.detail = e.what();
        }
        if (fo.status == "fail") out.pass = false;
        out.facts.push_back(std::move(fo));
    }
    out.report["scenarios"] = scen;
    return out;
}

} // namespace swstab
