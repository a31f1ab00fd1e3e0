//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include "swstab/lie.hpp"
#include "swstab/sampling.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

namespace swstab {

/// Hypotheses that cannot be checked mechanically; they gate which theorems
/// the analysis is allowed to invoke and are echoed into every report.
struct DeclaredAssumptions {
    bool analytic = false;
    bool modes_gas = false;
    bool radially_unbounded = false;
    bool dv_vanishes_only_at_origin = false;

    nlohmann::json to_json() const {
        return {{"analytic", analytic},
                {"modes_gas", modes_gas},
                {"radially_unbounded", radially_unbounded},
                {"dv_vanishes_only_at_origin", dv_vanishes_only_at_origin}};
    }
};

/// A finite family of vector fields sharing one candidate weak Lyapunov
/// function. Immutable after construction; construction validates that V and
/// every field vanish at the origin (exactly on the polynomial path, to
/// 1e-12 otherwise).
class SwitchedSystem {
  public:
    SwitchedSystem(int dim, std::vector<VectorFieldExpr> fields, Expr lyapunov,
                   std::vector<std::string> labels = {}, DeclaredAssumptions assume = {})
        : dim_(dim),
          fields_(std::move(fields)),
          lyapunov_(std::move(lyapunov)),
          labels_(std::move(labels)),
          assumptions_(assume) {
        if (fields_.empty()) throw std::invalid_argument("switched system needs at least one mode");
        if (lyapunov_.dim() != dim_) throw std::invalid_argument("Lyapunov dimension mismatch");
        for (const auto& f : fields_)
            if (f.dim != dim_) throw std::invalid_argument("field dimension mismatch");
        if (labels_.empty())
            for (std::size_t i = 0; i < fields_.size(); ++i)
                labels_.push_back("mode" + std::to_string(i + 1));
        if (labels_.size() != fields_.size())
            throw std::invalid_argument("one label per mode required");
        check_vanishes_at_origin(lyapunov_, "lyapunov");
        for (std::size_t i = 0; i < fields_.size(); ++i)
            for (const auto& c : fields_[i].components)
                check_vanishes_at_origin(c, labels_[i]);
    }

    int dim() const { return dim_; }
    int mode_count() const { return static_cast<int>(fields_.size()); }
    const VectorFieldExpr& field(int i) const { return fields_.at(i); }
    const std::vector<VectorFieldExpr>& fields() const { return fields_; }
    const Expr& lyapunov() const { return lyapunov_; }
    const std::string& label(int i) const { return labels_.at(i); }
    const DeclaredAssumptions& assumptions() const { return assumptions_; }

    bool is_polynomial() const {
        if (!lyapunov_.is_polynomial()) return false;
        for (const auto& f : fields_)
            if (!f.is_polynomial()) return false;
        return true;
    }

    /// Parse the system-definition JSON document.
    static SwitchedSystem from_json(const nlohmann::json& j) {
        if (!j.contains("dim") || !j.contains("lyapunov") || !j.contains("modes"))
            throw std::invalid_argument("system file needs 'dim', 'lyapunov' and 'modes'");
        int dim = j.at("dim").get<int>();
        if (dim < 1) throw std::invalid_argument("dim must be positive");
        Expr V = Expr::parse(j.at("lyapunov").get<std::string>(), dim);
        std::vector<VectorFieldExpr> fields;
        std::vector<std::string> labels;
        for (const auto& m : j.at("modes")) {
            labels.push_back(m.value("name", "mode" + std::to_string(labels.size() + 1)));
            auto comps = m.at("field").get<std::vector<std::string>>();
            if (static_cast<int>(comps.size()) != dim)
                throw std::invalid_argument("mode '" + labels.back() + "' needs " +
                                            std::to_string(dim) + " field components");
            fields.push_back(VectorFieldExpr::parse(comps, dim));
        }
        DeclaredAssumptions a;
        if (j.contains("assumptions")) {
            const auto& ja = j.at("assumptions");
            a.analytic = ja.value("analytic", false);
            a.modes_gas = ja.value("modes_gas", false);
            a.radially_unbounded = ja.value("radially_unbounded", false);
            a.dv_vanishes_only_at_origin = ja.value("dv_vanishes_only_at_origin", false);
        }
        return SwitchedSystem(dim, std::move(fields), std::move(V), std::move(labels), a);
    }

    static SwitchedSystem load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open system file: " + path);
        nlohmann::json j;
        in >> j;
        return from_json(j);
    }

    nlohmann::json to_json() const {
        nlohmann::json modes = nlohmann::json::array();
        for (int i = 0; i < mode_count(); ++i) {
            nlohmann::json comps = nlohmann::json::array();
            for (const auto& c : fields_[i].components) comps.push_back(c.to_string());
            modes.push_back({{"name", labels_[i]}, {"field", comps}});
        }
        return {{"dim", dim_},
                {"lyapunov", lyapunov_.to_string()},
                {"modes", modes},
                {"assumptions", assumptions_.to_json()}};
    }

  private:
    void check_vanishes_at_origin(const Expr& e, const std::string& what) const {
        if (e.is_polynomial()) {
            if (!(e.poly().constant_term() == 0))
                throw std::invalid_argument(what + " must vanish at the origin");
            return;
        }
        std::vector<double> zero(dim_, 0.0);
        if (std::abs(e.eval(zero)) > 1e-12)
            throw std::invalid_argument(what + " must vanish at the origin (|value| > 1e-12)");
    }

    int dim_;
    std::vector<VectorFieldExpr> fields_;
    Expr lyapunov_;
    std::vector<std::string> labels_;
    DeclaredAssumptions assumptions_;
};

/// Result of the sampled weak-Lyapunov certification. Not a proof: a
/// deterministic low-discrepancy sweep recording the worst observed value of
/// each L_{f_i}V over a ball.
struct CertificationReport {
    struct PerMode {
        std::string mode;
        double worst_value = 0.0;
        std::vector<double> worst_point;
        int samples = 0;
    };
    std::vector<PerMode> per_mode;
    double radius = 0.0;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    bool pass = false;

    nlohmann::json to_json() const {
        nlohmann::json modes = nlohmann::json::array();
        for (const auto& m : per_mode)
            modes.push_back({{"mode", m.mode},
                             {"worst_value", m.worst_value},
                             {"worst_point", m.worst_point},
                             {"samples", m.samples}});
        return {{"pass", pass},
                {"radius", radius},
                {"tolerance", tolerance},
                {"seed", seed},
                {"per_mode", modes}};
    }
};

inline CertificationReport certify_weak_lyapunov(const SwitchedSystem& sys, double radius, int n,
                                                 double tol, std::uint64_t seed = 0) {
    if (radius <= 0 || n < 1) throw std::invalid_argument("certify: radius > 0 and n >= 1 required");
    CertificationReport rep;
    rep.radius = radius;
    rep.tolerance = tol;
    rep.seed = seed;
    rep.pass = true;
    auto pts = halton_ball(sys.dim(), n, radius, seed);
    for (int i = 0; i < sys.mode_count(); ++i) {
        Expr L = lie_derivative(sys.lyapunov(), sys.field(i));
        CertificationReport::PerMode pm;
        pm.mode = sys.label(i);
        pm.samples = n;
        pm.worst_value = -std::numeric_limits<double>::infinity();
        for (const auto& x : pts) {
            double v = L.eval(x);
            if (v > pm.worst_value) {
                pm.worst_value = v;
                pm.worst_point = x;
            }
        }
        if (!(pm.worst_value <= tol)) rep.pass = false;
        rep.per_mode.push_back(std::move(pm));
    }
    return rep;
}

struct PositiveDefiniteResult {
    bool pass = false;
    std::vector<double> witness; // point with V <= 0, empty when pass
    double witness_value = 0.0;

    nlohmann::json to_json() const {
        nlohmann::json j{{"pass", pass}};
        if (!pass) {
            j["witness"] = witness;
            j["witness_value"] = witness_value;
        }
        return j;
    }
};

/// Sampled positive-definiteness of V on a ball: V > 0 at every sampled
/// nonzero point. The Halton sweep hits coordinate hyperplanes exactly, so
/// semidefinite directions are caught in practice.
inline PositiveDefiniteResult positive_definite_check(const Expr& V, double radius, int n,
                                                      std::uint64_t seed = 0) {
    PositiveDefiniteResult res;
    res.pass = true;
    auto pts = halton_ball(V.dim(), n, radius, seed);
    for (const auto& x : pts) {
        double norm2 = 0.0;
        for (double v : x) norm2 += v * v;
        if (norm2 == 0.0) continue;
        double val = V.eval(x);
        if (!(val > 0.0)) {
            res.pass = false;
            res.witness = x;
            res.witness_value = val;
            break;
        }
    }
    return res;
}

} // namespace swstab
