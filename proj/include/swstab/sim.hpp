//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include "swstab/geometry.hpp"
#include "swstab/model.hpp"
#include "swstab/signals.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace swstab {

namespace detail {

/// Flattened evaluation form of one vector field: polynomial components as
/// coefficient/exponent arrays, everything else through the expression tree.
/// The integrator spends nearly all its time here.
class CompiledField {
  public:
    CompiledField(const VectorFieldExpr& f) : dim_(f.dim), tree_(f) {
        comp_poly_.resize(dim_);
        poly_ok_ = f.is_polynomial();
        if (!poly_ok_) return;
        for (int c = 0; c < dim_; ++c) {
            for (const auto& [m, q] : f.components[c].poly().terms()) {
                Term t;
                t.coef = to_double(q);
                t.exps = m;
                comp_poly_[c].push_back(std::move(t));
            }
        }
    }

    void eval(const double* x, double* out) const {
        if (!poly_ok_) {
            std::span<const double> xs(x, dim_);
            for (int c = 0; c < dim_; ++c) out[c] = tree_.components[c].eval(xs);
            return;
        }
        for (int c = 0; c < dim_; ++c) {
            double acc = 0.0;
            for (const Term& t : comp_poly_[c]) {
                double v = t.coef;
                for (int j = 0; j < dim_; ++j) {
                    double b = x[j];
                    for (int e = 0; e < t.exps[j]; ++e) v *= b;
                }
                acc += v;
            }
            out[c] = acc;
        }
    }

  private:
    struct Term {
        double coef;
        Monomial exps;
    };
    int dim_;
    bool poly_ok_ = false;
    std::vector<std::vector<Term>> comp_poly_;
    VectorFieldExpr tree_;
};

} // namespace detail

/// Integrator output: decimated state samples with the active mode and V
/// along the trajectory.
struct Trajectory {
    struct Sample {
        double t;
        std::vector<double> x;
        int mode; // 1-based
        double v;
    };
    std::vector<Sample> samples;
    double step = 0.0;
    double error_estimate = 0.0; // step-halving estimate over the first interval
    bool diverged = false;       // state norm crossed the overflow bound
    double diverged_at = 0.0;
    std::size_t steps_taken = 0;

    const Sample& back() const { return samples.back(); }

    double final_norm() const {
        double s = 0.0;
        for (double v : samples.back().x) s += v * v;
        return std::sqrt(s);
    }

    void write_csv(std::ostream& os) const {
        os << "t";
        for (std::size_t i = 0; i < samples.front().x.size(); ++i) os << ",x" << (i + 1);
        os << ",mode,V\n";
        os.precision(17);
        for (const auto& s : samples) {
            os << s.t;
            for (double v : s.x) os << "," << v;
            os << "," << s.mode << "," << s.v << "\n";
        }
    }
};

struct IntegrateOptions {
    std::size_t max_samples = 1 << 18; // decimation bound on stored samples
    double overflow_norm = 1e8;
};

/// Classical fixed-step 4th-order integration of dx/dt = f_{u(t)}(x), with
/// the last step of every constancy interval shortened to land exactly on the
/// switch time. Switching is time-triggered, so no event detection is needed.
inline Trajectory integrate(const SwitchedSystem& sys, const SwitchingSignal& sig,
                            std::vector<double> x0, double h, double T,
                            const IntegrateOptions& opt = {}) {
    if (h <= 0) throw std::invalid_argument("integrate: step must be positive");
    if (T > sig.horizon() + 1e-12)
        throw std::invalid_argument("integrate: T exceeds the signal horizon");
    if (static_cast<int>(x0.size()) != sys.dim())
        throw std::invalid_argument("integrate: initial state has wrong dimension");

    std::vector<detail::CompiledField> fields;
    fields.reserve(sys.mode_count());
    for (int i = 0; i < sys.mode_count(); ++i) fields.emplace_back(sys.field(i));

    int d = sys.dim();
    std::vector<double> x = x0, k1(d), k2(d), k3(d), k4(d), tmp(d);
    auto rk4_step = [&](const detail::CompiledField& f, double hh) {
        f.eval(x.data(), k1.data());
        for (int i = 0; i < d; ++i) tmp[i] = x[i] + 0.5 * hh * k1[i];
        f.eval(tmp.data(), k2.data());
        for (int i = 0; i < d; ++i) tmp[i] = x[i] + 0.5 * hh * k2[i];
        f.eval(tmp.data(), k3.data());
        for (int i = 0; i < d; ++i) tmp[i] = x[i] + hh * k3[i];
        f.eval(tmp.data(), k4.data());
        for (int i = 0; i < d; ++i)
            x[i] += hh / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
    };

    // steps in the whole run, for the decimation stride
    std::size_t total_steps = 0;
    for (std::size_t n = 0; n < sig.event_count(); ++n) {
        double s = sig.times()[n];
        if (s >= T) break;
        double e = n + 1 < sig.event_count() ? std::min(sig.times()[n + 1], T) : T;
        total_steps += static_cast<std::size_t>(std::ceil((e - s) / h - 1e-12));
    }
    std::size_t stride = std::max<std::size_t>(1, total_steps / opt.max_samples + 1);

    Trajectory traj;
    traj.step = h;
    auto record = [&](double t, int mode) {
        traj.samples.push_back({t, x, mode, sys.lyapunov().eval(x)});
    };
    record(0.0, sig.values().front());

    std::size_t step_no = 0;
    for (std::size_t n = 0; n < sig.event_count() && !traj.diverged; ++n) {
        double s = sig.times()[n];
        if (s >= T) break;
        double e = n + 1 < sig.event_count() ? std::min(sig.times()[n + 1], T) : T;
        int mode = sig.values()[n];
        const auto& f = fields[mode - 1];
        double span = e - s;
        auto nfull = static_cast<std::size_t>(std::floor(span / h + 1e-12));
        double rem = span - static_cast<double>(nfull) * h;
        for (std::size_t j = 0; j < nfull + 1; ++j) {
            double hh = j < nfull ? h : rem;
            if (hh < 1e-15) continue;
            rk4_step(f, hh);
            ++step_no;
            double t = j < nfull ? s + static_cast<double>(j + 1) * h : e;
            double norm2 = 0.0;
            for (double v : x) {
                if (std::isnan(v)) throw EvalError("integrate: NaN state encountered");
                norm2 += v * v;
            }
            if (norm2 > opt.overflow_norm * opt.overflow_norm) {
                traj.diverged = true;
                traj.diverged_at = t;
                record(t, mode);
                break;
            }
            if (step_no % stride == 0 && traj.samples.back().t < t) record(t, mode);
        }
    }
    traj.steps_taken = step_no;
    if (traj.samples.back().t < T && !traj.diverged) record(T, sig.at(T));

    // error estimate: re-run the first constancy interval with h/2
    {
        double s = sig.times().front();
        double e = sig.event_count() > 1 ? std::min(sig.times()[1], T) : T;
        e = std::min(e, s + 1000.0 * h); // cap the re-run cost
        const auto& f = fields[sig.values().front() - 1];
        std::vector<double> coarse = x0, fine = x0;
        auto run_to = [&](std::vector<double>& state, double hh) {
            x = state;
            double span = e - s;
            auto nf = static_cast<std::size_t>(std::floor(span / hh + 1e-12));
            double rem = span - static_cast<double>(nf) * hh;
            for (std::size_t j = 0; j < nf; ++j) rk4_step(f, hh);
            if (rem > 1e-15) rk4_step(f, rem);
            state = x;
        };
        run_to(coarse, h);
        run_to(fine, 0.5 * h);
        double diff = 0.0;
        for (int i = 0; i < d; ++i) diff += (coarse[i] - fine[i]) * (coarse[i] - fine[i]);
        traj.error_estimate = std::sqrt(diff);
    }
    return traj;
}

struct MonotoneCheck {
    bool pass = false;
    double worst_increase = 0.0;
    double at_time = 0.0;
    double slack = 0.0;

    nlohmann::json to_json() const {
        return {{"pass", pass},
                {"worst_increase", worst_increase},
                {"at_time", at_time},
                {"slack", slack}};
    }
};

/// V must not increase along any trajectory; the slack absorbs integrator
/// rounding. Negative slack selects the default 1e-8 * (1 + V(x0)).
inline MonotoneCheck v_monotone_check(const Trajectory& traj, const SwitchedSystem& sys,
                                      double slack = -1.0) {
    (void)sys;
    MonotoneCheck res;
    res.slack = slack >= 0 ? slack : 1e-8 * (1.0 + traj.samples.front().v);
    res.worst_increase = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
        double inc = traj.samples[i + 1].v - traj.samples[i].v;
        if (inc > res.worst_increase) {
            res.worst_increase = inc;
            res.at_time = traj.samples[i + 1].t;
        }
    }
    if (traj.samples.size() < 2) res.worst_increase = 0.0;
    res.pass = res.worst_increase <= res.slack;
    return res;
}

/// Tail statistics of a trajectory: the V plateau (limit sets live in a level
/// set), per-oracle defect ranges, and convergence to the origin.
struct OmegaEstimate {
    double plateau_v = 0.0; // mean V over the tail
    double v_slope = 0.0;   // least-squares dV/dt over the tail
    struct OracleStat {
        std::string name;
        double min_defect = 0.0;
        double max_defect = 0.0;
    };
    std::vector<OracleStat> oracle_stats;
    bool converged_to_origin = false;
    double final_norm = 0.0;
    double eta = 0.0;
    double tail_fraction = 0.0;
    std::size_t tail_points = 0;

    nlohmann::json to_json() const {
        nlohmann::json os = nlohmann::json::array();
        for (const auto& s : oracle_stats)
            os.push_back({{"name", s.name},
                          {"min_defect", s.min_defect},
                          {"max_defect", s.max_defect}});
        return {{"plateau_v", plateau_v},
                {"v_slope", v_slope},
                {"oracles", os},
                {"converged_to_origin", converged_to_origin},
                {"final_norm", final_norm},
                {"eta", eta},
                {"tail_fraction", tail_fraction},
                {"tail_points", tail_points}};
    }
};

inline OmegaEstimate omega_estimate(const Trajectory& traj, const SwitchedSystem& sys,
                                    const std::vector<SetOracle>& oracles, double rho = 0.2,
                                    double eta = 1e-3) {
    (void)sys;
    if (rho <= 0 || rho >= 1) throw std::invalid_argument("omega_estimate: 0 < rho < 1");
    OmegaEstimate out;
    out.eta = eta;
    out.tail_fraction = rho;
    std::size_t n = traj.samples.size();
    std::size_t tail = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(rho * n)));
    std::size_t start = n - tail;
    out.tail_points = tail;

    double sv = 0.0, st = 0.0, stt = 0.0, stv = 0.0;
    for (std::size_t i = start; i < n; ++i) {
        sv += traj.samples[i].v;
        st += traj.samples[i].t;
        stt += traj.samples[i].t * traj.samples[i].t;
        stv += traj.samples[i].t * traj.samples[i].v;
    }
    double nn = static_cast<double>(tail);
    out.plateau_v = sv / nn;
    double denom = nn * stt - st * st;
    out.v_slope = std::abs(denom) > 1e-300 ? (nn * stv - st * sv) / denom : 0.0;

    for (const auto& o : oracles) {
        OmegaEstimate::OracleStat s;
        s.name = o.name;
        s.min_defect = std::numeric_limits<double>::infinity();
        s.max_defect = 0.0;
        for (std::size_t i = start; i < n; ++i) {
            double d = o.defect(traj.samples[i].x);
            s.min_defect = std::min(s.min_defect, d);
            s.max_defect = std::max(s.max_defect, d);
        }
        out.oracle_stats.push_back(s);
    }
    out.final_norm = traj.final_norm();
    out.converged_to_origin = out.final_norm <= eta;
    return out;
}

/// Runtime check of limit-set localization: every tail point must lie inside
/// some oracle (inclusion) and every oracle must be approached (intersection).
struct LimitLocalizationReport {
    bool inclusion_pass = false;
    bool intersection_pass = false;
    double worst_inclusion_defect = 0.0; // max over tail of min over oracles
    std::vector<double> per_oracle_min_defect;
    std::vector<std::vector<double>> violations; // tail points failing inclusion
    OmegaEstimate omega;

    nlohmann::json to_json() const {
        return {{"inclusion_pass", inclusion_pass},
                {"intersection_pass", intersection_pass},
                {"worst_inclusion_defect", worst_inclusion_defect},
                {"per_oracle_min_defect", per_oracle_min_defect},
                {"violations", violations},
                {"omega", omega.to_json()}};
    }
};

inline LimitLocalizationReport limit_localization_test(const SwitchedSystem& sys,
                                                       const SwitchingSignal& sig,
                                                       std::vector<double> x0,
                                                       const std::vector<SetOracle>& oracles,
                                                       double h, double T, double tol,
                                                       double rho = 0.2, double eta = 1e-3) {
    Trajectory traj = integrate(sys, sig, std::move(x0), h, T);
    LimitLocalizationReport rep;
    rep.omega = omega_estimate(traj, sys, oracles, rho, eta);
    std::size_t n = traj.samples.size();
    std::size_t tail = rep.omega.tail_points;
    std::size_t start = n - tail;
    rep.inclusion_pass = true;
    rep.worst_inclusion_defect = 0.0;
    for (std::size_t i = start; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& o : oracles) best = std::min(best, o.defect(traj.samples[i].x));
        rep.worst_inclusion_defect = std::max(rep.worst_inclusion_defect, best);
        if (best > tol) {
            rep.inclusion_pass = false;
            if (rep.violations.size() < 16) rep.violations.push_back(traj.samples[i].x);
        }
    }
    rep.intersection_pass = true;
    for (const auto& s : rep.omega.oracle_stats) {
        rep.per_oracle_min_defect.push_back(s.min_defect);
        if (s.min_defect > tol) rep.intersection_pass = false;
    }
    return rep;
}

} // namespace swstab
