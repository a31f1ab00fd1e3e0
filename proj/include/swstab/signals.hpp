//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace swstab {

/// Piecewise-constant mode selector on [0, horizon): strictly increasing
/// switch times starting at 0, right-continuous, values in 1..p.
class SwitchingSignal {
  public:
    SwitchingSignal(std::vector<double> times, std::vector<int> values, double horizon, int p)
        : times_(std::move(times)), values_(std::move(values)), horizon_(horizon), modes_(p) {
        if (times_.empty() || times_.front() != 0.0)
            throw std::invalid_argument("signal must start at time 0");
        if (times_.size() != values_.size())
            throw std::invalid_argument("one value per switch time required");
        if (horizon_ <= 0) throw std::invalid_argument("horizon must be positive");
        for (std::size_t i = 0; i + 1 < times_.size(); ++i)
            if (!(times_[i] < times_[i + 1]))
                throw std::invalid_argument("switch times must be strictly increasing");
        for (int v : values_)
            if (v < 1 || v > modes_) throw std::invalid_argument("mode value out of range");
    }

    double horizon() const { return horizon_; }
    int mode_count() const { return modes_; }
    std::size_t event_count() const { return times_.size(); }
    const std::vector<double>& times() const { return times_; }
    const std::vector<int>& values() const { return values_; }

    /// Value at time t (right-continuous step function).
    int at(double t) const {
        auto it = std::upper_bound(times_.begin(), times_.end(), t);
        std::size_t idx = static_cast<std::size_t>(it - times_.begin());
        return values_[idx == 0 ? 0 : idx - 1];
    }

    /// Duration of interval n, the last one clipped at the horizon.
    double duration(std::size_t n) const {
        double end = n + 1 < times_.size() ? times_[n + 1] : horizon_;
        return end - times_[n];
    }

    nlohmann::json to_json() const {
        nlohmann::json events = nlohmann::json::array();
        for (std::size_t i = 0; i < times_.size(); ++i)
            events.push_back({times_[i], values_[i]});
        return {{"horizon", horizon_}, {"events", events}, {"modes", modes_}};
    }

    static SwitchingSignal from_json(const nlohmann::json& j, int p) {
        double T = j.at("horizon").get<double>();
        std::vector<double> ts;
        std::vector<int> vs;
        for (const auto& e : j.at("events")) {
            ts.push_back(e.at(0).get<double>());
            vs.push_back(e.at(1).get<int>());
        }
        return SwitchingSignal(std::move(ts), std::move(vs), T, p);
    }

    static SwitchingSignal load(const std::string& path, int p) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open signal file: " + path);
        nlohmann::json j;
        in >> j;
        return from_json(j, p);
    }

  private:
    std::vector<double> times_;
    std::vector<int> values_;
    double horizon_;
    int modes_;
};

/// Dwell-time signal: every constancy interval lasts at least delta. Cyclic
/// mode order; durations are delta exactly or delta*(1+U[0,1)) under a seed.
inline SwitchingSignal gen_dwell(int p, double T, double delta, bool cyclic_durations = true,
                                 std::uint64_t seed = 0) {
    if (delta <= 0 || T <= 0) throw std::invalid_argument("gen_dwell: delta > 0 and T > 0");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> ts;
    std::vector<int> vs;
    double t = 0.0;
    int k = 0;
    while (t < T) {
        ts.push_back(t);
        vs.push_back(k % p + 1);
        t += cyclic_durations ? delta : delta * (1.0 + uni(rng));
        ++k;
    }
    return SwitchingSignal(std::move(ts), std::move(vs), T, p);
}

/// Regular signal: cyclic visit of all p modes, each active for exactly delta.
inline SwitchingSignal gen_regular(int p, double T, double delta) {
    return gen_dwell(p, T, delta, true, 0);
}

inline SwitchingSignal gen_constant(int p, double T, int mode) {
    return SwitchingSignal({0.0}, {mode}, T, p);
}

/// Chaotic-like signal: windows [t_k, t_k + tau] at t_k = 2 tau k alternate
/// modes with run length tau * shrink^k (floored at 1e-5 and flagged); the
/// gap after window k holds one mode, alternating the held mode per gap.
struct ChaoticLikeSignal {
    SwitchingSignal signal;
    bool floored = false; // run length hit the 1e-5 floor before the horizon
};

inline ChaoticLikeSignal gen_chaotic_like(int p, double T, double tau, double shrink) {
    if (tau <= 0 || shrink <= 0 || shrink >= 1)
        throw std::invalid_argument("gen_chaotic_like: tau > 0 and 0 < shrink < 1");
    constexpr double kRunFloor = 1e-5;
    std::vector<double> ts{0.0};
    std::vector<int> vs{1};
    bool floored = false;
    auto push = [&](double t, int mode) {
        if (t >= T) return;
        if (t == ts.back()) {
            vs.back() = mode;
            return;
        }
        if (t > ts.back()) {
            ts.push_back(t);
            vs.push_back(mode);
        }
    };
    double run = tau;
    for (int k = 0;; ++k) {
        double t0 = 2.0 * tau * k;
        if (t0 >= T) break;
        run = tau * std::pow(shrink, k);
        if (run < kRunFloor) {
            run = kRunFloor;
            floored = true;
        }
        double t = t0;
        int mode = 1;
        while (t < std::min(t0 + tau, T)) {
            push(t, mode);
            mode = mode % p + 1;
            t += run;
        }
        push(t0 + tau, k % p + 1); // hold phase
    }
    return ChaoticLikeSignal{SwitchingSignal(std::move(ts), std::move(vs), T, p), floored};
}

/// Finite-horizon classification: occupancy, a dwell-count surrogate for
/// H(i), and a window-scan surrogate for chaoticity. All thresholds are
/// recorded; the asymptotic definitions are not decidable on a finite trace.
struct SignalReport {
    std::vector<double> occupancy;     // per mode, sums to the horizon
    double min_duration = 0.0;
    double max_duration = 0.0;
    std::vector<bool> h_flag;          // H(i) surrogate per mode
    double h_delta = 0.0;              // duration threshold used
    int h_count_threshold = 0;         // required count of long intervals
    bool chaotic_like = false;
    bool nonchaotic = true;            // negation of chaotic_like
    bool long_run_windows_exist = true; // every block offers a window with run >= delta
    std::vector<double> window_best_run; // per block: smallest max-run over window starts
    double tau = 0.0;

    nlohmann::json to_json() const {
        return {{"occupancy", occupancy},
                {"min_duration", min_duration},
                {"max_duration", max_duration},
                {"h_flag", h_flag},
                {"h_delta", h_delta},
                {"h_count_threshold", h_count_threshold},
                {"chaotic_like", chaotic_like},
                {"nonchaotic", nonchaotic},
                {"long_run_windows_exist", long_run_windows_exist},
                {"tau", tau}};
    }
};

/// Exact per-mode occupancy time.
inline std::vector<double> occupancy(const SwitchingSignal& sig) {
    std::vector<double> occ(sig.mode_count(), 0.0);
    for (std::size_t n = 0; n < sig.event_count(); ++n) {
        double start = sig.times()[n];
        if (start >= sig.horizon()) break;
        double end = n + 1 < sig.event_count() ? std::min(sig.times()[n + 1], sig.horizon())
                                               : sig.horizon();
        occ[sig.values()[n] - 1] += end - start;
    }
    return occ;
}

/// Modes taking at least fraction theta of the horizon: the finite-horizon
/// stand-in for the set of modes with infinite total activation.
inline std::vector<int> estimate_Ju(const SwitchingSignal& sig, double theta = 0.01) {
    auto occ = occupancy(sig);
    std::vector<int> J;
    for (std::size_t i = 0; i < occ.size(); ++i)
        if (occ[i] >= theta * sig.horizon()) J.push_back(static_cast<int>(i));
    return J;
}

inline SignalReport classify(const SwitchingSignal& sig, double tau, double delta) {
    if (tau <= 0 || delta <= 0) throw std::invalid_argument("classify: tau, delta > 0");
    SignalReport rep;
    rep.tau = tau;
    rep.occupancy = occupancy(sig);
    double T = sig.horizon();

    rep.min_duration = std::numeric_limits<double>::infinity();
    rep.max_duration = 0.0;
    std::vector<int> long_runs(sig.mode_count(), 0);
    for (std::size_t n = 0; n < sig.event_count(); ++n) {
        if (sig.times()[n] >= T) break;
        double d = sig.duration(n);
        rep.min_duration = std::min(rep.min_duration, d);
        rep.max_duration = std::max(rep.max_duration, d);
        if (d >= delta) ++long_runs[sig.values()[n] - 1];
    }
    rep.h_delta = delta;
    rep.h_count_threshold = static_cast<int>(std::ceil(T / (10.0 * delta)));
    rep.h_flag.resize(sig.mode_count());
    for (int i = 0; i < sig.mode_count(); ++i)
        rep.h_flag[i] = long_runs[i] >= rep.h_count_threshold;

    // Window scan. Constancy intervals, clipped to the horizon:
    std::vector<std::pair<double, double>> runs;
    for (std::size_t n = 0; n < sig.event_count(); ++n) {
        if (sig.times()[n] >= T) break;
        double s = sig.times()[n];
        double e = n + 1 < sig.event_count() ? std::min(sig.times()[n + 1], T) : T;
        runs.emplace_back(s, e);
    }
    auto max_run_in = [&](double a, double b) {
        double best = 0.0;
        auto it = std::lower_bound(runs.begin(), runs.end(), a,
                                   [](const auto& r, double v) { return r.second < v; });
        for (; it != runs.end() && it->first < b; ++it)
            best = std::max(best, std::min(it->second, b) - std::max(it->first, a));
        return best;
    };
    // Per block of length 2*tau: the best (smallest) max-run over window
    // starts inside the block, stepping by tau/4.
    int blocks = static_cast<int>(std::floor(T / (2.0 * tau)));
    for (int b = 0; b < blocks; ++b) {
        double b0 = 2.0 * tau * b;
        double best = std::numeric_limits<double>::infinity();
        double worst = 0.0;
        for (double s = b0; s + tau <= std::min(b0 + 2.0 * tau, T) + 1e-12; s += tau / 4.0) {
            double r = max_run_in(s, s + tau);
            best = std::min(best, r);
            worst = std::max(worst, r);
        }
        if (!std::isfinite(best)) continue;
        rep.window_best_run.push_back(best);
        if (worst < delta) rep.long_run_windows_exist = false;
    }
    // chaotic-like: best-window runs decay to a small fraction of their
    // initial size, non-increasing over the final half, ending below delta
    const auto& w = rep.window_best_run;
    if (w.size() >= 4) {
        std::size_t half = w.size() / 2;
        bool decays = true;
        for (std::size_t i = half; i + 1 < w.size(); ++i)
            if (w[i + 1] > w[i] + 1e-9) decays = false;
        rep.chaotic_like = decays && w.back() < delta && w.back() <= 0.25 * w.front() + 1e-12;
    }
    rep.nonchaotic = !rep.chaotic_like;
    return rep;
}

/// Generator spec strings for the CLI:
///   "dwell:delta=1,pattern=cyclic,seed=7" | "regular:delta=0.5"
///   | "chaotic:tau=1,shrink=0.5" | "constant:mode=1"
inline SwitchingSignal parse_signal_spec(const std::string& spec, int p, double T) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::map<std::string, std::string> kv;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("malformed signal spec item: " + item);
            kv[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    auto num = [&](const std::string& key, double dflt) {
        auto it = kv.find(key);
        return it == kv.end() ? dflt : std::stod(it->second);
    };
    if (kind == "dwell") {
        bool cyclic = kv.count("pattern") == 0 || kv["pattern"] == "cyclic";
        return gen_dwell(p, T, num("delta", 1.0), cyclic,
                         static_cast<std::uint64_t>(num("seed", 0)));
    }
    if (kind == "regular") return gen_regular(p, T, num("delta", 1.0));
    if (kind == "chaotic")
        return gen_chaotic_like(p, T, num("tau", 1.0), num("shrink", 0.5)).signal;
    if (kind == "constant") return gen_constant(p, T, static_cast<int>(num("mode", 1)));
    throw std::invalid_argument("unknown signal spec kind: " + kind);
}

} // namespace swstab
