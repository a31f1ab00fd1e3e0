//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include "swstab/model.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

namespace swstab {

/// Sampled collinearity locus of a planar two-mode system:
/// points with |det(f0(x), f1(x))| below tolerance, with the inner product
/// <f0, f1> recorded per point.
struct ZSample {
    struct Point {
        double x1, x2;
        double det;
        double inner;
    };
    std::vector<Point> points;
    double box = 0.0;
    int resolution = 0;
    double tol = 0.0;

    void write_csv(std::ostream& os) const {
        os << "x1,x2,det,inner\n";
        os.precision(17);
        for (const auto& p : points)
            os << p.x1 << "," << p.x2 << "," << p.det << "," << p.inner << "\n";
    }
};

namespace detail {

struct PlanarFields {
    const VectorFieldExpr& f0;
    const VectorFieldExpr& f1;

    double det(double a, double b) const {
        double x[2] = {a, b};
        std::span<const double> xs(x, 2);
        double f00 = f0.components[0].eval(xs), f01 = f0.components[1].eval(xs);
        double f10 = f1.components[0].eval(xs), f11 = f1.components[1].eval(xs);
        return f00 * f11 - f01 * f10;
    }
    double inner(double a, double b) const {
        double x[2] = {a, b};
        std::span<const double> xs(x, 2);
        double f00 = f0.components[0].eval(xs), f01 = f0.components[1].eval(xs);
        double f10 = f1.components[0].eval(xs), f11 = f1.components[1].eval(xs);
        return f00 * f10 + f01 * f11;
    }
};

} // namespace detail

/// Grid scan of det(f0, f1) over [-L, L]^2. Sign-change edges are bisected;
/// edges where |det| stays small but does not change sign (even-order
/// touching, e.g. det = x1^6) are refined by ternary search. Grid nodes with
/// |det| <= tol are kept as well, so an identically collinear pair reports
/// every node. Output is deduplicated and sorted.
inline ZSample sample_Z(const SwitchedSystem& sys, double box, int resolution, double tol = 1e-6) {
    if (sys.dim() != 2 || sys.mode_count() != 2)
        throw std::invalid_argument("sample_Z: planar two-mode system required");
    detail::PlanarFields pf{sys.field(0), sys.field(1)};
    ZSample out;
    out.box = box;
    out.resolution = resolution;
    out.tol = tol;

    int n = resolution;
    double step = 2.0 * box / n;
    auto coord = [&](int i) { return -box + i * step; };

    std::vector<double> vals(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) vals[static_cast<std::size_t>(i) * (n + 1) + j] = pf.det(coord(i), coord(j));
    auto val = [&](int i, int j) { return vals[static_cast<std::size_t>(i) * (n + 1) + j]; };

    std::vector<ZSample::Point> raw;
    auto add = [&](double a, double b) {
        double d = pf.det(a, b);
        if (std::abs(d) <= tol) raw.push_back({a, b, d, pf.inner(a, b)});
    };

    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (std::abs(val(i, j)) <= tol) raw.push_back({coord(i), coord(j), val(i, j),
                                                           pf.inner(coord(i), coord(j))});

    auto refine_edge = [&](double ax, double ay, double bx, double by, double fa, double fb) {
        if (fa == 0.0 && fb == 0.0) return;
        if (fa * fb < 0.0) {
            for (int it = 0; it < 60; ++it) {
                double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
                double fm = pf.det(mx, my);
                if (fa * fm <= 0.0) {
                    bx = mx;
                    by = my;
                    fb = fm;
                } else {
                    ax = mx;
                    ay = my;
                    fa = fm;
                }
            }
            add(0.5 * (ax + bx), 0.5 * (ay + by));
        } else if (std::min(std::abs(fa), std::abs(fb)) <= tol) {
            // ternary search for the |det| minimum along the edge
            double lo = 0.0, hi = 1.0;
            auto at = [&](double t) {
                return std::abs(pf.det(ax + t * (bx - ax), ay + t * (by - ay)));
            };
            for (int it = 0; it < 60; ++it) {
                double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                (at(m1) < at(m2) ? hi : lo) = at(m1) < at(m2) ? m2 : m1;
            }
            double t = 0.5 * (lo + hi);
            add(ax + t * (bx - ax), ay + t * (by - ay));
        }
    };

    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < n; ++j)
            refine_edge(coord(i), coord(j), coord(i), coord(j + 1), val(i, j), val(i, j + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i < n; ++i)
            refine_edge(coord(i), coord(j), coord(i + 1), coord(j), val(i, j), val(i + 1, j));

    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        if (a.x1 != b.x1) return a.x1 < b.x1;
        return a.x2 < b.x2;
    });
    double dedupe = step * 1e-6;
    for (const auto& p : raw) {
        if (!out.points.empty() && std::abs(out.points.back().x1 - p.x1) <= dedupe &&
            std::abs(out.points.back().x2 - p.x2) <= dedupe)
            continue;
        out.points.push_back(p);
    }
    return out;
}

enum class PlanarVerdict { Guas, NotGuas, Inconclusive };

inline std::string to_string(PlanarVerdict v) {
    switch (v) {
        case PlanarVerdict::Guas: return "GUAS";
        case PlanarVerdict::NotGuas: return "not-GUAS";
        default: return "inconclusive";
    }
}

/// Planar equivalence test: with both modes GAS, everything analytic, V
/// radially unbounded and DV vanishing only at 0, the system is GUAS exactly
/// when no collinearity point has negative inner product. The hypotheses are
/// declared by the user, not verified; missing declarations force an
/// inconclusive verdict no matter what the samples show.
struct PlanarTestResult {
    PlanarVerdict verdict = PlanarVerdict::Inconclusive;
    std::vector<double> witness; // point with <f0,f1> < -tol, when not GUAS
    double min_inner = 0.0;      // over sampled Z away from the origin
    std::size_t z_points = 0;
    DeclaredAssumptions assumptions;
    bool assumptions_ok = false;
    ZSample sample;

    nlohmann::json to_json() const {
        nlohmann::json j{{"verdict", to_string(verdict)},
                         {"min_inner", min_inner},
                         {"z_points", z_points},
                         {"assumptions", assumptions.to_json()},
                         {"assumptions_ok", assumptions_ok}};
        if (!witness.empty()) j["witness"] = witness;
        return j;
    }
};

inline PlanarTestResult planar_guas_test(const SwitchedSystem& sys, double box, int resolution,
                                         double tol = 1e-9, double origin_exclusion = 1e-6,
                                         double z_tol = 1e-6) {
    if (sys.dim() != 2 || sys.mode_count() != 2)
        throw std::invalid_argument("planar_guas_test: planar two-mode system required");
    PlanarTestResult res;
    res.assumptions = sys.assumptions();
    res.assumptions_ok = res.assumptions.analytic && res.assumptions.modes_gas &&
                         res.assumptions.radially_unbounded &&
                         res.assumptions.dv_vanishes_only_at_origin;
    res.sample = sample_Z(sys, box, resolution, z_tol);
    res.z_points = res.sample.points.size();
    res.min_inner = std::numeric_limits<double>::infinity();
    const ZSample::Point* worst = nullptr;
    for (const auto& p : res.sample.points) {
        if (std::hypot(p.x1, p.x2) <= origin_exclusion) continue;
        if (p.inner < res.min_inner) {
            res.min_inner = p.inner;
            worst = &p;
        }
    }
    if (res.sample.points.empty()) res.min_inner = 0.0;
    if (!std::isfinite(res.min_inner)) res.min_inner = 0.0;

    if (worst && worst->inner < -tol) {
        // the convexified system has an equilibrium at such a point
        res.verdict = res.assumptions_ok ? PlanarVerdict::NotGuas : PlanarVerdict::Inconclusive;
        if (res.assumptions_ok) res.witness = {worst->x1, worst->x2};
        return res;
    }
    res.verdict = res.assumptions_ok ? PlanarVerdict::Guas : PlanarVerdict::Inconclusive;
    return res;
}

} // namespace swstab
