//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace swstab {

/// Radical-inverse (van der Corput) value of index n in the given base.
inline double radical_inverse(std::uint64_t n, unsigned base) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (n) {
        r += f * static_cast<double>(n % base);
        n /= base;
        f *= inv;
    }
    return r;
}

inline unsigned nth_prime_small(int i) {
    static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    return primes[i % 12];
}

/// Deterministic low-discrepancy points in the ball of the given radius.
/// The seed offsets the Halton index, so reports are reproducible per seed.
inline std::vector<std::vector<double>> halton_ball(int dim, int count, double radius,
                                                    std::uint64_t seed = 0) {
    std::vector<std::vector<double>> pts;
    pts.reserve(count);
    std::uint64_t idx = seed + 1;
    while (static_cast<int>(pts.size()) < count) {
        std::vector<double> x(dim);
        double n2 = 0.0;
        for (int j = 0; j < dim; ++j) {
            x[j] = 2.0 * radical_inverse(idx, nth_prime_small(j)) - 1.0;
            n2 += x[j] * x[j];
        }
        ++idx;
        if (n2 > 1.0) continue; // keep only cube points inside the unit ball
        for (double& v : x) v *= radius;
        pts.push_back(std::move(x));
    }
    return pts;
}

/// Deterministic, roughly uniform unit directions. Exact angle grid in the
/// plane, Fibonacci lattice on S^2, normalized Halton points above.
inline std::vector<std::vector<double>> unit_directions(int dim, int count) {
    std::vector<std::vector<double>> dirs;
    dirs.reserve(count);
    if (dim == 1) {
        dirs.push_back({1.0});
        if (count > 1) dirs.push_back({-1.0});
        return dirs;
    }
    if (dim == 2) {
        for (int k = 0; k < count; ++k) {
            double a = 2.0 * std::numbers::pi * k / count;
            dirs.push_back({std::cos(a), std::sin(a)});
        }
        return dirs;
    }
    if (dim == 3) {
        const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < count; ++k) {
            double z = 1.0 - 2.0 * (k + 0.5) / count;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            dirs.push_back({r * std::cos(ga * k), r * std::sin(ga * k), z});
        }
        return dirs;
    }
    std::uint64_t idx = 1;
    while (static_cast<int>(dirs.size()) < count) {
        std::vector<double> x(dim);
        double n2 = 0.0;
        for (int j = 0; j < dim; ++j) {
            x[j] = 2.0 * radical_inverse(idx, nth_prime_small(j)) - 1.0;
            n2 += x[j] * x[j];
        }
        ++idx;
        if (n2 > 1.0 || n2 < 1e-8) continue;
        double inv = 1.0 / std::sqrt(n2);
        for (double& v : x) v *= inv;
        dirs.push_back(std::move(x));
    }
    return dirs;
}

} // namespace swstab
