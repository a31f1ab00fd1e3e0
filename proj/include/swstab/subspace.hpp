//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <string>
#include <vector>

namespace swstab {

/// Linear subspace of R^d held as an orthonormal basis (d x rank matrix,
/// possibly zero columns). Basis columns are deterministically oriented and
/// ordered so equal subspaces serialize identically.
class LinearSubspace {
  public:
    LinearSubspace() = default;
    explicit LinearSubspace(int dim) : dim_(dim), basis_(dim, 0) {}

    /// Orthonormalize the columns of `span` (SVD rank-truncation).
    static LinearSubspace from_span(const Eigen::MatrixXd& span, double rank_tol = 1e-10) {
        LinearSubspace s(static_cast<int>(span.rows()));
        s.rank_tol_ = rank_tol;
        if (span.cols() == 0) return s;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(span, Eigen::ComputeThinU);
        double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
        int r = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > rank_tol * std::max(1.0, smax)) ++r;
        s.basis_ = svd.matrixU().leftCols(r);
        s.canonicalize();
        return s;
    }

    /// Null space of `m` with a relative singular-value cutoff.
    static LinearSubspace kernel_of(const Eigen::MatrixXd& m, double rank_tol = 1e-10) {
        LinearSubspace s(static_cast<int>(m.cols()));
        s.rank_tol_ = rank_tol;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
        double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
        int r = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > rank_tol * std::max(1.0, smax)) ++r;
        s.basis_ = svd.matrixV().rightCols(m.cols() - r);
        s.canonicalize();
        return s;
    }

    static LinearSubspace full(int dim) {
        LinearSubspace s(dim);
        s.basis_ = Eigen::MatrixXd::Identity(dim, dim);
        return s;
    }

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(basis_.cols()); }
    const Eigen::MatrixXd& basis() const { return basis_; }
    double rank_tolerance() const { return rank_tol_; }

    bool is_trivial() const { return rank() == 0; }

    /// Distance from x to the subspace.
    double distance(const Eigen::VectorXd& x) const {
        if (rank() == 0) return x.norm();
        return (x - basis_ * (basis_.transpose() * x)).norm();
    }

    bool contains(const Eigen::VectorXd& x, double tol = 1e-8) const { return distance(x) <= tol; }

    /// Subspace inclusion this <= other, to tolerance.
    bool contained_in(const LinearSubspace& o, double tol = 1e-8) const {
        for (int c = 0; c < rank(); ++c)
            if (o.distance(basis_.col(c)) > tol) return false;
        return true;
    }

    bool equals(const LinearSubspace& o, double tol = 1e-8) const {
        return rank() == o.rank() && contained_in(o, tol) && o.contained_in(*this, tol);
    }

    /// Largest principal angle (radians) between subspaces of equal rank;
    /// returns pi/2 when ranks differ.
    double principal_angle(const LinearSubspace& o) const {
        if (rank() != o.rank()) return std::numbers::pi / 2;
        if (rank() == 0) return 0.0;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis_.transpose() * o.basis());
        double smin = svd.singularValues().minCoeff();
        smin = std::clamp(smin, -1.0, 1.0);
        return std::acos(smin);
    }

    nlohmann::json to_json() const {
        nlohmann::json cols = nlohmann::json::array();
        for (int c = 0; c < rank(); ++c) {
            nlohmann::json col = nlohmann::json::array();
            for (int r = 0; r < dim_; ++r) col.push_back(basis_(r, c));
            cols.push_back(col);
        }
        return {{"dim", dim_}, {"rank", rank()}, {"basis", cols}};
    }

  private:
    // Fix sign (largest-magnitude entry positive) and column order so that
    // runs are byte-reproducible.
    void canonicalize() {
        for (int c = 0; c < basis_.cols(); ++c) {
            int imax = 0;
            for (int r = 1; r < basis_.rows(); ++r)
                if (std::abs(basis_(r, c)) > std::abs(basis_(imax, c))) imax = r;
            if (basis_(imax, c) < 0) basis_.col(c) *= -1.0;
        }
        std::vector<int> order(basis_.cols());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            for (int r = 0; r < basis_.rows(); ++r) {
                double da = basis_(r, a), db = basis_(r, b);
                if (std::abs(da - db) > 1e-12) return da > db;
            }
            return false;
        });
        Eigen::MatrixXd sorted(basis_.rows(), basis_.cols());
        for (std::size_t i = 0; i < order.size(); ++i) sorted.col(i) = basis_.col(order[i]);
        basis_ = sorted;
    }

    int dim_ = 0;
    Eigen::MatrixXd basis_;
    double rank_tol_ = 1e-10;
};

/// dim(V_1 + ... + V_p) by stacking bases.
inline int subspace_sum_dim(const std::vector<LinearSubspace>& spaces, double rank_tol = 1e-10) {
    if (spaces.empty()) return 0;
    int d = spaces.front().dim();
    int total = 0;
    for (const auto& s : spaces) total += s.rank();
    if (total == 0) return 0;
    Eigen::MatrixXd stacked(d, total);
    int c = 0;
    for (const auto& s : spaces) {
        stacked.middleCols(c, s.rank()) = s.basis();
        c += s.rank();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
    double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > rank_tol * std::max(1.0, smax)) ++r;
    return r;
}

/// Basis of the intersection of the given subspaces: kernel of the stacked
/// orthogonal-complement projectors.
inline LinearSubspace subspace_intersection(const std::vector<LinearSubspace>& spaces,
                                            double rank_tol = 1e-10) {
    if (spaces.empty()) throw std::invalid_argument("intersection of empty family");
    int d = spaces.front().dim();
    Eigen::MatrixXd stacked(static_cast<int>(spaces.size()) * d, d);
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(d, d);
        if (spaces[i].rank() > 0) proj -= spaces[i].basis() * spaces[i].basis().transpose();
        stacked.middleRows(static_cast<int>(i) * d, d) = proj;
    }
    return LinearSubspace::kernel_of(stacked, rank_tol);
}

} // namespace swstab
