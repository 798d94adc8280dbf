// Copyright 2026 The spinbound Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file operators.hpp
 * @brief Singlet-projector sums on magnetization sectors.
 *
 * Every operator in this library is a real combination
 *
 *     A = shift * I + sum_t weight_t * P(i_t, k_t)
 *
 * of singlet projectors P(i,k) = |s><s|, |s> = (|ud> - |du>)/sqrt(2).
 * On a basis state |b>, P(i,k)|b> vanishes unless bits i and k differ, in
 * which case P(i,k)|b> = (|b> - |b'>)/2 with b' = b with bits i,k swapped.
 * Energies are carried in units of 4J, so J never appears here.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "graph.hpp"
#include "sector.hpp"

namespace spinbound {

inline constexpr std::size_t kDenseDimLimit = 4096;

struct PairTerm {
    int i = 0;
    int k = 0;
    double weight = 0.0;
};

/// Matrix-free description: shift * I + sum of weighted singlet projectors.
class PairSum {
public:
    explicit PairSum(int n_qubits, double shift = 0.0) : n_qubits_(n_qubits), shift_(shift) {}

    PairSum& add(int i, int k, double weight) {
        if (i == k) throw std::invalid_argument("singlet projector needs two distinct sites");
        if (i < 0 || k < 0 || i >= n_qubits_ || k >= n_qubits_)
            throw std::invalid_argument("singlet projector site out of range");
        if (!std::isfinite(weight)) throw std::invalid_argument("singlet projector weight must be finite");
        terms_.push_back({std::min(i, k), std::max(i, k), weight});
        return *this;
    }

    PairSum& add_shift(double s) {
        shift_ += s;
        return *this;
    }

    /// this + scale * other.
    PairSum& add_scaled(const PairSum& other, double scale) {
        if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("pair sums over different qubit counts");
        for (const auto& t : other.terms_) terms_.push_back({t.i, t.k, scale * t.weight});
        shift_ += scale * other.shift_;
        return *this;
    }

    int n_qubits() const { return n_qubits_; }
    double shift() const { return shift_; }
    const std::vector<PairTerm>& terms() const { return terms_; }

    /// y = A x on `basis`. Scalar may be real or complex.
    template <class Scalar>
    void apply(const SectorBasis& basis, std::span<const Scalar> x, std::span<Scalar> y) const {
        check_basis(basis);
        const std::size_t dim = basis.dim();
        if (x.size() != dim || y.size() != dim) throw std::invalid_argument("pair sum apply: vector size mismatch");
        for (std::size_t r = 0; r < dim; ++r) y[r] = shift_ * x[r];
        const auto& states = basis.states();
        for (const auto& t : terms_) {
            const StateMask both = (StateMask{1} << t.i) | (StateMask{1} << t.k);
            const double half = 0.5 * t.weight;
            for (std::size_t r = 0; r < dim; ++r) {
                const StateMask s = states[r];
                const StateMask masked = s & both;
                if (masked == 0 || masked == both) continue;
                // Swapping bits i and k keeps the popcount, so the partner stays in the sector.
                const std::size_t c = basis.index_of(s ^ both);
                y[r] += half * (x[r] - x[c]);
            }
        }
    }

    template <class Scalar>
    std::vector<Scalar> apply(const SectorBasis& basis, const std::vector<Scalar>& x) const {
        std::vector<Scalar> y(x.size());
        apply<Scalar>(basis, std::span<const Scalar>(x), std::span<Scalar>(y));
        return y;
    }

    Eigen::MatrixXd to_dense(const SectorBasis& basis) const {
        check_basis(basis);
        const std::size_t dim = basis.dim();
        if (dim > kDenseDimLimit)
            throw std::invalid_argument("dense representation limited to sector dimension " +
                                        std::to_string(kDenseDimLimit));
        const auto n = static_cast<Eigen::Index>(dim);
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) * shift_;
        const auto& states = basis.states();
        for (const auto& t : terms_) {
            const StateMask both = (StateMask{1} << t.i) | (StateMask{1} << t.k);
            const double half = 0.5 * t.weight;
            for (std::size_t r = 0; r < dim; ++r) {
                const StateMask masked = states[r] & both;
                if (masked == 0 || masked == both) continue;
                const auto c = static_cast<Eigen::Index>(basis.index_of(states[r] ^ both));
                const auto ri = static_cast<Eigen::Index>(r);
                m(ri, ri) += half;
                m(ri, c) -= half;
            }
        }
        return m;
    }

private:
    void check_basis(const SectorBasis& basis) const {
        if (basis.n_qubits() != n_qubits_)
            throw std::invalid_argument("operator acts on " + std::to_string(n_qubits_) + " qubits but basis has " +
                                        std::to_string(basis.n_qubits()));
    }

    int n_qubits_;
    double shift_;
    std::vector<PairTerm> terms_;
};

struct MatrixEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
};

/// Real symmetric operator on one sector in compressed-row form (both triangles stored).
class SparseOperator {
public:
    SparseOperator() = default;

    /// Builds from entries; duplicates are summed and exact zeros dropped.
    SparseOperator(std::size_t dim, int n_qubits, int n_flipped, std::vector<MatrixEntry> entries)
        : dim_(dim), n_qubits_(n_qubits), n_flipped_(n_flipped) {
        std::sort(entries.begin(), entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
            return std::tie(a.row, a.col) < std::tie(b.row, b.col);
        });
        std::vector<MatrixEntry> merged;
        for (const auto& e : entries) {
            if (e.row >= dim || e.col >= dim) throw std::invalid_argument("sparse operator: entry out of range");
            if (!std::isfinite(e.value)) throw std::invalid_argument("sparse operator: non-finite entry");
            if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
                merged.back().value += e.value;
            else
                merged.push_back(e);
        }
        std::erase_if(merged, [](const MatrixEntry& e) { return e.value == 0.0; });

        row_ptr_.assign(dim + 1, 0);
        for (const auto& e : merged) ++row_ptr_[e.row + 1];
        for (std::size_t r = 0; r < dim; ++r) row_ptr_[r + 1] += row_ptr_[r];
        cols_.reserve(merged.size());
        values_.reserve(merged.size());
        for (const auto& e : merged) {
            cols_.push_back(e.col);
            values_.push_back(e.value);
        }
    }

    std::size_t dim() const { return dim_; }
    int n_qubits() const { return n_qubits_; }
    int n_flipped() const { return n_flipped_; }
    std::size_t nnz() const { return values_.size(); }

    double at(std::size_t r, std::size_t c) const {
        auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r]);
        auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r + 1]);
        auto it = std::lower_bound(first, last, c);
        return (it != last && *it == c) ? values_[static_cast<std::size_t>(it - cols_.begin())] : 0.0;
    }

    template <class Scalar>
    void apply(std::span<const Scalar> x, std::span<Scalar> y) const {
        if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("sparse apply: vector size mismatch");
        for (std::size_t r = 0; r < dim_; ++r) {
            Scalar acc{};
            for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += values_[p] * x[cols_[p]];
            y[r] = acc;
        }
    }

    /// All stored entries, sorted by (row, col).
    std::vector<MatrixEntry> entries() const {
        std::vector<MatrixEntry> out;
        out.reserve(nnz());
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) out.push_back({r, cols_[p], values_[p]});
        return out;
    }

    /// Entries with row >= col, sorted by (row, col).
    std::vector<MatrixEntry> lower_entries() const {
        auto all = entries();
        std::erase_if(all, [](const MatrixEntry& e) { return e.row < e.col; });
        return all;
    }

    bool is_symmetric(double tol = 0.0) const {
        for (const auto& e : entries())
            if (std::abs(e.value - at(e.col, e.row)) > tol) return false;
        return true;
    }

    Eigen::MatrixXd to_dense() const {
        if (dim_ > kDenseDimLimit)
            throw std::invalid_argument("dense representation limited to sector dimension " +
                                        std::to_string(kDenseDimLimit));
        const auto n = static_cast<Eigen::Index>(dim_);
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (const auto& e : entries())
            m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
        return m;
    }

private:
    std::size_t dim_ = 0;
    int n_qubits_ = 0;
    int n_flipped_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> cols_;
    std::vector<double> values_;
};

inline SparseOperator to_sparse(const PairSum& op, const SectorBasis& basis) {
    if (basis.n_qubits() != op.n_qubits()) throw std::invalid_argument("operator/basis qubit count mismatch");
    std::vector<MatrixEntry> entries;
    const auto& states = basis.states();
    if (op.shift() != 0.0)
        for (std::size_t r = 0; r < basis.dim(); ++r) entries.push_back({r, r, op.shift()});
    for (const auto& t : op.terms()) {
        const StateMask both = (StateMask{1} << t.i) | (StateMask{1} << t.k);
        for (std::size_t r = 0; r < basis.dim(); ++r) {
            const StateMask masked = states[r] & both;
            if (masked == 0 || masked == both) continue;
            const std::size_t c = basis.index_of(states[r] ^ both);
            entries.push_back({r, r, 0.5 * t.weight});
            entries.push_back({r, c, -0.5 * t.weight});
        }
    }
    return SparseOperator(basis.dim(), basis.n_qubits(), basis.n_flipped(), std::move(entries));
}

// Operator builders as pair sums. All are dimensionless (units of 4J).

/// Sum of singlet projectors over graph edges: Delta H / 4J.
inline PairSum delta_hamiltonian_terms(const Graph& g) {
    PairSum op(g.n_sites());
    for (const auto& e : g.edges()) op.add(e.u, e.v, 1.0);
    return op;
}

/// Smax^2 - S^2 as the ordered-pair sum of all singlet projectors (each unordered pair weight 2).
inline PairSum delta_spin_squared_terms(int n_qubits) {
    PairSum op(n_qubits);
    for (int i = 0; i < n_qubits; ++i)
        for (int k = i + 1; k < n_qubits; ++k) op.add(i, k, 2.0);
    return op;
}

/// c * DeltaH/4J - DeltaS^2; positive semidefinite exactly when c is a valid bound constant.
inline PairSum bound_gap_terms(const Graph& g, double c) {
    PairSum out(g.n_sites());
    out.add_scaled(delta_hamiltonian_terms(g), c);
    out.add_scaled(delta_spin_squared_terms(g.n_sites()), -1.0);
    return out;
}

inline SparseOperator singlet_projector(const SectorBasis& basis, int i, int k) {
    if (i == k) throw std::invalid_argument("singlet_projector: sites must differ");
    PairSum op(basis.n_qubits());
    op.add(i, k, 1.0);
    return to_sparse(op, basis);
}

inline SparseOperator delta_hamiltonian(const Graph& g, const SectorBasis& basis) {
    if (basis.n_qubits() != g.n_sites())
        throw std::invalid_argument("delta_hamiltonian: basis has " + std::to_string(basis.n_qubits()) +
                                    " qubits but graph has " + std::to_string(g.n_sites()) + " sites");
    return to_sparse(delta_hamiltonian_terms(g), basis);
}

inline SparseOperator delta_spin_squared(const SectorBasis& basis) {
    return to_sparse(delta_spin_squared_terms(basis.n_qubits()), basis);
}

/// Maximum eigenvalue of S^2: (n/2)(n/2 + 1).
inline double max_spin_squared(int n_qubits) {
    const double half = 0.5 * n_qubits;
    return half * (half + 1.0);
}

/// Value of Smax^2 - s(s+1) for total spin s.
inline double spin_deficit(int n_qubits, double total_spin) {
    return max_spin_squared(n_qubits) - total_spin * (total_spin + 1.0);
}

}  // namespace spinbound
