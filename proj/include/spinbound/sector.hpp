// Copyright 2026 The spinbound Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sector.hpp
 * @brief Fixed-magnetization basis of n qubits with a given number of up spins.
 *
 * The vacuum is all-down; bit q of a state mask set means qubit q is up.
 * States are listed in increasing numeric order, and lookup uses the
 * combinatorial number system so no hash table is needed.
 */
#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinbound {

using StateMask = std::uint32_t;

inline constexpr int kDefaultMaxQubits = 24;
inline constexpr int kHardMaxQubits = 30;

namespace detail {

struct BinomialTable {
    std::array<std::array<std::uint64_t, kHardMaxQubits + 1>, kHardMaxQubits + 1> c{};
    constexpr BinomialTable() {
        for (int n = 0; n <= kHardMaxQubits; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
        }
    }
};

inline constexpr BinomialTable kBinomial{};

}  // namespace detail

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    return detail::kBinomial.c[n][k];
}

class SectorBasis {
public:
    SectorBasis(int n_qubits, int n_flipped, int max_qubits = kDefaultMaxQubits)
        : n_qubits_(n_qubits), n_flipped_(n_flipped) {
        if (max_qubits > kHardMaxQubits) max_qubits = kHardMaxQubits;
        if (n_qubits < 1 || n_qubits > max_qubits)
            throw std::invalid_argument("sector_basis: n_qubits must be in [1, " + std::to_string(max_qubits) + "]");
        if (n_flipped < 0 || n_flipped > n_qubits)
            throw std::invalid_argument("sector_basis: n_flipped must be in [0, n_qubits]");

        states_.reserve(binomial(n_qubits, n_flipped));
        if (n_flipped == 0) {
            states_.push_back(0);
        } else {
            // Gosper's hack walks same-popcount masks in increasing order.
            StateMask s = (StateMask{1} << n_flipped) - 1;
            const StateMask limit = StateMask{1} << n_qubits;
            while (s < limit) {
                states_.push_back(s);
                const StateMask c = s & (~s + 1);
                const StateMask r = s + c;
                s = (((r ^ s) >> 2) / c) | r;
            }
        }
    }

    int n_qubits() const { return n_qubits_; }
    int n_flipped() const { return n_flipped_; }
    std::size_t dim() const { return states_.size(); }
    const std::vector<StateMask>& states() const { return states_; }
    StateMask state(std::size_t index) const { return states_[index]; }

    /// Position of `mask` in `states()`. The mask must lie in this sector.
    std::size_t index_of(StateMask mask) const {
        if (std::popcount(mask) != n_flipped_ || (mask >> n_qubits_) != 0)
            throw std::out_of_range("sector_basis: state is outside the sector");
        std::size_t rank = 0;
        int j = 0;
        while (mask != 0) {
            const int p = std::countr_zero(mask);
            ++j;
            rank += detail::kBinomial.c[p][j];
            mask &= mask - 1;
        }
        return rank;
    }

    friend bool operator==(const SectorBasis& a, const SectorBasis& b) {
        return a.n_qubits_ == b.n_qubits_ && a.n_flipped_ == b.n_flipped_;
    }

private:
    int n_qubits_;
    int n_flipped_;
    std::vector<StateMask> states_;
};

inline SectorBasis sector_basis(int n_qubits, int n_flipped, int max_qubits = kDefaultMaxQubits) {
    return SectorBasis(n_qubits, n_flipped, max_qubits);
}

}  // namespace spinbound
