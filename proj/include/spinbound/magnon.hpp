// Copyright 2026 The spinbound Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file magnon.hpp
 * @brief Single-magnon plane waves over the all-down ferromagnetic vacuum.
 */
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "operators.hpp"
#include "sector.hpp"

namespace spinbound {

using Complex = std::complex<double>;

struct StateVector {
    SectorBasis basis;
    std::vector<Complex> amplitudes;

    double norm() const {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return std::sqrt(s);
    }
};

/// <v|A|v> / <v|v> for a real symmetric pair sum.
inline double expectation(const PairSum& op, const StateVector& v) {
    const auto av = op.apply<Complex>(v.basis, v.amplitudes);
    Complex num{};
    double den = 0.0;
    for (std::size_t r = 0; r < av.size(); ++r) {
        num += std::conj(v.amplitudes[r]) * av[r];
        den += std::norm(v.amplitudes[r]);
    }
    return num.real() / den;
}

/// ||A v - <A> v|| for normalized v; zero exactly for eigenvectors.
inline double eigen_residual(const PairSum& op, const StateVector& v) {
    const double rq = expectation(op, v);
    const auto av = op.apply<Complex>(v.basis, v.amplitudes);
    double s = 0.0;
    for (std::size_t r = 0; r < av.size(); ++r) s += std::norm(av[r] - rq * v.amplitudes[r]);
    return std::sqrt(s) / v.norm();
}

/// S+_k |vacuum> with S+_k = Ntot^{-1/2} sum_x exp(i k.x) sigma+_x and k_d = 2 pi m_d / N_d.
/// Uses the raising operator sigma+ so the result stays in the one-flip sector.
inline StateVector magnon_state(const LatticeSpec& spec, const std::vector<int>& momentum) {
    spec.validate();
    if (spec.boundary != Boundary::periodic)
        throw std::invalid_argument("magnon_state: plane-wave momenta need periodic boundaries");
    if (static_cast<int>(momentum.size()) != spec.dims())
        throw std::invalid_argument("magnon_state: momentum vector length must equal the lattice dimension");

    const int n = spec.n_sites();
    StateVector v{SectorBasis(n, 1), std::vector<Complex>(static_cast<std::size_t>(n))};
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int x = 0; x < n; ++x) {
        const auto coords = spec.coords(x);
        double phase = 0.0;
        for (int d = 0; d < spec.dims(); ++d) {
            const auto ud = static_cast<std::size_t>(d);
            const int width = spec.extents[ud];
            const int m = ((momentum[ud] % width) + width) % width;
            // Reduce the integer phase before converting so exact momenta give exact cosines.
            phase += 2.0 * std::numbers::pi * static_cast<double>((m * coords[ud]) % width) / width;
        }
        v.amplitudes[v.basis.index_of(StateMask{1} << x)] = scale * std::polar(1.0, phase);
    }
    return v;
}

/// Analytic one-magnon excitation in units of 4J: sum_d (1 - cos k_d).
inline double magnon_excitation(const LatticeSpec& spec, const std::vector<int>& momentum) {
    double e = 0.0;
    for (int d = 0; d < spec.dims(); ++d) {
        const auto ud = static_cast<std::size_t>(d);
        e += 1.0 - std::cos(2.0 * std::numbers::pi * momentum[ud] / spec.extents[ud]);
    }
    return e;
}

}  // namespace spinbound
