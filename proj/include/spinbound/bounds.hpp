// Copyright 2026 The spinbound Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file bounds.hpp
 * @brief Closed-form bound constants, the three-qubit eigenvalue formula, and the
 *        weak-homogeneity spectral bound for comparison.
 *
 * Every bound has the affine form DeltaS^2 <= slope * (DeltaH/4J) + offset.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "graph.hpp"

namespace spinbound {

enum class Provenance { generic, diameter, periodic_exact, open_exact, assignment, optimal, baerwinkel };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::generic: return "generic";
        case Provenance::diameter: return "diameter";
        case Provenance::periodic_exact: return "periodic-exact";
        case Provenance::open_exact: return "open-exact";
        case Provenance::assignment: return "assignment";
        case Provenance::optimal: return "optimal";
        case Provenance::baerwinkel: return "baerwinkel";
    }
    return "unknown";
}

struct BoundSpec {
    double slope = 0.0;
    double offset = 0.0;
    Provenance provenance = Provenance::generic;
    int n_sites = 0;
    std::optional<LatticeSpec> lattice;

    double evaluate(double x) const { return slope * x + offset; }
};

// ---------------------------------------------------------------------------
// Three-qubit chain

/// The two doubly degenerate non-zero eigenvalues of a P12 + b P23 - P13, larger first.
inline std::pair<double, double> three_qubit_eigenvalues(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("three_qubit_eigenvalues: a and b must be positive");
    const double root = std::sqrt(1.0 + a + b - a * b + a * a + b * b);
    return {0.5 * (-1.0 + a + b + root), 0.5 * (-1.0 + a + b - root)};
}

/// Both eigenvalues are non-negative exactly when ab >= a + b.
inline bool three_qubit_psd(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("three_qubit_psd: a and b must be positive");
    return a * b >= a + b;
}

// ---------------------------------------------------------------------------
// Closed-form constants

enum class Variant { generic, diameter, periodic, open };

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::generic: return "generic";
        case Variant::diameter: return "diameter";
        case Variant::periodic: return "periodic";
        case Variant::open: return "open";
    }
    return "unknown";
}

namespace detail {

inline std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Per-dimension sums over the displacement range: sum |w| and sum w^2.
struct AxisSums {
    std::int64_t abs_sum;
    std::int64_t sq_sum;
    std::int64_t count;
};

inline AxisSums periodic_axis(std::int64_t n) {
    const std::int64_t delta = n % 2;
    return {(n * n - delta) / 4, n * (n * n + 2 - 3 * delta) / 12, n};
}

inline AxisSums open_axis(std::int64_t n) {
    return {n * (n - 1), n * (n - 1) * (2 * n - 1) / 3, 2 * n - 1};
}

// Largest over d of sum_{displacements} |dk_d| * |dk|_1.
inline std::int64_t lattice_bracket(const std::vector<AxisSums>& axes) {
    const std::size_t dims = axes.size();
    std::int64_t best = 0;
    for (std::size_t d = 0; d < dims; ++d) {
        std::int64_t others = 1;
        for (std::size_t e = 0; e < dims; ++e)
            if (e != d) others *= axes[e].count;
        std::int64_t value = axes[d].sq_sum * others;
        for (std::size_t dp = 0; dp < dims; ++dp) {
            if (dp == d) continue;
            std::int64_t rest = 1;
            for (std::size_t e = 0; e < dims; ++e)
                if (e != d && e != dp) rest *= axes[e].count;
            value += axes[d].abs_sum * axes[dp].abs_sum * rest;
        }
        best = std::max(best, value);
    }
    return best;
}

}  // namespace detail

/// N^{D-2} [ (D-1) ((N^2 - delta_N)/4)^2 + N * N (N^2 + 2 - 3 delta_N) / 12 ], exact.
/// Non-cubic lattices take the largest per-dimension bracket.
inline std::int64_t periodic_constant_exact(const LatticeSpec& spec) {
    if (spec.boundary != Boundary::periodic) throw std::invalid_argument("periodic constant needs a periodic lattice");
    spec.validate();
    std::vector<detail::AxisSums> axes;
    for (int e : spec.extents) axes.push_back(detail::periodic_axis(e));
    return detail::lattice_bracket(axes);
}

/// (2N-1)^{D-2} [ (D-1) N^2 (N-1)^2 + (2N-1) N (N-1) (2N-1) / 3 ], exact.
inline std::int64_t open_constant_exact(const LatticeSpec& spec) {
    if (spec.boundary != Boundary::open) throw std::invalid_argument("open constant needs an open lattice");
    spec.validate();
    std::vector<detail::AxisSums> axes;
    for (int e : spec.extents) axes.push_back(detail::open_axis(e));
    return detail::lattice_bracket(axes);
}

/// Ntot (Ntot - 1)^2.
inline BoundSpec generic_constant(int n_sites) {
    if (n_sites < 2) throw std::invalid_argument("generic constant needs at least two sites");
    const double n = n_sites;
    return {n * (n - 1.0) * (n - 1.0), 0.0, Provenance::generic, n_sites, std::nullopt};
}

/// diam * Ntot (Ntot - 1).
inline BoundSpec diameter_constant(const Graph& g) {
    if (g.n_sites() < 2) throw std::invalid_argument("diameter constant needs at least two sites");
    const double n = g.n_sites();
    return {diameter(g) * n * (n - 1.0), 0.0, Provenance::diameter, g.n_sites(), g.lattice()};
}

inline BoundSpec periodic_constant(const LatticeSpec& spec) {
    return {static_cast<double>(periodic_constant_exact(spec)), 0.0, Provenance::periodic_exact, spec.n_sites(),
            spec};
}

inline BoundSpec open_constant(const LatticeSpec& spec) {
    return {static_cast<double>(open_constant_exact(spec)), 0.0, Provenance::open_exact, spec.n_sites(), spec};
}

inline BoundSpec closed_form_constant(Variant variant, const Graph& g) {
    switch (variant) {
        case Variant::generic: return generic_constant(g.n_sites());
        case Variant::diameter: return diameter_constant(g);
        case Variant::periodic:
        case Variant::open:
            if (!g.lattice()) throw std::invalid_argument("lattice constants need a lattice graph");
            if (variant == Variant::periodic) return periodic_constant(*g.lattice());
            return open_constant(*g.lattice());
    }
    throw std::invalid_argument("unknown variant");
}

/// Leading large-N behavior: (3D+1)/48 N^{D+2} periodic, (3D+1) 2^D / 12 N^{D+2} open.
inline double leading_term(Boundary boundary, int dims, int width) {
    const double lead = std::pow(static_cast<double>(width), dims + 2);
    if (boundary == Boundary::periodic) return (3.0 * dims + 1.0) / 48.0 * lead;
    return (3.0 * dims + 1.0) * std::pow(2.0, dims) / 12.0 * lead;
}

// ---------------------------------------------------------------------------
// Coupling matrices and the weak-homogeneity bound

enum class Gauge { raw, weakly_homogeneous };

struct CouplingMatrix {
    Eigen::MatrixXd values;
    Gauge gauge = Gauge::raw;
};

/// J_{ik} = -2J for every ordered adjacent pair, zero diagonal.
inline CouplingMatrix coupling_matrix(const Graph& g, double coupling = 1.0) {
    const auto n = static_cast<Eigen::Index>(g.n_sites());
    CouplingMatrix m{Eigen::MatrixXd::Zero(n, n), Gauge::raw};
    for (const auto& e : g.edges()) m.values(e.u, e.v) = m.values(e.v, e.u) = -2.0 * coupling;
    return m;
}

/// Resets the diagonal so every row sums to Ntot^{-1} sum_{ik} J_{ik}.
inline CouplingMatrix gauge_weak_homogeneity(const CouplingMatrix& m) {
    const Eigen::MatrixXd& j = m.values;
    if (j.rows() != j.cols()) throw std::invalid_argument("coupling matrix must be square");
    if ((j - j.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, j.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("coupling matrix must be symmetric");
    const auto n = j.rows();
    const double mean_row = j.sum() / static_cast<double>(n);
    CouplingMatrix out{j, Gauge::weakly_homogeneous};
    for (Eigen::Index l = 0; l < n; ++l) out.values(l, l) = mean_row - (j.col(l).sum() - j(l, l));
    return out;
}

struct BaerwinkelBound {
    BoundSpec bound;
    double j = 0.0;
    double j_min = 0.0;
    double j2 = 0.0;
    std::vector<double> coupling_spectrum;  // gauged matrix, ascending
};

/// Weak-homogeneity spectral bound H >= (j - j_min)/Ntot S^2 + Ntot j_min s(s+1)
/// + (Ntot - 1)(j2 - j_min) s, rewritten as DeltaS^2 <= slope DeltaH/4J + offset.
inline BaerwinkelBound baerwinkel_bound(const Graph& g, double coupling = 1.0, double spin = 0.5) {
    if (!(coupling > 0.0))
        throw std::invalid_argument("baerwinkel_bound: conversion to a DeltaS^2 bound needs J > 0");
    if (std::abs(spin - 0.5) > 1e-15)
        throw std::invalid_argument("baerwinkel_bound: DeltaS^2 is defined for spin 1/2 only");
    const int n = g.n_sites();
    if (n < 2) throw std::invalid_argument("baerwinkel_bound: needs at least two sites");

    const CouplingMatrix gauged = gauge_weak_homogeneity(coupling_matrix(g, coupling));
    const auto dim = gauged.values.rows();
    const double j = gauged.values.row(0).sum();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(gauged.values, Eigen::EigenvaluesOnly);
    // Push the all-ones direction above everything else; the perpendicular spectrum is unchanged.
    const double lift = full.eigenvalues().cwiseAbs().maxCoeff() * 2.0 + 1.0;
    const Eigen::MatrixXd shifted =
        gauged.values + (lift / static_cast<double>(dim)) * Eigen::MatrixXd::Ones(dim, dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> perp(shifted, Eigen::EigenvaluesOnly);
    const double j_min = perp.eigenvalues()[0];
    const double j2 = dim > 2 ? perp.eigenvalues()[1] : j_min;

    const double scale = std::max(1.0, std::abs(j));
    if (std::abs(j_min - j) <= 1e-12 * scale)
        throw std::domain_error("baerwinkel_bound: j_min equals j, the bound degenerates");

    BaerwinkelBound out;
    out.j = j;
    out.j_min = j_min;
    out.j2 = j2;
    out.coupling_spectrum.assign(full.eigenvalues().data(), full.eigenvalues().data() + dim);

    const double kappa = (j_min - j) / n;
    const double ground = -coupling * g.n_edges();
    const double smax2 = 0.5 * n * (0.5 * n + 1.0);
    const double rhs = n * j_min * spin * (spin + 1.0) + (n - 1.0) * (j2 - j_min) * spin;
    out.bound = {4.0 * coupling / kappa, (ground + kappa * smax2 - rhs) / kappa, Provenance::baerwinkel, n,
                 g.lattice()};

    if (g.lattice() && g.lattice()->boundary == Boundary::periodic) {
        const auto& spec = *g.lattice();
        const double expect_j = -4.0 * coupling * spec.dims();
        const double expect_min =
            -4.0 * coupling * (spec.dims() - 1 + std::cos(2.0 * std::numbers::pi / spec.width()));
        if (std::abs(j - expect_j) > 1e-9 * scale || std::abs(j_min - expect_min) > 1e-9 * scale)
            throw std::logic_error("baerwinkel_bound: lattice coupling spectrum disagrees with the circulant values");
    }
    return out;
}

/// Which bound is lower (tighter) on a stretch of the DeltaH/4J axis.
struct ComparisonSegment {
    double lo = 0.0;
    double hi = 0.0;
    int tighter = 0;  // 0: first bound, 1: second, -1: equal
};

struct ComparisonReport {
    std::vector<double> crossovers;
    std::vector<ComparisonSegment> segments;
    double x_max = 0.0;
    double first_at_zero = 0.0;
    double second_at_zero = 0.0;
    double first_at_max = 0.0;
    double second_at_max = 0.0;
};

inline ComparisonReport compare_bounds(const BoundSpec& a, const BoundSpec& b, double x_max) {
    if (!(x_max > 0.0)) throw std::invalid_argument("compare_bounds: x_max must be positive");
    ComparisonReport r;
    r.x_max = x_max;
    r.first_at_zero = a.evaluate(0.0);
    r.second_at_zero = b.evaluate(0.0);
    r.first_at_max = a.evaluate(x_max);
    r.second_at_max = b.evaluate(x_max);

    auto tighter_at = [&](double x) {
        const double fa = a.evaluate(x);
        const double fb = b.evaluate(x);
        if (fa == fb) return -1;
        return fa < fb ? 0 : 1;
    };

    std::vector<double> cuts{0.0};
    if (a.slope != b.slope) {
        const double x = (b.offset - a.offset) / (a.slope - b.slope);
        if (x >= 0.0 && x <= x_max) {
            r.crossovers.push_back(x);
            if (x > 0.0 && x < x_max) cuts.push_back(x);
        }
    }
    cuts.push_back(x_max);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s)
        r.segments.push_back({cuts[s], cuts[s + 1], tighter_at(0.5 * (cuts[s] + cuts[s + 1]))});
    return r;
}

/// Default comparison range: the number of bonds, an upper bound on DeltaH/4J.
inline double default_comparison_range(const Graph& g) { return static_cast<double>(g.n_edges()); }

}  // namespace spinbound
