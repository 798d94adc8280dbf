// Copyright 2026 The spinbound Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spectral.hpp
 * @brief Smallest-eigenvalue certificates for c * DeltaH/4J - DeltaS^2 and the
 *        tightest constant c_star for a given coupling graph.
 *
 * Both operators conserve the number of up spins, so every problem splits into
 * magnetization sectors. Flipping all spins maps sector m onto sector n - m, so
 * only sectors up to half filling are needed.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "graph.hpp"
#include "lanczos.hpp"
#include "operators.hpp"
#include "sector.hpp"

namespace spinbound {

enum class Method { dense, iterative, automatic };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::dense: return "dense";
        case Method::iterative: return "iterative";
        default: return "automatic";
    }
}

inline constexpr double kDefaultTolerance = 1e-9;
/// Sectors up to this dimension are diagonalized densely under Method::automatic.
inline constexpr std::size_t kAutoDenseDim = 1800;

/// Thread count from SPINBOUND_THREADS, else the hardware concurrency.
inline int worker_threads() {
    if (const char* env = std::getenv("SPINBOUND_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

// Runs body(i) for i in [0, count). Each index writes only its own output slot.
template <class Body>
void parallel_for(int count, Body body) {
    const int threads = std::min(worker_threads(), count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::future<void>> jobs;
    for (int t = 0; t < threads; ++t)
        jobs.push_back(std::async(std::launch::async, [t, threads, count, &body] {
            for (int i = t; i < count; i += threads) body(i);
        }));
    for (auto& j : jobs) j.get();
}

inline Method resolve(Method m, std::size_t dim) {
    if (m == Method::automatic) return dim <= kAutoDenseDim ? Method::dense : Method::iterative;
    if (m == Method::dense && dim > kDenseDimLimit)
        throw std::invalid_argument("dense eigensolver limited to dimension " + std::to_string(kDenseDimLimit));
    return m;
}

}  // namespace detail

inline double min_eigenvalue_dense(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
}

/// Smallest eigenvalue of a symmetric sparse operator.
inline double min_eigenvalue(const SparseOperator& op, Method method = Method::automatic, double tol = 1e-10,
                             LanczosOptions lanczos = {}) {
    if (op.dim() == 0) throw std::invalid_argument("min_eigenvalue: empty operator");
    if (detail::resolve(method, op.dim()) == Method::dense) return min_eigenvalue_dense(op.to_dense());
    lanczos.tol = tol;
    return lanczos_smallest(op.dim(), [&](std::span<const double> x, std::span<double> y) { op.apply(x, y); },
                            lanczos)
        .value;
}

/// Smallest eigenvalue of a pair sum restricted to one sector.
inline double min_eigenvalue(const PairSum& op, const SectorBasis& basis, Method method = Method::automatic,
                             double tol = 1e-10, LanczosOptions lanczos = {}) {
    if (detail::resolve(method, basis.dim()) == Method::dense) return min_eigenvalue_dense(op.to_dense(basis));
    lanczos.tol = tol;
    const SparseOperator sparse = to_sparse(op, basis);
    return lanczos_smallest(basis.dim(),
                            [&](std::span<const double> x, std::span<double> y) { sparse.apply(x, y); }, lanczos)
        .value;
}

struct SectorEigenvalue {
    int n_flipped = 0;
    std::size_t dim = 0;
    double lambda_min = 0.0;
    Method method = Method::dense;
};

struct Certificate {
    double lambda_min = 0.0;
    std::vector<SectorEigenvalue> sectors;
    double tol = kDefaultTolerance;
    Method method = Method::dense;
    bool pass = false;
    double constant = 0.0;  // the c that was certified, when applicable
};

struct CertifyOptions {
    Method method = Method::automatic;
    bool all_sectors = false;  // scan n_flipped = 0..n instead of 0..n/2
    LanczosOptions lanczos{};
};

/// Smallest eigenvalue of an arbitrary pair sum over magnetization sectors.
inline Certificate certify_operator(const PairSum& op, double tol = kDefaultTolerance,
                                    const CertifyOptions& opt = {}) {
    if (!(tol > 0.0)) throw std::invalid_argument("certify: tolerance must be positive");
    const int n = op.n_qubits();
    const int last = opt.all_sectors ? n : n / 2;
    Certificate cert;
    cert.tol = tol;
    cert.sectors.resize(static_cast<std::size_t>(last + 1));
    detail::parallel_for(last + 1, [&](int m) {
        const SectorBasis basis(n, m);
        const Method method = detail::resolve(opt.method, basis.dim());
        LanczosOptions lz = opt.lanczos;
        lz.tol = std::min(lz.tol, 1e-10);
        cert.sectors[static_cast<std::size_t>(m)] = {m, basis.dim(), min_eigenvalue(op, basis, method, lz.tol, lz),
                                                     method};
    });
    cert.lambda_min = std::numeric_limits<double>::infinity();
    cert.method = Method::dense;
    for (const auto& s : cert.sectors) {
        cert.lambda_min = std::min(cert.lambda_min, s.lambda_min);
        if (s.method == Method::iterative) cert.method = Method::iterative;
    }
    cert.pass = cert.lambda_min >= -tol;
    return cert;
}

/// Checks DeltaS^2 <= c * DeltaH/4J as an operator inequality on g.
inline Certificate certify_inequality(const Graph& g, double c, double tol = kDefaultTolerance,
                                      const CertifyOptions& opt = {}) {
    if (!(c >= 0.0)) throw std::invalid_argument("certify_inequality: constant must be non-negative");
    Certificate cert = certify_operator(bound_gap_terms(g, c), tol, opt);
    cert.constant = c;
    return cert;
}

/// Joint eigenvalue pair of the commuting operators DeltaH/4J (x) and DeltaS^2 (y).
struct JointEigenpair {
    double x = 0.0;
    double y = 0.0;
    double residual = 0.0;
};

/// Simultaneous eigendecomposition on one sector: diagonalize DeltaS^2, then DeltaH/4J on
/// each DeltaS^2 eigenspace. Dense only.
inline std::vector<JointEigenpair> joint_spectrum(const Graph& g, int n_flipped) {
    const SectorBasis basis(g.n_sites(), n_flipped);
    const Eigen::MatrixXd h = delta_hamiltonian_terms(g).to_dense(basis);
    const Eigen::MatrixXd s2 = delta_spin_squared_terms(g.n_sites()).to_dense(basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spin(s2);
    const auto& ys = spin.eigenvalues();
    const auto dim = static_cast<Eigen::Index>(basis.dim());

    std::vector<JointEigenpair> out;
    Eigen::Index start = 0;
    while (start < dim) {
        // DeltaS^2 eigenvalues are integers, spaced by at least 2 between spin values.
        Eigen::Index stop = start + 1;
        while (stop < dim && ys[stop] - ys[start] < 0.5) ++stop;
        const Eigen::MatrixXd q = spin.eigenvectors().middleCols(start, stop - start);
        const double y = std::round(ys.segment(start, stop - start).mean());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> energy(q.transpose() * h * q);
        for (Eigen::Index j = 0; j < energy.eigenvalues().size(); ++j) {
            const Eigen::VectorXd v = q * energy.eigenvectors().col(j);
            const double x = energy.eigenvalues()[j];
            const double res = (h * v - x * v).norm() + (s2 * v - y * v).norm();
            out.push_back({x, y, res});
        }
        start = stop;
    }
    return out;
}

struct PencilResult {
    double c_star = 0.0;
    int witness_sector = -1;
    int witness_index = -1;
    double witness_energy = 0.0;       // DeltaH/4J of the witness
    double witness_spin_deficit = 0.0;  // DeltaS^2 of the witness
    double residual = 0.0;
    Method method = Method::dense;
};

struct OptimalOptions {
    Method method = Method::automatic;
    double kernel_threshold = 1e-10;
    LanczosOptions lanczos{};
};

namespace detail {

// Dense route: joint eigenpairs with DeltaH/4J above the kernel threshold, largest y/x.
inline PencilResult optimal_constant_dense(const Graph& g, double kernel_threshold) {
    const int n = g.n_sites();
    std::vector<PencilResult> per(static_cast<std::size_t>(n / 2 + 1));
    parallel_for(n / 2 + 1, [&](int m) {
        PencilResult& best = per[static_cast<std::size_t>(m)];
        const auto pairs = joint_spectrum(g, m);
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            const auto& p = pairs[j];
            if (p.x <= kernel_threshold) continue;
            const double ratio = p.y / p.x;
            if (best.witness_sector < 0 || ratio > best.c_star) {
                best = {ratio, m, static_cast<int>(j), p.x, p.y, p.residual, Method::dense};
            }
        }
    });
    PencilResult out;
    for (const auto& p : per)
        if (p.witness_sector >= 0 && (out.witness_sector < 0 || p.c_star > out.c_star)) out = p;
    if (out.witness_sector < 0) out = {0.0, 0, 0, 0.0, 0.0, 0.0, Method::dense};
    return out;
}

// Iterative route. In sector m <= n/2 the largest DeltaS^2 eigenvalue belongs to total
// spin s = n/2 - m, and every multiplet of spin s meets that sector. Adding the penalty
// alpha * (Lambda - DeltaS^2) with alpha > lambda_max(DeltaH/4J) / 2 lifts every other
// spin above the target states, so the smallest eigenvalue of the penalized operator is
// the smallest excitation among spin-s states.
inline PencilResult optimal_constant_penalty(const Graph& g, Method method, const LanczosOptions& lanczos) {
    const int n = g.n_sites();
    const double alpha = g.n_edges() + 1.0;
    const int sectors = n / 2;
    std::vector<PencilResult> per(static_cast<std::size_t>(sectors + 1));
    parallel_for(sectors, [&](int idx) {
        const int m = idx + 1;
        const double target_spin = 0.5 * n - m;
        const double lambda = spin_deficit(n, target_spin);
        PairSum op = delta_hamiltonian_terms(g);
        op.add_scaled(delta_spin_squared_terms(n), -alpha);
        op.add_shift(alpha * lambda);
        const SectorBasis basis(n, m);
        const Method resolved = resolve(method, basis.dim());
        double x = 0.0;
        double residual = 0.0;
        if (resolved == Method::dense) {
            x = min_eigenvalue_dense(op.to_dense(basis));
        } else {
            const SparseOperator sparse = to_sparse(op, basis);
            const auto eig = lanczos_smallest(
                basis.dim(), [&](std::span<const double> v, std::span<double> w) { sparse.apply(v, w); }, lanczos);
            x = eig.value;
            residual = eig.residual;
        }
        per[static_cast<std::size_t>(m)] = {lambda / x, m, 0, x, lambda, residual, resolved};
    });
    PencilResult out{0.0, 0, 0, 0.0, 0.0, 0.0, method};
    for (int m = 1; m <= sectors; ++m) {
        const auto& p = per[static_cast<std::size_t>(m)];
        if (out.witness_sector <= 0 || p.c_star > out.c_star) out = p;
    }
    return out;
}

}  // namespace detail

/// Smallest c with c * DeltaH/4J - DeltaS^2 positive semidefinite.
inline PencilResult optimal_constant(const Graph& g, const OptimalOptions& opt = {}) {
    if (g.n_sites() > kDefaultMaxQubits) throw std::invalid_argument("optimal_constant: graph too large");
    Method method = opt.method;
    if (method == Method::automatic) method = g.n_sites() <= 12 ? Method::dense : Method::iterative;
    if (method == Method::dense) return detail::optimal_constant_dense(g, opt.kernel_threshold);
    return detail::optimal_constant_penalty(g, Method::iterative, opt.lanczos);
}

/// Same quantity as optimal_constant, always through the penalized sector problem
/// (dense or iterative eigensolver as selected).
inline PencilResult optimal_constant_penalized(const Graph& g, Method method = Method::automatic,
                                               const LanczosOptions& lanczos = {}) {
    return detail::optimal_constant_penalty(g, method, lanczos);
}

}  // namespace spinbound
