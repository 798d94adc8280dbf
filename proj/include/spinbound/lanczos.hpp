// Copyright 2026 The spinbound Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file lanczos.hpp
 * @brief Smallest eigenpair of a real symmetric operator given only its action.
 *
 * Lanczos with full reorthogonalization and explicit restart from the current
 * Ritz vector. The start vector comes from a seeded generator, so results are
 * reproducible run to run.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spinbound {

/// Raised when an iterative eigensolver runs out of iterations.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double residual)
        : std::runtime_error(what), best_estimate_(best_estimate), residual_(residual) {}

    double best_estimate() const { return best_estimate_; }
    double residual() const { return residual_; }

private:
    double best_estimate_;
    double residual_;
};

struct LanczosOptions {
    int krylov_dim = 160;
    int max_restarts = 60;
    double tol = 1e-10;  // on ||A y - theta y|| relative to max(1, |theta|)
    std::uint64_t seed = 0x5eedULL;
};

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;
    double residual = 0.0;
    int matvecs = 0;
};

using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;

inline EigenPair lanczos_smallest(std::size_t dim, const LinearMap& apply, const LanczosOptions& opt = {}) {
    if (dim == 0) throw std::invalid_argument("lanczos: empty operator");
    using Vec = Eigen::VectorXd;
    const auto n = static_cast<Eigen::Index>(dim);

    Vec v(n);
    {
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (Eigen::Index r = 0; r < n; ++r) v[r] = u(rng);
    }
    v.normalize();

    auto matvec = [&](const Vec& x, Vec& y) {
        apply(std::span<const double>(x.data(), dim), std::span<double>(y.data(), dim));
    };

    const int m_max = static_cast<int>(std::min<std::size_t>(dim, static_cast<std::size_t>(std::max(opt.krylov_dim, 2))));
    EigenPair best;
    best.value = std::numeric_limits<double>::infinity();
    best.residual = std::numeric_limits<double>::infinity();
    int matvecs = 0;

    for (int restart = 0; restart <= opt.max_restarts; ++restart) {
        Eigen::MatrixXd basis(n, m_max);
        std::vector<double> alpha;
        std::vector<double> beta;
        basis.col(0) = v;
        Vec w(n);
        int m = 0;
        for (int j = 0; j < m_max; ++j) {
            matvec(basis.col(j), w);
            ++matvecs;
            const double a = basis.col(j).dot(w);
            alpha.push_back(a);
            m = j + 1;
            // Two passes of classical Gram-Schmidt against the whole basis.
            for (int pass = 0; pass < 2; ++pass) {
                const Vec coeffs = basis.leftCols(m).transpose() * w;
                w.noalias() -= basis.leftCols(m) * coeffs;
            }
            const double b = w.norm();
            const double scale = std::max(1.0, std::abs(a));
            if (j + 1 == m_max || b <= 1e-13 * scale) {
                beta.push_back(b);
                break;
            }
            beta.push_back(b);
            basis.col(j + 1) = w / b;
        }

        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int j = 0; j < m; ++j) {
            t(j, j) = alpha[static_cast<std::size_t>(j)];
            if (j + 1 < m) t(j, j + 1) = t(j + 1, j) = beta[static_cast<std::size_t>(j)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        Vec y = basis.leftCols(m) * es.eigenvectors().col(0);
        y.normalize();

        Vec ay(n);
        matvec(y, ay);
        ++matvecs;
        const double rq = y.dot(ay);
        const double residual = (ay - rq * y).norm();
        if (residual < best.residual) {
            best.value = rq;
            best.residual = residual;
            best.vector.assign(y.data(), y.data() + n);
        }
        if (residual <= opt.tol * std::max(1.0, std::abs(rq))) {
            best.matvecs = matvecs;
            return best;
        }
        v = y;
    }
    throw ConvergenceError("lanczos: no convergence after " + std::to_string(matvecs) + " matrix-vector products",
                           best.value, best.residual);
}

}  // namespace spinbound
