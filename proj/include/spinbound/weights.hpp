// Copyright 2026 The spinbound Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file weights.hpp
 * @brief Path-weight assignments for the chained singlet-projector inequality
 *
 *     P(i,k) <= sum_{e in p(i,k)} w_e P(e),   sum_e 1/w_e = 1,
 *
 * summed over ordered pairs. Grouping by edge turns the sum into per-edge loads,
 * and the largest load is a valid constant c in DeltaS^2 <= c DeltaH/4J.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "graph.hpp"

namespace spinbound {

enum class PathChoice { bfs, canonical };

inline const char* to_string(PathChoice p) { return p == PathChoice::bfs ? "bfs" : "canonical"; }

struct PairAssignment {
    int source = 0;
    int target = 0;
    Path path;
    std::vector<double> weights;  // one per step of `path`
};

struct WeightedAssignment {
    Graph graph;
    std::vector<PairAssignment> pairs;  // ordered pairs, source-major
};

struct LoadMap {
    std::vector<double> loads;  // indexed by edge id
    double max_load = 0.0;
    int argmax_edge = -1;
};

namespace detail {

inline std::vector<Path> paths_from(const Graph& g, int source, PathChoice choice) {
    if (choice == PathChoice::bfs) return shortest_paths_from(g, source);
    const auto& spec = *g.lattice();
    const auto start = spec.coords(source);
    std::vector<Path> out(static_cast<std::size_t>(g.n_sites()));
    for (int k = 0; k < g.n_sites(); ++k) {
        if (k == source) continue;
        auto delta = spec.coords(k);
        for (int d = 0; d < spec.dims(); ++d) {
            const auto ud = static_cast<std::size_t>(d);
            delta[ud] -= start[ud];
            if (spec.boundary == Boundary::periodic) {
                const auto [lo, hi] = spec.displacement_range(d);
                const int width = spec.extents[ud];
                if (delta[ud] < lo) delta[ud] += width;
                if (delta[ud] > hi) delta[ud] -= width;
            }
        }
        out[static_cast<std::size_t>(k)] = canonical_lattice_path(g, start, delta);
    }
    return out;
}

}  // namespace detail

/// Every ordered pair gets its deterministic path with all weights equal to the path length.
inline WeightedAssignment uniform_assignment(const Graph& g, PathChoice choice = PathChoice::bfs) {
    if (choice == PathChoice::canonical && !g.lattice())
        throw std::invalid_argument("uniform_assignment: canonical paths need lattice metadata");
    WeightedAssignment wa{g, {}};
    wa.pairs.reserve(static_cast<std::size_t>(g.n_sites()) * static_cast<std::size_t>(g.n_sites() - 1));
    for (int i = 0; i < g.n_sites(); ++i) {
        auto paths = detail::paths_from(g, i, choice);
        for (int k = 0; k < g.n_sites(); ++k) {
            if (k == i) continue;
            auto& p = paths[static_cast<std::size_t>(k)];
            const auto len = static_cast<std::size_t>(p.length());
            wa.pairs.push_back({i, k, std::move(p), std::vector<double>(len, static_cast<double>(len))});
        }
    }
    return wa;
}

/// Throws naming the first pair that violates the assignment invariants.
inline void validate_assignment(const WeightedAssignment& wa, double tol = 1e-10) {
    const Graph& g = wa.graph;
    for (const auto& pa : wa.pairs) {
        const std::string name = "(" + std::to_string(pa.source) + "," + std::to_string(pa.target) + ")";
        if (pa.path.sites.empty() || pa.path.source() != pa.source || pa.path.target() != pa.target ||
            !is_simple_path(g, pa.path))
            throw std::invalid_argument("assignment: pair " + name + " does not carry a simple path between its ends");
        if (pa.weights.size() != static_cast<std::size_t>(pa.path.length()))
            throw std::invalid_argument("assignment: pair " + name + " has the wrong number of weights");
        double recip = 0.0;
        for (double w : pa.weights) {
            if (!(w >= 1.0 - tol) || !std::isfinite(w))
                throw std::invalid_argument("assignment: pair " + name + " has a weight below 1");
            recip += 1.0 / w;
        }
        if (std::abs(recip - 1.0) > tol)
            throw std::invalid_argument("assignment: pair " + name + " reciprocal weights sum to " +
                                        std::to_string(recip) + ", not 1");
    }
}

struct AssignmentBound {
    LoadMap loads;
    BoundSpec bound;
};

/// Per-edge accumulated weight; the maximum is the induced bound constant.
inline AssignmentBound assignment_constant(const WeightedAssignment& wa) {
    validate_assignment(wa);
    const Graph& g = wa.graph;
    LoadMap lm;
    lm.loads.assign(static_cast<std::size_t>(g.n_edges()), 0.0);
    for (const auto& pa : wa.pairs) {
        const auto steps = pa.path.steps();
        for (std::size_t s = 0; s < steps.size(); ++s)
            lm.loads[static_cast<std::size_t>(g.edge_id(steps[s].first, steps[s].second))] += pa.weights[s];
    }
    const auto it = std::max_element(lm.loads.begin(), lm.loads.end());
    lm.max_load = *it;
    lm.argmax_edge = static_cast<int>(it - lm.loads.begin());
    return {lm, {lm.max_load, 0.0, Provenance::assignment, g.n_sites(), g.lattice()}};
}

struct OptimizerParams {
    int max_iterations = 100000;
    int stall_window = 50;
    double stall_rel_tol = 1e-8;
    double gap_rel_tol = 1e-11;
};

struct OptimizationResult {
    WeightedAssignment assignment;
    double max_load = 0.0;     // best feasible (primal) value found
    double lower_bound = 0.0;  // best dual value; the true optimum lies in [lower_bound, max_load]
    int iterations = 0;
    bool converged = false;
    std::vector<double> best_history;  // best max load after each iteration, non-increasing
};

/// Minimizes the largest edge load over per-pair weights with paths held fixed.
///
/// With x = 1/w the feasible set per pair is a simplex and loads are convex. Any
/// edge price vector lambda on the unit simplex gives the lower bound
///     g(lambda) = sum_pairs ( sum_{e in path} sqrt(lambda_e) )^2,
/// attained by x_{p,e} proportional to sqrt(lambda_e). The loads of that x are the
/// gradient of g; the step lambda_e <- lambda_e sqrt(L_e / g), renormalized onto
/// the simplex, moves toward the price vector maximizing g. Uniform prices reproduce the uniform assignment, so the
/// first iterate is the uniform assignment.
inline OptimizationResult optimize_weights(const WeightedAssignment& start, const OptimizerParams& params = {}) {
    validate_assignment(start);
    const Graph& g = start.graph;
    const auto n_edges = static_cast<std::size_t>(g.n_edges());

    // Edge ids along every pair's path.
    std::vector<std::vector<int>> pair_edges;
    pair_edges.reserve(start.pairs.size());
    for (const auto& pa : start.pairs) {
        std::vector<int> ids;
        for (const auto& [a, b] : pa.path.steps()) ids.push_back(g.edge_id(a, b));
        pair_edges.push_back(std::move(ids));
    }

    std::vector<double> price(n_edges, 1.0 / static_cast<double>(n_edges));
    std::vector<double> root(n_edges);
    std::vector<double> loads(n_edges);
    std::vector<double> pair_norm(start.pairs.size());

    auto evaluate = [&](double& primal, double& dual) {
        for (std::size_t e = 0; e < n_edges; ++e) root[e] = std::sqrt(price[e]);
        std::fill(loads.begin(), loads.end(), 0.0);
        dual = 0.0;
        for (std::size_t p = 0; p < pair_edges.size(); ++p) {
            double s = 0.0;
            for (int e : pair_edges[p]) s += root[static_cast<std::size_t>(e)];
            pair_norm[p] = s;
            dual += s * s;
            for (int e : pair_edges[p]) loads[static_cast<std::size_t>(e)] += s / root[static_cast<std::size_t>(e)];
        }
        primal = *std::max_element(loads.begin(), loads.end());
    };

    auto materialize = [&]() {
        WeightedAssignment wa{g, start.pairs};
        for (std::size_t p = 0; p < wa.pairs.size(); ++p) {
            auto& w = wa.pairs[p].weights;
            const auto& ids = pair_edges[p];
            if (ids.size() == 1) {
                w[0] = 1.0;
                continue;
            }
            // Normalize explicitly so the reciprocal sum is 1 to rounding.
            double recip = 0.0;
            for (std::size_t s = 0; s < ids.size(); ++s) recip += root[static_cast<std::size_t>(ids[s])];
            for (std::size_t s = 0; s < ids.size(); ++s) w[s] = recip / root[static_cast<std::size_t>(ids[s])];
        }
        return wa;
    };

    OptimizationResult result;
    double best_primal = std::numeric_limits<double>::infinity();
    double best_dual = 0.0;
    std::vector<double> best_price = price;

    for (int it = 0; it < params.max_iterations; ++it) {
        double primal = 0.0;
        double dual = 0.0;
        evaluate(primal, dual);
        best_dual = std::max(best_dual, dual);
        if (primal < best_primal) {
            best_primal = primal;
            best_price = price;
        }
        result.best_history.push_back(best_primal);
        result.iterations = it + 1;

        if ((best_primal - best_dual) <= params.gap_rel_tol * best_primal) {
            result.converged = true;
            break;
        }
        const auto window = static_cast<std::size_t>(params.stall_window);
        if (result.best_history.size() > window) {
            const double then = result.best_history[result.best_history.size() - 1 - window];
            if (then - best_primal <= params.stall_rel_tol * then) {
                result.converged = true;
                break;
            }
        }
        // Damped multiplicative step; the square root keeps the update stable on stiff paths.
        double total = 0.0;
        for (std::size_t e = 0; e < n_edges; ++e) {
            price[e] *= std::sqrt(loads[e] / dual);
            total += price[e];
        }
        for (auto& p : price) p /= total;
    }

    price = best_price;
    for (std::size_t e = 0; e < n_edges; ++e) root[e] = std::sqrt(price[e]);
    result.assignment = materialize();
    result.max_load = assignment_constant(result.assignment).loads.max_load;
    result.lower_bound = best_dual;
    return result;
}

/// Convenience: optimize starting from the uniform assignment with the given paths.
inline OptimizationResult optimize_weights(const Graph& g, PathChoice choice = PathChoice::bfs,
                                           const OptimizerParams& params = {}) {
    return optimize_weights(uniform_assignment(g, choice), params);
}

}  // namespace spinbound
