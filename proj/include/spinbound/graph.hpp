// Copyright 2026 The spinbound Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file graph.hpp
 * @brief Coupling graphs: rectangular lattices, arbitrary edge lists,
 *        deterministic shortest paths and axis-ordered lattice paths.
 *
 * Sites are 0-based. Lattice sites use row-major indexing with dimension 1
 * varying fastest: site = x_1 + N_1 * (x_2 + N_2 * (x_3 + ...)).
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinbound {

enum class Boundary { periodic, open };

inline const char* to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "open"; }

/// Rectangular lattice. `extents[d]` is the number of sites along dimension d.
struct LatticeSpec {
    std::vector<int> extents;
    Boundary boundary = Boundary::periodic;

    static LatticeSpec cubic(int dims, int width, Boundary boundary) {
        if (dims < 1) throw std::invalid_argument("lattice: dimension must be positive");
        return LatticeSpec{std::vector<int>(static_cast<std::size_t>(dims), width), boundary};
    }

    int dims() const { return static_cast<int>(extents.size()); }

    int n_sites() const {
        int n = 1;
        for (int e : extents) n *= e;
        return n;
    }

    bool is_cubic() const {
        return std::adjacent_find(extents.begin(), extents.end(), std::not_equal_to<>()) == extents.end();
    }

    /// Width N of a cubic lattice; the largest extent otherwise.
    int width() const { return *std::max_element(extents.begin(), extents.end()); }

    void validate() const {
        if (extents.empty()) throw std::invalid_argument("lattice: dimension must be positive");
        for (int e : extents) {
            if (e < 2) throw std::invalid_argument("lattice: every extent must be >= 2");
            if (boundary == Boundary::periodic && e < 3)
                throw std::invalid_argument("lattice: periodic boundaries need extent >= 3 (N = 2 duplicates edges)");
        }
    }

    std::vector<int> coords(int site) const {
        std::vector<int> x(extents.size());
        for (std::size_t d = 0; d < extents.size(); ++d) {
            x[d] = site % extents[d];
            site /= extents[d];
        }
        return x;
    }

    int site(const std::vector<int>& x) const {
        int s = 0;
        for (std::size_t d = extents.size(); d-- > 0;) s = s * extents[d] + x[d];
        return s;
    }

    /// Periodic displacement range [-floor((N-1)/2), ceil((N-1)/2)] along dimension d.
    std::pair<int, int> displacement_range(int d) const {
        const int n = extents[static_cast<std::size_t>(d)];
        if (boundary == Boundary::periodic) return {-((n - 1) / 2), n / 2};
        return {1 - n, n - 1};
    }
};

/// Undirected edge with u < v.
struct Edge {
    int u = 0;
    int v = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed walk through sites; consecutive sites are adjacent.
struct Path {
    std::vector<int> sites;

    int length() const { return sites.empty() ? 0 : static_cast<int>(sites.size()) - 1; }
    int source() const { return sites.front(); }
    int target() const { return sites.back(); }

    /// Steps as (from, to) pairs in walk order.
    std::vector<std::pair<int, int>> steps() const {
        std::vector<std::pair<int, int>> out;
        for (std::size_t j = 0; j + 1 < sites.size(); ++j) out.emplace_back(sites[j], sites[j + 1]);
        return out;
    }

    friend bool operator==(const Path&, const Path&) = default;
};

class Graph {
public:
    Graph() = default;

    /// Builds a graph from a deduplicated edge list. Rejects loops and disconnected input.
    Graph(int n_sites, std::vector<Edge> edges, std::optional<LatticeSpec> lattice = std::nullopt)
        : n_sites_(n_sites), edges_(std::move(edges)), lattice_(std::move(lattice)) {
        if (n_sites_ < 1) throw std::invalid_argument("graph: needs at least one site");
        for (auto& e : edges_) {
            if (e.u == e.v)
                throw std::invalid_argument("graph: self-loop at site " + std::to_string(e.u) +
                                            " (the coupling graph must not have loops)");
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u < 0 || e.v >= n_sites_) throw std::invalid_argument("graph: edge endpoint out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

        adjacency_.assign(static_cast<std::size_t>(n_sites_), {});
        for (std::size_t id = 0; id < edges_.size(); ++id) {
            const auto& e = edges_[id];
            adjacency_[e.u].push_back({e.v, static_cast<int>(id)});
            adjacency_[e.v].push_back({e.u, static_cast<int>(id)});
        }
        for (auto& row : adjacency_) std::sort(row.begin(), row.end());

        if (!connected()) throw std::invalid_argument("graph: coupling graph is disconnected");
    }

    int n_sites() const { return n_sites_; }
    int n_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::optional<LatticeSpec>& lattice() const { return lattice_; }

    struct Neighbor {
        int site;
        int edge_id;
        friend auto operator<=>(const Neighbor&, const Neighbor&) = default;
    };

    /// Neighbors sorted by site index.
    const std::vector<Neighbor>& neighbors(int site) const { return adjacency_.at(static_cast<std::size_t>(site)); }

    int degree(int site) const { return static_cast<int>(neighbors(site).size()); }

    /// Edge id of {a, b}, or -1 when not adjacent.
    int edge_id(int a, int b) const {
        const auto& row = neighbors(a);
        auto it = std::lower_bound(row.begin(), row.end(), Neighbor{b, -1});
        return (it != row.end() && it->site == b) ? it->edge_id : -1;
    }

    bool adjacent(int a, int b) const { return edge_id(a, b) >= 0; }

    /// Breadth-first distances from `source`.
    std::vector<int> distances_from(int source) const {
        std::vector<int> dist(static_cast<std::size_t>(n_sites_), -1);
        std::queue<int> q;
        dist[source] = 0;
        q.push(source);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (const auto& nb : adjacency_[u]) {
                if (dist[nb.site] < 0) {
                    dist[nb.site] = dist[u] + 1;
                    q.push(nb.site);
                }
            }
        }
        return dist;
    }

private:
    bool connected() const {
        const auto dist = distances_from(0);
        return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
    }

    int n_sites_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::optional<LatticeSpec> lattice_;
};

inline Graph build_lattice(const LatticeSpec& spec) {
    spec.validate();
    std::vector<Edge> edges;
    const int n = spec.n_sites();
    for (int s = 0; s < n; ++s) {
        auto x = spec.coords(s);
        for (int d = 0; d < spec.dims(); ++d) {
            const int width = spec.extents[static_cast<std::size_t>(d)];
            const int xd = x[static_cast<std::size_t>(d)];
            if (xd + 1 < width) {
                x[static_cast<std::size_t>(d)] = xd + 1;
                edges.push_back({s, spec.site(x)});
            } else if (spec.boundary == Boundary::periodic) {
                x[static_cast<std::size_t>(d)] = 0;
                edges.push_back({s, spec.site(x)});
            }
            x[static_cast<std::size_t>(d)] = xd;
        }
    }
    return Graph(n, std::move(edges), spec);
}

inline Graph build_lattice(int dims, int width, Boundary boundary) {
    return build_lattice(LatticeSpec::cubic(dims, width, boundary));
}

/// Undirected graph from site pairs; n_sites = max index + 1.
inline Graph from_edge_list(const std::vector<std::pair<int, int>>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("graph: empty edge list");
    int max_site = 0;
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        if (a < 0 || b < 0) throw std::invalid_argument("graph: negative site index");
        if (a == b)
            throw std::invalid_argument("graph: self-loop at site " + std::to_string(a) +
                                        " (the coupling graph must not have loops)");
        max_site = std::max({max_site, a, b});
        edges.push_back({std::min(a, b), std::max(a, b)});
    }
    return Graph(max_site + 1, std::move(edges));
}

namespace detail {

// Parent of each site on the lexicographic shortest-path tree rooted at source:
// the smallest-index neighbor one step closer to the source.
inline std::vector<int> bfs_parents(const Graph& g, int source, const std::vector<int>& dist) {
    std::vector<int> parent(static_cast<std::size_t>(g.n_sites()), -1);
    for (int v = 0; v < g.n_sites(); ++v) {
        if (v == source) continue;
        for (const auto& nb : g.neighbors(v)) {
            if (dist[nb.site] == dist[v] - 1) {
                parent[v] = nb.site;
                break;
            }
        }
    }
    return parent;
}

inline Path walk_back(int source, int target, const std::vector<int>& parent) {
    Path p;
    for (int v = target; v != source; v = parent[v]) p.sites.push_back(v);
    p.sites.push_back(source);
    std::reverse(p.sites.begin(), p.sites.end());
    return p;
}

}  // namespace detail

/// Deterministic shortest path from i to k (smallest-index predecessor at every step).
inline Path shortest_path(const Graph& g, int i, int k) {
    if (i == k) throw std::invalid_argument("shortest_path: endpoints must differ");
    if (i < 0 || k < 0 || i >= g.n_sites() || k >= g.n_sites())
        throw std::invalid_argument("shortest_path: site out of range");
    const auto dist = g.distances_from(i);
    return detail::walk_back(i, k, detail::bfs_parents(g, i, dist));
}

/// Shortest paths from `source` to every other site; entry `source` is empty.
inline std::vector<Path> shortest_paths_from(const Graph& g, int source) {
    const auto dist = g.distances_from(source);
    const auto parent = detail::bfs_parents(g, source, dist);
    std::vector<Path> out(static_cast<std::size_t>(g.n_sites()));
    for (int k = 0; k < g.n_sites(); ++k)
        if (k != source) out[k] = detail::walk_back(source, k, parent);
    return out;
}

inline int diameter(const Graph& g) {
    int best = 0;
    for (int s = 0; s < g.n_sites(); ++s) {
        const auto dist = g.distances_from(s);
        best = std::max(best, *std::max_element(dist.begin(), dist.end()));
    }
    return best;
}

/// Path from site vector `start` displaced by `delta`, stepping through dimension 1
/// first, then 2, ..., D. Periodic steps wrap.
inline Path canonical_lattice_path(const Graph& g, const std::vector<int>& start, const std::vector<int>& delta) {
    if (!g.lattice()) throw std::invalid_argument("canonical_lattice_path: graph has no lattice metadata");
    const auto& spec = *g.lattice();
    const int dims = spec.dims();
    if (static_cast<int>(start.size()) != dims || static_cast<int>(delta.size()) != dims)
        throw std::invalid_argument("canonical_lattice_path: vector length must equal the lattice dimension");
    if (std::all_of(delta.begin(), delta.end(), [](int v) { return v == 0; }))
        throw std::invalid_argument("canonical_lattice_path: zero displacement");

    for (int d = 0; d < dims; ++d) {
        const auto ud = static_cast<std::size_t>(d);
        if (start[ud] < 0 || start[ud] >= spec.extents[ud])
            throw std::invalid_argument("canonical_lattice_path: start site out of range");
        if (spec.boundary == Boundary::periodic) {
            const auto [lo, hi] = spec.displacement_range(d);
            if (delta[ud] < lo || delta[ud] > hi)
                throw std::invalid_argument("canonical_lattice_path: displacement outside the periodic range");
        } else {
            const int end = start[ud] + delta[ud];
            if (end < 0 || end >= spec.extents[ud])
                throw std::invalid_argument("canonical_lattice_path: open-boundary endpoint out of range");
        }
    }

    Path p;
    auto x = start;
    p.sites.push_back(spec.site(x));
    for (int d = 0; d < dims; ++d) {
        const auto ud = static_cast<std::size_t>(d);
        const int step = delta[ud] > 0 ? 1 : -1;
        const int width = spec.extents[ud];
        for (int w = 0; w < std::abs(delta[ud]); ++w) {
            x[ud] = ((x[ud] + step) % width + width) % width;
            p.sites.push_back(spec.site(x));
        }
    }
    return p;
}

/// Every consecutive pair is an edge and no site repeats.
inline bool is_simple_path(const Graph& g, const Path& p) {
    if (p.sites.size() < 2) return false;
    auto sorted = p.sites;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (const auto& [a, b] : p.steps())
        if (!g.adjacent(a, b)) return false;
    return true;
}

}  // namespace spinbound
