// Copyright 2026 The spinbound Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief Edge-list input, Matrix Market operator export, state-vector text and
 *        JSON serialization of results.
 */
#pragma once

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bounds.hpp"
#include "graph.hpp"
#include "magnon.hpp"
#include "operators.hpp"
#include "spectral.hpp"
#include "weights.hpp"

namespace spinbound {

/// Error in a text input, carrying the 1-based line number.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, int line)
        : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// ---------------------------------------------------------------------------
// Edge lists: one "u v" pair per line, '#' starts a comment, blank lines skipped.

inline Graph parse_edge_list(std::istream& in) {
    std::vector<std::pair<int, int>> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string a;
        std::string b;
        std::string extra;
        if (!(fields >> a)) continue;
        if (!(fields >> b)) throw ParseError("expected two site indices", lineno);
        if (fields >> extra) throw ParseError("unexpected trailing field '" + extra + "'", lineno);
        auto to_site = [&](const std::string& s) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(s, &used);
            } catch (const std::exception&) {
                throw ParseError("'" + s + "' is not a site index", lineno);
            }
            if (used != s.size()) throw ParseError("'" + s + "' is not a site index", lineno);
            if (v < 0) throw ParseError("negative site index", lineno);
            return v;
        };
        const int u = to_site(a);
        const int v = to_site(b);
        if (u == v) throw ParseError("self-loop at site " + a + " (the coupling graph must not have loops)", lineno);
        pairs.emplace_back(u, v);
    }
    return from_edge_list(pairs);
}

inline Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

inline Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
    return parse_edge_list(in);
}

// ---------------------------------------------------------------------------
// Matrix Market (coordinate, real, symmetric; lower triangle, 1-based, sorted)

inline void write_matrix_market(std::ostream& out, const SparseOperator& op) {
    const auto lower = op.lower_entries();
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << "% sector n_qubits=" << op.n_qubits() << " n_flipped=" << op.n_flipped() << "\n";
    out << op.dim() << " " << op.dim() << " " << lower.size() << "\n";
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& e : lower) out << e.row + 1 << " " << e.col + 1 << " " << e.value << "\n";
    if (!out) throw std::runtime_error("matrix market: write failed");
}

inline SparseOperator read_matrix_market(std::istream& in) {
    std::string line;
    int lineno = 1;
    if (!std::getline(in, line) || line.rfind("%%MatrixMarket matrix coordinate real symmetric", 0) != 0)
        throw ParseError("expected a real symmetric coordinate Matrix Market header", lineno);
    int n_qubits = 0;
    int n_flipped = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] != '%') break;
        std::istringstream meta(line);
        std::string tok;
        while (meta >> tok) {
            if (tok.rfind("n_qubits=", 0) == 0) n_qubits = std::stoi(tok.substr(9));
            if (tok.rfind("n_flipped=", 0) == 0) n_flipped = std::stoi(tok.substr(10));
        }
    }
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t nnz = 0;
    {
        std::istringstream size(line);
        if (!(size >> rows >> cols >> nnz) || rows != cols) throw ParseError("bad size line", lineno);
    }
    std::vector<MatrixEntry> entries;
    for (std::size_t k = 0; k < nnz; ++k) {
        ++lineno;
        if (!std::getline(in, line)) throw ParseError("missing entries", lineno);
        std::istringstream fields(line);
        std::size_t r = 0;
        std::size_t c = 0;
        double v = 0.0;
        if (!(fields >> r >> c >> v) || r < 1 || c < 1 || r > rows || c > cols)
            throw ParseError("bad entry", lineno);
        entries.push_back({r - 1, c - 1, v});
        if (r != c) entries.push_back({c - 1, r - 1, v});
    }
    return SparseOperator(rows, n_qubits, n_flipped, std::move(entries));
}

enum class OperatorKind { delta_h, delta_s2 };

inline SparseOperator sector_operator(const Graph& g, int sector, OperatorKind which) {
    if (sector < 0 || sector > g.n_sites())
        throw std::invalid_argument("export: sector " + std::to_string(sector) + " outside [0, " +
                                    std::to_string(g.n_sites()) + "]");
    const SectorBasis basis(g.n_sites(), sector);
    return which == OperatorKind::delta_h ? delta_hamiltonian(g, basis) : delta_spin_squared(basis);
}

/// Writes one sector block of DeltaH/4J or DeltaS^2 to a Matrix Market file.
inline void export_operator(const Graph& g, int sector, OperatorKind which, const std::string& path) {
    const SparseOperator op = sector_operator(g, sector, which);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_matrix_market(out, op);
}

// ---------------------------------------------------------------------------
// State vectors: one "real imag" line per basis state, in basis order.

inline void write_state_vector(std::ostream& out, const StateVector& v) {
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& a : v.amplitudes) out << a.real() << " " << a.imag() << "\n";
}

inline std::vector<Complex> read_state_vector(std::istream& in) {
    std::vector<Complex> out;
    double re = 0.0;
    double im = 0.0;
    while (in >> re >> im) out.emplace_back(re, im);
    return out;
}

// ---------------------------------------------------------------------------
// JSON

inline void to_json(nlohmann::json& j, const LatticeSpec& s) {
    j = {{"dims", s.dims()}, {"extents", s.extents}, {"boundary", to_string(s.boundary)}};
}

inline void to_json(nlohmann::json& j, const BoundSpec& b) {
    j = {{"slope", b.slope},
         {"offset", b.offset},
         {"provenance", to_string(b.provenance)},
         {"n_sites", b.n_sites}};
    if (b.lattice) j["lattice"] = *b.lattice;
}

inline void to_json(nlohmann::json& j, const SectorEigenvalue& s) {
    j = {{"n_flipped", s.n_flipped}, {"dim", s.dim}, {"lambda_min", s.lambda_min}, {"method", to_string(s.method)}};
}

inline void to_json(nlohmann::json& j, const Certificate& c) {
    j = {{"constant", c.constant}, {"lambda_min", c.lambda_min}, {"tol", c.tol},
         {"method", to_string(c.method)}, {"pass", c.pass}, {"sectors", c.sectors}};
}

inline void to_json(nlohmann::json& j, const LoadMap& m) {
    j = {{"loads", m.loads}, {"max_load", m.max_load}, {"argmax_edge", m.argmax_edge}};
}

inline void to_json(nlohmann::json& j, const ComparisonSegment& s) {
    j = {{"lo", s.lo}, {"hi", s.hi}, {"tighter", s.tighter == 0 ? "first" : s.tighter == 1 ? "second" : "equal"}};
}

inline void to_json(nlohmann::json& j, const ComparisonReport& r) {
    j = {{"x_max", r.x_max},
         {"crossovers", r.crossovers},
         {"segments", r.segments},
         {"first_at_zero", r.first_at_zero},
         {"second_at_zero", r.second_at_zero},
         {"first_at_max", r.first_at_max},
         {"second_at_max", r.second_at_max}};
}

inline void to_json(nlohmann::json& j, const PencilResult& p) {
    j = {{"c_star", p.c_star},
         {"witness_sector", p.witness_sector},
         {"witness_index", p.witness_index},
         {"witness_energy", p.witness_energy},
         {"witness_spin_deficit", p.witness_spin_deficit},
         {"residual", p.residual},
         {"method", to_string(p.method)}};
}

inline void to_json(nlohmann::json& j, const WeightedAssignment& wa) {
    j = nlohmann::json::array();
    for (const auto& pa : wa.pairs)
        j.push_back({{"source", pa.source}, {"target", pa.target}, {"path", pa.path.sites}, {"weights", pa.weights}});
}

}  // namespace spinbound
