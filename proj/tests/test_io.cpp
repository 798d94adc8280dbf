// Copyright 2026 The spinbound Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "spinbound/io.hpp"

using namespace spinbound;

namespace {

int error_line(const std::string& text) {
    try {
        parse_edge_list(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST(EdgeList, ParsesCommentsAndBlankLines) {
    const Graph g = parse_edge_list("# triangle\n0 1\n\n1 2   # second bond\n2 0\n");
    EXPECT_EQ(g.n_sites(), 3);
    EXPECT_EQ(g.n_edges(), 3);
}

TEST(EdgeList, ReportsLineNumbers) {
    EXPECT_EQ(error_line("0 1\n1 1\n"), 2);
    EXPECT_EQ(error_line("0 1\n\n# c\n1 x\n"), 4);
    EXPECT_EQ(error_line("0\n"), 1);
    EXPECT_EQ(error_line("0 1 2\n"), 1);
    EXPECT_EQ(error_line("0 -1\n"), 1);
    EXPECT_EQ(error_line("0 1.5\n"), 1);
}

TEST(EdgeList, LoopMessage) {
    try {
        parse_edge_list("0 1\n2 2\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("self-loop"), std::string::npos);
    }
}

TEST(EdgeList, DisconnectedAndEmpty) {
    EXPECT_THROW(parse_edge_list("0 1\n2 3\n"), std::invalid_argument);
    EXPECT_THROW(parse_edge_list("# nothing\n"), std::invalid_argument);
}

TEST(EdgeList, MissingFile) {
    EXPECT_THROW(read_edge_list_file("/nonexistent/edges.txt"), std::runtime_error);
}

TEST(MatrixMarket, RingOfFourOneFlip) {
    std::ostringstream out;
    write_matrix_market(out, sector_operator(build_lattice(1, 4, Boundary::periodic), 1, OperatorKind::delta_h));
    EXPECT_EQ(out.str(),
              "%%MatrixMarket matrix coordinate real symmetric\n"
              "% sector n_qubits=4 n_flipped=1\n"
              "4 4 8\n"
              "1 1 1\n"
              "2 1 -0.5\n"
              "2 2 1\n"
              "3 2 -0.5\n"
              "3 3 1\n"
              "4 1 -0.5\n"
              "4 3 -0.5\n"
              "4 4 1\n");
}

TEST(MatrixMarket, TwoQubitSpinDeficit) {
    std::ostringstream out;
    write_matrix_market(out, sector_operator(from_edge_list({{0, 1}}), 1, OperatorKind::delta_s2));
    EXPECT_EQ(out.str(),
              "%%MatrixMarket matrix coordinate real symmetric\n"
              "% sector n_qubits=2 n_flipped=1\n"
              "2 2 3\n"
              "1 1 1\n"
              "2 1 -1\n"
              "2 2 1\n");
}

TEST(MatrixMarket, RoundTrip) {
    const Graph g = build_lattice(2, 3, Boundary::open);
    for (int m = 0; m <= 4; ++m) {
        for (const auto which : {OperatorKind::delta_h, OperatorKind::delta_s2}) {
            const SparseOperator op = sector_operator(g, m, which);
            std::stringstream io;
            write_matrix_market(io, op);
            const SparseOperator back = read_matrix_market(io);
            EXPECT_EQ(back.dim(), op.dim());
            EXPECT_EQ(back.n_qubits(), 9);
            EXPECT_EQ(back.n_flipped(), m);
            EXPECT_EQ(back.entries().size(), op.entries().size());
            EXPECT_EQ((back.to_dense() - op.to_dense()).cwiseAbs().maxCoeff(), 0.0);
        }
    }
}

TEST(MatrixMarket, RejectsBadInput) {
    std::istringstream general("%%MatrixMarket matrix coordinate real general\n1 1 0\n");
    EXPECT_THROW(read_matrix_market(general), ParseError);
    std::istringstream short_entries("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 1\n");
    EXPECT_THROW(read_matrix_market(short_entries), ParseError);
    std::istringstream range("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n3 1 1\n");
    EXPECT_THROW(read_matrix_market(range), ParseError);
}

TEST(MatrixMarket, ExportToFile) {
    const auto path = std::filesystem::temp_directory_path() / "spinbound_test_export.mtx";
    export_operator(build_lattice(1, 4, Boundary::periodic), 2, OperatorKind::delta_h, path.string());
    std::ifstream in(path);
    const SparseOperator op = read_matrix_market(in);
    EXPECT_EQ(op.dim(), 6u);
    std::filesystem::remove(path);
    EXPECT_THROW(sector_operator(build_lattice(1, 4, Boundary::periodic), 5, OperatorKind::delta_h),
                 std::invalid_argument);
}

TEST(StateVector, RoundTrip) {
    const StateVector v = magnon_state(LatticeSpec::cubic(1, 5, Boundary::periodic), {2});
    std::stringstream io;
    write_state_vector(io, v);
    const auto back = read_state_vector(io);
    ASSERT_EQ(back.size(), v.amplitudes.size());
    for (std::size_t k = 0; k < back.size(); ++k) EXPECT_EQ(back[k], v.amplitudes[k]);
}

TEST(Json, CertificateFields) {
    const Certificate c = certify_inequality(build_lattice(1, 4, Boundary::periodic), 6.0);
    const nlohmann::json j = c;
    EXPECT_EQ(j["constant"], 6.0);
    EXPECT_EQ(j["pass"], true);
    EXPECT_EQ(j["method"], "dense");
    ASSERT_EQ(j["sectors"].size(), 3u);
    EXPECT_EQ(j["sectors"][2]["dim"], 6);
}

TEST(Json, BoundsAndComparisons) {
    const Graph g = build_lattice(1, 4, Boundary::periodic);
    const nlohmann::json b = closed_form_constant(Variant::periodic, g);
    EXPECT_EQ(b["slope"], 6.0);
    EXPECT_EQ(b["provenance"], "periodic-exact");
    EXPECT_EQ(b["lattice"]["extents"], std::vector<int>{4});
    const nlohmann::json r = compare_bounds(closed_form_constant(Variant::periodic, g), baerwinkel_bound(g).bound, 4.0);
    EXPECT_EQ(r["segments"][0]["tighter"], "first");
    EXPECT_EQ(r["segments"][1]["tighter"], "second");
}

TEST(Json, Assignment) {
    const nlohmann::json j = uniform_assignment(build_lattice(1, 3, Boundary::open));
    ASSERT_EQ(j.size(), 6u);
    EXPECT_EQ(j[1]["source"], 0);
    EXPECT_EQ(j[1]["target"], 2);
    EXPECT_EQ(j[1]["path"], (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(j[1]["weights"], (std::vector<double>{2.0, 2.0}));
}
