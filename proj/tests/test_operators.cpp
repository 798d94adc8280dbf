// Copyright 2026 The spinbound Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <bit>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "spinbound/graph.hpp"
#include "spinbound/magnon.hpp"
#include "spinbound/operators.hpp"
#include "spinbound/sector.hpp"

using namespace spinbound;

namespace {

// Eigenvalues of a pair sum over the full space, gathered sector by sector.
std::vector<double> full_spectrum(const PairSum& op) {
    std::vector<double> out;
    for (int m = 0; m <= op.n_qubits(); ++m) {
        const SectorBasis b(op.n_qubits(), m);
        const auto ev = oracle::eigenvalues(op.to_dense(b));
        out.insert(out.end(), ev.data(), ev.data() + ev.size());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> sorted(const Eigen::VectorXd& v) {
    std::vector<double> out(v.data(), v.data() + v.size());
    std::sort(out.begin(), out.end());
    return out;
}

void expect_spectrum(const std::vector<double>& got, const std::vector<double>& want, double tol = 1e-12) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

std::vector<std::pair<int, int>> edge_pairs(const Graph& g) {
    std::vector<std::pair<int, int>> out;
    for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
    return out;
}

// Qubit q in the sector code is bit q; in the Kronecker oracle it is the q-th
// tensor factor from the left, i.e. bit (n-1-q) of the index, with |0> = up.
Eigen::MatrixXd oracle_block(const Eigen::MatrixXd& full, const SectorBasis& b) {
    const int n = b.n_qubits();
    auto to_full = [n](StateMask s) {
        Eigen::Index idx = 0;
        for (int q = 0; q < n; ++q) {
            const bool up = (s >> q) & 1U;
            idx = (idx << 1) | (up ? 0 : 1);
        }
        return idx;
    };
    const auto dim = static_cast<Eigen::Index>(b.dim());
    Eigen::MatrixXd out(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
            out(r, c) = full(to_full(b.state(static_cast<std::size_t>(r))), to_full(b.state(static_cast<std::size_t>(c))));
    return out;
}

}  // namespace

TEST(SectorBasis, Dimensions) {
    EXPECT_EQ(sector_basis(4, 2).dim(), 6u);
    EXPECT_EQ(sector_basis(2, 1).dim(), 2u);
    EXPECT_EQ(sector_basis(3, 0).dim(), 1u);
    EXPECT_EQ(sector_basis(3, 0).state(0), 0u);
    EXPECT_THROW(sector_basis(3, 4), std::invalid_argument);
    EXPECT_THROW(sector_basis(3, -1), std::invalid_argument);
    EXPECT_THROW(sector_basis(25, 1), std::invalid_argument);
    EXPECT_NO_THROW(sector_basis(26, 1, 26));
}

TEST(SectorBasis, OrderedAndIndexed) {
    for (int n = 1; n <= 12; ++n) {
        for (int m = 0; m <= n; ++m) {
            const SectorBasis b(n, m);
            ASSERT_EQ(b.dim(), binomial(n, m));
            for (std::size_t i = 0; i < b.dim(); ++i) {
                EXPECT_EQ(std::popcount(b.state(i)), m);
                if (i > 0) {
                    EXPECT_LT(b.state(i - 1), b.state(i));
                }
                EXPECT_EQ(b.index_of(b.state(i)), i);
            }
        }
    }
    EXPECT_THROW(SectorBasis(4, 2).index_of(0b111), std::out_of_range);
}

TEST(SingletProjector, TwoQubitMatrix) {
    const SparseOperator p = singlet_projector(SectorBasis(2, 1), 0, 1);
    const Eigen::MatrixXd m = p.to_dense();
    EXPECT_DOUBLE_EQ(m(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(m(0, 1), -0.5);
    EXPECT_DOUBLE_EQ(m(1, 0), -0.5);
    EXPECT_DOUBLE_EQ(m(1, 1), 0.5);
    EXPECT_THROW(singlet_projector(SectorBasis(2, 1), 1, 1), std::invalid_argument);
}

TEST(SingletProjector, IdempotentAndTraceTwoOnThreeQubits) {
    double trace = 0.0;
    for (int m = 0; m <= 3; ++m) {
        const SectorBasis b(3, m);
        const Eigen::MatrixXd p = singlet_projector(b, 0, 2).to_dense();
        EXPECT_LE((p * p - p).cwiseAbs().maxCoeff(), 1e-15);
        trace += p.trace();
    }
    EXPECT_DOUBLE_EQ(trace, 2.0);
}

TEST(SingletProjector, MatchesKroneckerOracle) {
    const int n = 5;
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            const Eigen::MatrixXd full = oracle::singlet(i, k, n);
            for (int m = 0; m <= n; ++m) {
                const SectorBasis b(n, m);
                const Eigen::MatrixXd mine = singlet_projector(b, i, k).to_dense();
                EXPECT_LE((mine - oracle_block(full, b)).cwiseAbs().maxCoeff(), 1e-14);
            }
        }
    }
}

TEST(DeltaHamiltonian, SingleEdgeSpectrum) {
    const Graph g = from_edge_list({{0, 1}});
    expect_spectrum(full_spectrum(delta_hamiltonian_terms(g)), {0, 0, 0, 1});
}

TEST(DeltaHamiltonian, RingVacuumIsGround) {
    const Graph g = build_lattice(1, 4, Boundary::periodic);
    const SparseOperator h = delta_hamiltonian(g, SectorBasis(4, 0));
    EXPECT_EQ(h.dim(), 1u);
    EXPECT_EQ(h.at(0, 0), 0.0);
}

TEST(DeltaHamiltonian, TriangleSpectrum) {
    // Frozen from dense diagonalization of the 8x8 Kronecker operator (tests/oracles/oracle.py).
    const Graph g = from_edge_list({{0, 1}, {1, 2}, {0, 2}});
    expect_spectrum(full_spectrum(delta_hamiltonian_terms(g)), {0, 0, 0, 0, 1.5, 1.5, 1.5, 1.5});
    expect_spectrum(sorted(oracle::eigenvalues(oracle::delta_h(edge_pairs(g), 3))),
                    {0, 0, 0, 0, 1.5, 1.5, 1.5, 1.5});
}

TEST(DeltaHamiltonian, SizeMismatch) {
    const Graph g = from_edge_list({{0, 1}, {1, 2}});
    EXPECT_THROW(delta_hamiltonian(g, SectorBasis(4, 1)), std::invalid_argument);
}

TEST(DeltaSpinSquared, SmallSpectra) {
    expect_spectrum(full_spectrum(delta_spin_squared_terms(2)), {0, 0, 0, 2});
    expect_spectrum(full_spectrum(delta_spin_squared_terms(3)), {0, 0, 0, 0, 3, 3, 3, 3});
}

TEST(DeltaSpinSquared, MatchesTotalSpinOracle) {
    for (int n = 2; n <= 6; ++n) {
        const Eigen::MatrixXd full = oracle::delta_s2(n);
        for (int m = 0; m <= n; ++m) {
            const SectorBasis b(n, m);
            EXPECT_LE((delta_spin_squared(b).to_dense() - oracle_block(full, b)).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(DeltaSpinSquared, SpectrumIsSpinDeficits) {
    for (int n = 2; n <= 6; ++n) {
        const auto spectrum = full_spectrum(delta_spin_squared_terms(n));
        for (double y : spectrum) {
            bool admissible = false;
            for (double s = (n % 2) * 0.5; s <= 0.5 * n + 1e-9; s += 1.0)
                admissible = admissible || std::abs(y - spin_deficit(n, s)) < 1e-10;
            EXPECT_TRUE(admissible) << "n=" << n << " eigenvalue " << y;
        }
    }
}

TEST(DeltaSpinSquared, CompleteGraphIsTwiceDeltaH) {
    for (int n = 2; n <= 6; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k) pairs.emplace_back(i, k);
        const Graph g = from_edge_list(pairs);
        for (int m = 0; m <= n; ++m) {
            const SectorBasis b(n, m);
            const Eigen::MatrixXd diff = delta_spin_squared(b).to_dense() - 2.0 * delta_hamiltonian(g, b).to_dense();
            EXPECT_LE(diff.cwiseAbs().maxCoeff(), 1e-14);
        }
    }
}

TEST(OperatorProperties, SymmetricAndSectorClosed) {
    const Graph g = build_lattice(2, 3, Boundary::open);
    for (int m = 0; m <= g.n_sites(); ++m) {
        const SectorBasis b(g.n_sites(), m);
        const SparseOperator h = delta_hamiltonian(g, b);
        EXPECT_TRUE(h.is_symmetric());
        for (const auto& e : h.entries()) {
            ASSERT_LT(e.col, b.dim());
            EXPECT_EQ(std::popcount(b.state(e.col)), m);
        }
    }
}

TEST(OperatorProperties, CommuteOnRandomVectors) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    const std::vector<Graph> graphs{build_lattice(1, 10, Boundary::periodic), build_lattice(1, 9, Boundary::open),
                                    from_edge_list({{0, 1}, {1, 2}, {2, 3}, {1, 4}, {4, 5}, {5, 6}, {2, 6}, {6, 7}})};
    for (const auto& g : graphs) {
        const PairSum h = delta_hamiltonian_terms(g);
        const PairSum s2 = delta_spin_squared_terms(g.n_sites());
        for (int m = 0; m <= g.n_sites(); ++m) {
            const SectorBasis b(g.n_sites(), m);
            for (int trial = 0; trial < 50; ++trial) {
                std::vector<double> v(b.dim());
                for (auto& x : v) x = gauss(rng);
                const auto hs = h.apply(b, s2.apply(b, v));
                const auto sh = s2.apply(b, h.apply(b, v));
                double diff = 0.0;
                double norm = 0.0;
                for (std::size_t r = 0; r < v.size(); ++r) {
                    diff += (hs[r] - sh[r]) * (hs[r] - sh[r]);
                    norm += v[r] * v[r];
                }
                EXPECT_LE(std::sqrt(diff), 1e-12 * std::sqrt(norm));
            }
        }
    }
}

TEST(OperatorProperties, KernelOfDeltaHIsKilledByDeltaS2) {
    const std::vector<Graph> graphs{build_lattice(1, 8, Boundary::periodic), build_lattice(2, 3, Boundary::open),
                                    from_edge_list({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {1, 5}, {5, 6}})};
    for (const auto& g : graphs) {
        for (int m = 0; m <= g.n_sites(); ++m) {
            const SectorBasis b(g.n_sites(), m);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(delta_hamiltonian_terms(g).to_dense(b));
            const Eigen::MatrixXd s2 = delta_spin_squared_terms(g.n_sites()).to_dense(b);
            for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
                if (es.eigenvalues()[j] > 1e-10) continue;
                EXPECT_LE((s2 * es.eigenvectors().col(j)).norm(), 1e-10);
            }
        }
    }
}

TEST(OperatorProperties, ProjectorSumsArePositive) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> w(0.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        PairSum op(6);
        for (int t = 0; t < 8; ++t) {
            const int i = static_cast<int>(rng() % 6);
            const int k = static_cast<int>((i + 1 + rng() % 5) % 6);
            op.add(i, k, w(rng));
        }
        for (double ev : full_spectrum(op)) EXPECT_GE(ev, -1e-12);
    }
}

TEST(OperatorProperties, DenseLimit) {
    EXPECT_THROW(delta_spin_squared_terms(15).to_dense(SectorBasis(15, 7)), std::invalid_argument);
}

TEST(Magnon, RingOfFourUniform) {
    const LatticeSpec spec = LatticeSpec::cubic(1, 4, Boundary::periodic);
    const StateVector v = magnon_state(spec, {0});
    for (const auto& a : v.amplitudes) {
        EXPECT_NEAR(a.real(), 0.5, 1e-15);
        EXPECT_NEAR(a.imag(), 0.0, 1e-15);
    }
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    const PairSum h = delta_hamiltonian_terms(build_lattice(spec));
    EXPECT_NEAR(expectation(h, v), 0.0, 1e-15);
    EXPECT_LE(eigen_residual(h, v), 1e-15);
}

TEST(Magnon, RingOfFourExcitations) {
    const LatticeSpec spec = LatticeSpec::cubic(1, 4, Boundary::periodic);
    const PairSum h = delta_hamiltonian_terms(build_lattice(spec));
    // Values 1 and 2 are eigenvalues of the one-flip block of the 16x16 Kronecker operator.
    const auto block = oracle::eigenvalues(oracle_block(oracle::delta_h({{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 4),
                                                        SectorBasis(4, 1)));
    EXPECT_NEAR(block[0], 0.0, 1e-12);
    EXPECT_NEAR(block[1], 1.0, 1e-12);
    EXPECT_NEAR(block[2], 1.0, 1e-12);
    EXPECT_NEAR(block[3], 2.0, 1e-12);

    const StateVector k1 = magnon_state(spec, {1});
    EXPECT_NEAR(expectation(h, k1), 1.0, 1e-12);
    EXPECT_LE(eigen_residual(h, k1), 1e-12);
    const StateVector k2 = magnon_state(spec, {2});
    EXPECT_NEAR(expectation(h, k2), 2.0, 1e-12);
    EXPECT_LE(eigen_residual(h, k2), 1e-12);
}

TEST(Magnon, PeriodicChainsAreEigenstates) {
    for (int n = 3; n <= 12; ++n) {
        const LatticeSpec spec = LatticeSpec::cubic(1, n, Boundary::periodic);
        const PairSum h = delta_hamiltonian_terms(build_lattice(spec));
        const PairSum s2 = delta_spin_squared_terms(n);
        for (int m = 0; m < n; ++m) {
            const StateVector v = magnon_state(spec, {m});
            EXPECT_NEAR(v.norm(), 1.0, 1e-12);
            EXPECT_LE(eigen_residual(h, v), 1e-10);
            EXPECT_NEAR(expectation(h, v), 1.0 - std::cos(2.0 * std::numbers::pi * m / n), 1e-10);
            // One flip orthogonal to the uniform state: total spin n/2 - 1, so DeltaS^2 = n.
            if (m != 0) {
                EXPECT_NEAR(expectation(s2, v), static_cast<double>(n), 1e-10);
                EXPECT_LE(eigen_residual(s2, v), 1e-10);
            }
        }
    }
}

TEST(Magnon, TwoDimensionalLattice) {
    const LatticeSpec spec = LatticeSpec::cubic(2, 4, Boundary::periodic);
    const PairSum h = delta_hamiltonian_terms(build_lattice(spec));
    const StateVector v = magnon_state(spec, {1, 2});
    EXPECT_LE(eigen_residual(h, v), 1e-10);
    EXPECT_NEAR(expectation(h, v), magnon_excitation(spec, {1, 2}), 1e-12);
    EXPECT_NEAR(magnon_excitation(spec, {1, 2}), 1.0 + 2.0, 1e-12);
}

TEST(Magnon, RejectsOpenBoundary) {
    EXPECT_THROW(magnon_state(LatticeSpec::cubic(1, 4, Boundary::open), {1}), std::invalid_argument);
}
