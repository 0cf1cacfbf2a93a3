// Copyright 2026 The Transmon Chaos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "bose_hubbard_oracle.hpp"
#include "transmon/errors.hpp"
#include "transmon/lattice.hpp"
#include "transmon/quantum.hpp"

namespace transmon {
namespace {

BoseHubbardParams random_bh(std::size_t L, const std::vector<Edge>& edges, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> nu(4.0, 5.0), hop(0.01, 0.2), ec(0.2, 0.35);
  BoseHubbardParams bh;
  for (std::size_t i = 0; i < L; ++i) bh.onsite.push_back(nu(rng));
  bh.anharmonicity = ec(rng);
  bh.edges = edges;
  for (std::size_t e = 0; e < edges.size(); ++e) bh.hop.push_back(hop(rng));
  return bh;
}

TEST(FockBlock, Dimensions) {
  EXPECT_EQ(FockBlock(2, 1, 1).dim(), 2u);
  EXPECT_EQ(FockBlock(10, 5, 5).dim(), 2002u);
  EXPECT_EQ(FockBlock(4, 2, 1).dim(), 6u);
  EXPECT_EQ(FockBlock(3, 0, 1).dim(), 1u);
  EXPECT_EQ(FockBlock::count(12, 6, 6), 12376u);
  EXPECT_THROW(FockBlock(16, 8, 8), CapacityError);
  EXPECT_THROW(FockBlock(2, 3, 1), ParameterError);
  EXPECT_THROW(FockBlock(0, 1, 1), ParameterError);
}

TEST(FockBlock, LexicographicOrderAndIndex) {
  const FockBlock b(4, 3, 2);
  for (std::size_t k = 0; k < b.dim(); ++k) {
    const auto s = b.state(k);
    EXPECT_EQ(std::accumulate(s.begin(), s.end(), 0), 3);
    EXPECT_LE(*std::max_element(s.begin(), s.end()), 2);
    EXPECT_EQ(b.index(s), k);
    if (k > 0) {
      const auto p = b.state(k - 1);
      EXPECT_TRUE(std::lexicographical_compare(p.begin(), p.end(), s.begin(), s.end()));
    }
  }
  EXPECT_THROW(b.index(std::vector<int>{3, 0, 0, 0}), DomainError);
  EXPECT_THROW(b.index(std::vector<int>{1, 0, 0, 0}), DomainError);
  EXPECT_THROW(b.index(std::vector<int>{1, 1, 1}), DimensionError);
}

TEST(Hopping, GoldenAndSymmetry) {
  const ArrayParams p(0.25, {12.5, 12.5, 12.5}, 0.005, {{0, 1}, {1, 2}});
  for (double t : hopping_amplitudes(p)) EXPECT_NEAR(t, 0.00625, 1e-15);
  EXPECT_EQ(hopping_amplitudes(p.with_coupling(0.0)), std::vector<double>(2, 0.0));
  const ArrayParams a(0.25, {10.0, 14.0}, 0.01, {{0, 1}});
  const ArrayParams b(0.25, {10.0, 14.0}, 0.01, {{1, 0}});
  EXPECT_DOUBLE_EQ(hopping_amplitudes(a)[0], hopping_amplitudes(b)[0]);
}

TEST(Hamiltonian, TwoSiteSingleExcitation) {
  const FockBlock b(2, 1, 1);
  BoseHubbardParams bh{{4.5, 4.8}, 0.25, {{0, 1}}, {0.03}};
  const Eigen::MatrixXd h(build_hamiltonian(b, bh));
  // basis order: (0,1), (1,0)
  EXPECT_DOUBLE_EQ(h(0, 0), 4.8);
  EXPECT_DOUBLE_EQ(h(1, 1), 4.5);
  EXPECT_DOUBLE_EQ(h(0, 1), 0.03);
  EXPECT_DOUBLE_EQ(h(1, 0), 0.03);
}

TEST(Hamiltonian, HermitianAndDiagonalWithoutHopping) {
  std::mt19937_64 rng(5);
  const Lattice g = grid(2, 3);
  const std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  BoseHubbardParams bh = random_bh(6, edges, rng);
  const FockBlock b(6, 3, 3);
  const Eigen::MatrixXd h(build_hamiltonian(b, bh));
  EXPECT_EQ((h - h.transpose()).cwiseAbs().maxCoeff(), 0.0);
  std::fill(bh.hop.begin(), bh.hop.end(), 0.0);
  const Eigen::MatrixXd d(build_hamiltonian(b, bh));
  EXPECT_EQ((d - Eigen::MatrixXd(d.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0);
  const auto r = eigen_ipr(b, build_hamiltonian(b, bh));
  for (double v : r.values) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(EigenIpr, MatchesBruteForceOracle) {
  std::mt19937_64 rng(11);
  const std::vector<Edge> edges{{0, 1}, {1, 2}};
  for (int trial = 0; trial < 5; ++trial) {
    const BoseHubbardParams bh = random_bh(3, edges, rng);
    const FockBlock b(3, 2, 2);
    const Eigensystem eig = diagonalize(build_hamiltonian(b, bh));
    const IprResult r = eigen_ipr(eig);
    const auto ref = oracle::eigen_ipr(3, 2, 2, bh.onsite, bh.anharmonicity,
                                       {{0, 1}, {1, 2}}, bh.hop);
    ASSERT_EQ(ref.size(), b.dim());
    for (std::size_t j = 0; j < ref.size(); ++j) {
      EXPECT_NEAR(eig.values[static_cast<Eigen::Index>(j)], ref[j].first, 1e-10);
      EXPECT_NEAR(r.values[j], ref[j].second, 1e-10);
    }
  }
}

TEST(EigenIpr, BoundsAndOrthonormality) {
  std::mt19937_64 rng(2);
  const Lattice c = chain(6);
  const BoseHubbardParams bh = random_bh(6, {c.edges().begin(), c.edges().end()}, rng);
  const FockBlock b(6, 3, 3);
  const Eigensystem eig = diagonalize(build_hamiltonian(b, bh));
  const IprResult r = eigen_ipr(eig);
  for (double v : r.values) {
    EXPECT_GE(v, 1.0 / static_cast<double>(b.dim()) - 1e-15);
    EXPECT_LE(v, 1.0 + 1e-12);
  }
  const Eigen::MatrixXd gram = eig.vectors.transpose() * eig.vectors;
  EXPECT_LT((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff(),
            1e-10);
  EXPECT_THROW(diagonalize(build_hamiltonian(b, bh), 10), CapacityError);
}

TEST(EigenIpr, HardCoreTwoSiteAnalytic) {
  const double nu1 = 4.6, nu2 = 4.9, t = 0.07;
  BoseHubbardParams bh{{nu1, nu2}, 0.3, {{0, 1}}, {t}};
  const FockBlock b(2, 1, 1);
  const Eigensystem eig = diagonalize(build_hamiltonian(b, bh));
  const double delta = nu2 - nu1;
  const double root = std::sqrt(0.25 * delta * delta + t * t);
  EXPECT_NEAR(eig.values[0], 0.5 * (nu1 + nu2) - root, 1e-12);
  EXPECT_NEAR(eig.values[1], 0.5 * (nu1 + nu2) + root, 1e-12);
  const double theta = 0.5 * std::atan2(2.0 * t, delta);
  const double expected = std::pow(std::cos(theta), 4) + std::pow(std::sin(theta), 4);
  for (double v : eigen_ipr(eig).values) EXPECT_NEAR(v, expected, 1e-12);
}

TEST(EigenIpr, InvariantUnderSiteRelabeling) {
  std::mt19937_64 rng(8);
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}};
  const BoseHubbardParams bh = random_bh(4, edges, rng);
  BoseHubbardParams rev = bh;
  std::reverse(rev.onsite.begin(), rev.onsite.end());
  for (Edge& e : rev.edges) e = {3 - e.a, 3 - e.b};
  const FockBlock b(4, 2, 2);
  auto a = eigen_ipr(b, build_hamiltonian(b, bh)).values;
  auto c = eigen_ipr(b, build_hamiltonian(b, rev)).values;
  std::sort(a.begin(), a.end());
  std::sort(c.begin(), c.end());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], c[i], 1e-10);
}

TEST(EvolveIpr, StartsLocalizedAndStaysNormalized) {
  std::mt19937_64 rng(3);
  const Lattice c = chain(5);
  const BoseHubbardParams bh = random_bh(5, {c.edges().begin(), c.edges().end()}, rng);
  const FockBlock b(5, 2, 2);
  const Eigensystem eig = diagonalize(build_hamiltonian(b, bh));
  const std::size_t k0 = b.index(std::vector<int>{1, 0, 1, 0, 0});
  const std::vector<double> times{0.0, 1.0, 10.0, 100.0};
  const auto series = evolve_ipr(eig, k0, times);
  EXPECT_NEAR(series[0], 1.0, 1e-12);
  EXPECT_LT(series.back(), 1.0);
  for (double t : times) EXPECT_NEAR(evolve_state(eig, k0, t).norm(), 1.0, 1e-10);
  EXPECT_THROW(evolve_state(eig, b.dim(), 1.0), DomainError);
}

TEST(Multiplets, FortyDimensionalGroup) {
  const Lattice g = grid(3, 3);
  const FockBlock b(9, 5, 1);
  const auto p = multiplet_partition(b, g.sublattice());
  const auto it = std::find(p.names.begin(), p.names.end(), "{A11B111}");
  ASSERT_NE(it, p.names.end());
  EXPECT_EQ(p.groups[static_cast<std::size_t>(it - p.names.begin())].size(), 40u);
  std::size_t total = 0;
  for (const auto& grp : p.groups) total += grp.size();
  EXPECT_EQ(total, b.dim());
  const FockBlock empty(9, 0, 1);
  EXPECT_EQ(multiplet_partition(empty, g.sublattice()).groups.size(), 1u);
}

TEST(Multiplets, IprAssignment) {
  const Lattice g = grid(2, 2);
  std::mt19937_64 rng(4);
  BoseHubbardParams bh = random_bh(4, {g.edges().begin(), g.edges().end()}, rng);
  const FockBlock b(4, 2, 2);
  const auto part = multiplet_partition(b, g.sublattice());
  const Eigensystem eig = diagonalize(build_hamiltonian(b, bh));
  const auto res = multiplet_ipr(eig, part);
  std::size_t assigned = 0;
  for (const auto& m : res) assigned += m.assigned;
  EXPECT_EQ(assigned, b.dim());
  // recompute the argmax rule independently
  for (Eigen::Index j = 0; j < eig.vectors.cols(); ++j) {
    std::vector<double> w(part.groups.size(), 0.0);
    for (std::size_t gi = 0; gi < part.groups.size(); ++gi)
      for (std::size_t k : part.groups[gi])
        w[gi] += std::pow(eig.vectors(static_cast<Eigen::Index>(k), j), 2);
    const double best = *std::max_element(w.begin(), w.end());
    for (double x : w) EXPECT_LE(x, best);
  }
  std::fill(bh.hop.begin(), bh.hop.end(), 0.0);
  const auto free = multiplet_ipr(diagonalize(build_hamiltonian(b, bh)), part);
  for (const auto& m : free) {
    EXPECT_EQ(m.assigned, m.dim);
    ASSERT_TRUE(m.mean_ipr.has_value());
    EXPECT_DOUBLE_EQ(*m.mean_ipr, 1.0);
  }
}

TEST(MeanBlockIpr, DecreasesWithCoupling) {
  const ArrayParams weak(0.25, {12.0, 12.4, 11.8, 12.6, 12.1, 12.3}, 0.001,
                         {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  EXPECT_GT(mean_block_ipr(weak), mean_block_ipr(weak.with_coupling(0.05)));
  EXPECT_GT(mean_block_ipr(weak), 0.9);
}

}  // namespace
}  // namespace transmon
