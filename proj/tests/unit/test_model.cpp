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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "transmon/errors.hpp"
#include "transmon/model.hpp"

namespace transmon {
namespace {

ArrayParams two_sites(double t = 0.05) { return ArrayParams(0.25, {10.0, 10.0}, t, {{0, 1}}); }

ArrayParams random_ring(std::mt19937_64& rng, std::size_t L, double t) {
  std::uniform_real_distribution<double> ej(5.0, 20.0);
  std::vector<double> e(L);
  for (double& v : e) v = ej(rng);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < L; ++i) edges.push_back({i, i + 1});
  if (L > 2) edges.push_back({L - 1, 0});
  return ArrayParams(0.25, e, t, edges);
}

ClassicalState random_state(std::mt19937_64& rng, std::size_t L) {
  std::uniform_real_distribution<double> phi(-kPi, kPi);
  std::normal_distribution<double> n(0.0, 3.0);
  ClassicalState s;
  for (std::size_t i = 0; i < L; ++i) {
    s.phi.push_back(phi(rng));
    s.n.push_back(n(rng));
  }
  return s;
}

TEST(Hamiltonian, SingleSiteExtrema) {
  ArrayParams p(0.25, {10.0}, 0.0, {});
  EXPECT_DOUBLE_EQ(hamiltonian(p, {{0.0}, {0.0}}), -10.0);
  EXPECT_DOUBLE_EQ(hamiltonian(p, {{kPi}, {0.0}}), 10.0);
}

TEST(Hamiltonian, TwoCoupledSites) {
  EXPECT_NEAR(hamiltonian(two_sites(), {{0.0, 0.0}, {1.0, 1.0}}), -17.95, 1e-12);
}

TEST(Hamiltonian, LengthMismatchThrows) {
  EXPECT_THROW(hamiltonian(two_sites(), {{0.0}, {0.0}}), DimensionError);
  EXPECT_THROW(hamiltonian(two_sites(), {{0.0, 0.0}, {0.0}}), DimensionError);
}

TEST(Hamiltonian, PeriodicInPhase) {
  std::mt19937_64 rng(3);
  auto p = random_ring(rng, 5, 0.03);
  auto s = random_state(rng, 5);
  const double h0 = hamiltonian(p, s);
  for (std::size_t i = 0; i < 5; ++i) {
    auto shifted = s;
    shifted.phi[i] += 2.0 * kPi;
    EXPECT_NEAR(hamiltonian(p, shifted), h0, 1e-12 * std::abs(h0) + 1e-12);
  }
}

TEST(Hamiltonian, MomentumParityAtZeroCoupling) {
  std::mt19937_64 rng(4);
  auto p = random_ring(rng, 6, 0.0);
  auto s = random_state(rng, 6);
  auto flipped = s;
  for (double& v : flipped.n) v = -v;
  EXPECT_DOUBLE_EQ(hamiltonian(p, flipped), hamiltonian(p, s));
}

TEST(SiteEnergy, Values) {
  ArrayParams p(0.25, {10.0}, 0.0, {});
  EXPECT_DOUBLE_EQ(site_energy(p, {{0.0}, {0.0}}, 0), -10.0);
  EXPECT_NEAR(site_energy(p, {{kPi / 2}, {0.0}}, 0), 0.0, 1e-14);
  EXPECT_THROW(site_energy(p, {{0.0}, {0.0}}, 1), DimensionError);
}

TEST(SiteEnergy, SumsToHamiltonianWhenDecoupled) {
  std::mt19937_64 rng(5);
  auto p = random_ring(rng, 7, 0.0);
  auto s = random_state(rng, 7);
  double sum = 0.0;
  for (std::size_t i = 0; i < 7; ++i) sum += site_energy(p, s, i);
  EXPECT_NEAR(sum, hamiltonian(p, s), 1e-12);
}

TEST(Eom, FixedPoint) {
  auto d = eom(two_sites(), {{0.0, 0.0}, {0.0, 0.0}});
  for (double v : d.dphi) EXPECT_EQ(v, 0.0);
  for (double v : d.dn) EXPECT_EQ(v, 0.0);
}

TEST(Eom, SingleSiteForce) {
  ArrayParams p(0.25, {10.0}, 0.0, {});
  EXPECT_DOUBLE_EQ(eom(p, {{kPi / 2}, {0.0}}).dn[0], -10.0);
}

TEST(Eom, CouplingEntersPhaseVelocity) {
  auto d = eom(two_sites(0.05), {{0.0, 0.0}, {1.0, 0.0}});
  EXPECT_DOUBLE_EQ(d.dphi[0], 2.0);
  EXPECT_DOUBLE_EQ(d.dphi[1], 0.05);
}

TEST(Eom, MatchesFiniteDifferenceGradient) {
  std::mt19937_64 rng(11);
  const double step = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_ring(rng, 6, 0.04);
    auto s = random_state(rng, 6);
    auto d = eom(p, s);
    for (std::size_t i = 0; i < 6; ++i) {
      auto up = s, dn = s;
      up.n[i] += step;
      dn.n[i] -= step;
      const double dh_dn = (hamiltonian(p, up) - hamiltonian(p, dn)) / (2 * step);
      up = s;
      dn = s;
      up.phi[i] += step;
      dn.phi[i] -= step;
      const double dh_dphi = (hamiltonian(p, up) - hamiltonian(p, dn)) / (2 * step);
      EXPECT_NEAR(d.dphi[i], dh_dn, 1e-6 * std::max(1.0, std::abs(dh_dn)));
      EXPECT_NEAR(d.dn[i], -dh_dphi, 1e-6 * std::max(1.0, std::abs(dh_dphi)));
    }
  }
}

TEST(Linearization, SingleSiteAtMinimum) {
  ArrayParams p(0.25, {10.0}, 0.0, {});
  auto m = linearized_eom(p, {{0.0}, {0.0}});
  EXPECT_DOUBLE_EQ(m(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(m(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(m(1, 0), -10.0);
  EXPECT_DOUBLE_EQ(m(1, 1), 0.0);
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  for (int k = 0; k < 2; ++k) {
    EXPECT_NEAR(es.eigenvalues()[k].real(), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(es.eigenvalues()[k].imag()), std::sqrt(8 * 0.25 * 10.0), 1e-12);
  }
}

TEST(Linearization, TracelessAndMatchesFiniteDifferences) {
  std::mt19937_64 rng(12);
  const double step = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_ring(rng, 5, 0.05);
    auto s = random_state(rng, 5);
    auto m = linearized_eom(p, s);
    EXPECT_NEAR(m.trace(), 0.0, 1e-14);
    const auto y = s.to_flat();
    for (std::size_t col = 0; col < y.size(); ++col) {
      auto yu = y, yd = y;
      yu[col] += step;
      yd[col] -= step;
      auto fu = eom(p, ClassicalState::from_flat(yu, false));
      auto fd = eom(p, ClassicalState::from_flat(yd, false));
      for (std::size_t row = 0; row < 5; ++row) {
        const double a = (fu.dphi[row] - fd.dphi[row]) / (2 * step);
        const double b = (fu.dn[row] - fd.dn[row]) / (2 * step);
        EXPECT_NEAR(m(row, col), a, 1e-5 * std::max(1.0, std::abs(a)));
        EXPECT_NEAR(m(row + 5, col), b, 1e-5 * std::max(1.0, std::abs(b)));
      }
    }
  }
}

TEST(ArrayParamsValidation, RejectsBadInput) {
  EXPECT_THROW(ArrayParams(0.0, {10.0}, 0.0, {}), ParameterError);
  EXPECT_THROW(ArrayParams(0.25, {10.0, -1.0}, 0.0, {{0, 1}}), ParameterError);
  EXPECT_THROW(ArrayParams(0.25, {10.0, 10.0}, -0.1, {{0, 1}}), ParameterError);
  EXPECT_THROW(ArrayParams(0.25, {10.0, 10.0}, 0.1, {{0, 0}}), ParameterError);
  EXPECT_THROW(ArrayParams(0.25, {10.0, 10.0}, 0.1, {{0, 1}, {1, 0}}), ParameterError);
  EXPECT_THROW(ArrayParams(0.25, {10.0, 10.0}, 0.1, {{0, 2}}), DimensionError);
}

TEST(Wrap, IntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_angle(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), kPi);
  EXPECT_NEAR(wrap_angle(3 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_NEAR(wrap_angle(-7.0), -7.0 + 2 * kPi, 1e-15);
  for (double x = -50.0; x < 50.0; x += 0.37) {
    const double w = wrap_angle(x);
    EXPECT_GT(w, -kPi);
    EXPECT_LE(w, kPi);
    EXPECT_NEAR(std::remainder(w - x, 2 * kPi), 0.0, 1e-12);
  }
}

TEST(PendulumArray, AgreesWithReferenceEom) {
  std::mt19937_64 rng(21);
  auto p = random_ring(rng, 9, 0.03);
  auto s = random_state(rng, 9);
  PendulumArray sys(p);
  std::vector<double> dy(18);
  sys.rhs(s.to_flat(), dy);
  auto d = eom(p, s);
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_NEAR(dy[i], d.dphi[i], 1e-13);
    EXPECT_NEAR(dy[9 + i], d.dn[i], 1e-13 * std::max(1.0, std::abs(d.dn[i])));
  }
  EXPECT_NEAR(sys.energy(s.to_flat()), hamiltonian(p, s), 1e-12);
}

TEST(PendulumArray, TangentDynamicsIsTheLinearization) {
  std::mt19937_64 rng(22);
  auto p = random_ring(rng, 4, 0.05);
  auto s = random_state(rng, 4);
  PendulumArray sys(p);
  std::vector<double> y = s.to_flat();
  std::normal_distribution<double> g;
  std::vector<double> v(8);
  for (double& x : v) x = g(rng);
  y.insert(y.end(), v.begin(), v.end());
  std::vector<double> dy(16);
  sys.rhs_with_tangents(y, dy, 1);
  Eigen::VectorXd ref = linearized_eom(p, s) * Eigen::Map<Eigen::VectorXd>(v.data(), 8);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(dy[8 + i], ref[i], 1e-12 * std::max(1.0, std::abs(ref[i])));
}

}  // namespace
}  // namespace transmon
