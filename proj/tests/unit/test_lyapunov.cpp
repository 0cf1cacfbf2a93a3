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
#include <vector>

#include <gtest/gtest.h>

#include "transmon/errors.hpp"
#include "transmon/lyapunov.hpp"
#include "transmon/spectrum.hpp"

namespace transmon {
namespace {

ArrayParams disordered_chain(std::size_t L, double t, double spread, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(10.0, spread);
  std::vector<double> ej(L);
  for (double& v : ej) v = g(rng);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < L; ++i) edges.push_back({i, i + 1});
  return ArrayParams(0.25, ej, t, edges);
}

ClassicalState alternating_init(const ArrayParams& p) {
  std::vector<int> pattern(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) pattern[i] = i % 2 == 0 ? 1 : 0;
  return init_state(p, pattern, site_spectra(p));
}

LyapunovOptions short_run() {
  LyapunovOptions o;
  o.n_steps = 3000;
  return o;
}

TEST(LyapunovOptions, Validation) {
  LyapunovOptions o;
  EXPECT_NO_THROW(o.validate());
  o.d0 = 1e-3;
  EXPECT_THROW(o.validate(), ParameterError);
  o = {};
  o.tau = 0.0;
  EXPECT_THROW(o.validate(), ParameterError);
  o = {};
  o.n_steps = 99;
  EXPECT_THROW(o.validate(), ParameterError);
  o = {};
  o.transient = -1.0;
  EXPECT_THROW(o.validate(), ParameterError);
}

TEST(ConvergenceTest, ConstantHistory) {
  std::vector<double> h(400, 0.03);
  EXPECT_TRUE(convergence_test(h));
}

TEST(ConvergenceTest, DecayingHistoryReachesPlateau) {
  std::vector<double> h;
  for (int k = 1; k <= 10000; ++k) h.push_back(0.03 + 10.0 / k);
  EXPECT_TRUE(convergence_test(h));
  h.resize(120);
  EXPECT_FALSE(convergence_test(h));
}

TEST(ConvergenceTest, ShortHistoryIsNotConverged) {
  std::vector<double> h(99, 0.03);
  EXPECT_FALSE(convergence_test(h));
  EXPECT_THROW(convergence_test(std::vector<double>{}), ParameterError);
}

TEST(ConvergenceTest, NearZeroUsesAbsoluteCriterion) {
  std::vector<double> h;
  for (int k = 1; k <= 1000; ++k) h.push_back(1e-4 * (k % 3));
  EXPECT_TRUE(convergence_test(h));
}

TEST(Benettin, UncoupledChainIsIntegrable) {
  const ArrayParams p = disordered_chain(6, 0.0, 0.3, 3);
  const auto est = max_lyapunov_benettin(p, alternating_init(p));
  EXPECT_EQ(est.history.size(), 10000u);
  EXPECT_LT(est.lambda_max, 1e-3);
  EXPECT_GT(est.lambda_max, -5e-3);
}

TEST(Benettin, ChaoticTenSiteChain) {
  const ArrayParams p = disordered_chain(10, 0.01, 0.1, 1);
  const auto est = max_lyapunov_benettin(p, alternating_init(p));
  EXPECT_GT(est.lambda_max, 0.015);
  EXPECT_LT(est.lambda_max, 0.045);
  EXPECT_TRUE(est.converged);
}

TEST(Benettin, StrongDisorderLocalizes) {
  const ArrayParams p = disordered_chain(10, 0.005, 0.5, 2);
  const auto est = max_lyapunov_benettin(p, alternating_init(p));
  EXPECT_LT(est.lambda_max, 5e-3);
}

TEST(Benettin, BitwiseReproducible) {
  const ArrayParams p = disordered_chain(4, 0.05, 0.1, 1);
  const ClassicalState s = alternating_init(p);
  const auto a = max_lyapunov_benettin(p, s, short_run());
  const auto b = max_lyapunov_benettin(p, s, short_run());
  EXPECT_EQ(a.history, b.history);
  LyapunovOptions other = short_run();
  other.seed = 99;
  EXPECT_NE(max_lyapunov_benettin(p, s, other).history, a.history);
}

TEST(Benettin, HalvingSeparationKeepsEstimate) {
  const ArrayParams p = disordered_chain(4, 0.05, 0.1, 1);
  const ClassicalState s = alternating_init(p);
  LyapunovOptions o;
  const double a = max_lyapunov_benettin(p, s, o).lambda_max;
  o.d0 *= 0.5;
  const double b = max_lyapunov_benettin(p, s, o).lambda_max;
  EXPECT_GT(a, 0.01);
  EXPECT_LT(std::abs(a - b), 0.1 * a);
}

TEST(H2, SpectrumPairsAndMatchesBenettin) {
  for (std::uint64_t seed : {1u, 3u}) {
    const ArrayParams p = disordered_chain(4, 0.05, 0.1, seed);
    const ClassicalState s = alternating_init(p);
    const auto h2 = lyapunov_spectrum_h2(p, s);
    ASSERT_TRUE(h2.spectrum.has_value());
    const auto& sp = *h2.spectrum;
    ASSERT_EQ(sp.size(), 8u);
    for (std::size_t i = 1; i < sp.size(); ++i) EXPECT_GE(sp[i - 1], sp[i]);
    for (std::size_t i = 0; i < sp.size(); ++i)
      EXPECT_LT(std::abs(sp[i] + sp[sp.size() - 1 - i]), 1e-3);
    EXPECT_DOUBLE_EQ(h2.lambda_max, sp.front());
    const double ben = max_lyapunov_benettin(p, s).lambda_max;
    EXPECT_LT(std::abs(ben - h2.lambda_max), std::max(0.2 * std::abs(ben), 5e-3));
  }
}

TEST(H2, SinglePendulumHasZeroExponents) {
  const ArrayParams p(0.25, {12.5}, 0.0, {});
  const ClassicalState s{{1.2}, {0.0}};
  const auto h2 = lyapunov_spectrum_h2(p, s);
  for (double v : *h2.spectrum) EXPECT_LT(std::abs(v), 1e-3);
}

TEST(H2, RejectsLargeArrays) {
  const ArrayParams p = disordered_chain(65, 0.01, 0.1, 1);
  const ClassicalState s{std::vector<double>(65, 0.1), std::vector<double>(65, 0.0)};
  EXPECT_THROW(lyapunov_spectrum_h2(p, s), CapacityError);
}

TEST(Divergence, TraceStartsAtInitialSeparation) {
  const ArrayParams p = disordered_chain(10, 0.01, 0.1, 1);
  const ClassicalState a = alternating_init(p);
  ClassicalState b = a;
  b.phi[0] *= 1.001;
  std::vector<double> times;
  for (int k = 0; k <= 200; ++k) times.push_back(k * 5.0);
  const auto trace = divergence_trace(p, a, b, times);
  ASSERT_EQ(trace.distance.size(), times.size());
  EXPECT_NEAR(trace.distance.front(), 0.001 * a.phi[0], 1e-15);
  EXPECT_GT(trace.distance.back(), 100.0 * trace.distance.front());
  // short horizon only: the joint step sequence differs from a lone run
  const auto single = evolve(p, a, 0.0, 50.0);
  const auto end = evaluate(single, 50.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_LT(std::abs(wrap_angle(end.phi[i] - trace.first[10].phi[i])), 1e-5);
    EXPECT_NEAR(end.n[i], trace.first[10].n[i], 1e-5);
  }
}

TEST(Divergence, RejectsBadGrid) {
  const ArrayParams p = disordered_chain(2, 0.01, 0.1, 1);
  const ClassicalState s = alternating_init(p);
  EXPECT_THROW(divergence_trace(p, s, s, std::vector<double>{}), ParameterError);
  EXPECT_THROW(divergence_trace(p, s, s, std::vector<double>{1.0, 1.0}), ParameterError);
}

}  // namespace
}  // namespace transmon
