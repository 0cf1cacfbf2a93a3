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
#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "transmon/ensemble.hpp"
#include "transmon/errors.hpp"

namespace transmon {
namespace {

EnsembleConfig small_config() {
  EnsembleConfig cfg;
  cfg.lattice = chain(4);
  cfg.t_values = {0.0, 0.02};
  cfg.realizations = 6;
  cfg.lyapunov.n_steps = 200;
  cfg.lyapunov.transient = 10.0;
  cfg.disorder.master_seed = 42;
  return cfg;
}

TEST(Disorder, DefaultSpread) {
  DisorderSpec d;
  EXPECT_NEAR(d.spread(), 0.5 * std::sqrt(0.25 * 10.0 / 2.0), 1e-15);
  EXPECT_NEAR(d.spread(), 0.559017, 1e-6);
  d.spread_override = 0.1;
  EXPECT_DOUBLE_EQ(d.spread(), 0.1);
  d.c = -1.0;
  EXPECT_THROW(d.validate(), ParameterError);
}

TEST(Disorder, ZeroSpreadIsConstant) {
  DisorderSpec d;
  d.c = 0.0;
  for (std::uint64_t k = 0; k < 5; ++k)
    for (double v : sample_ejs(d, 8, k)) EXPECT_EQ(v, 10.0);
}

TEST(Disorder, SampleMomentsMatchGaussian) {
  DisorderSpec d;
  d.master_seed = 7;
  std::vector<double> freq;
  for (std::uint64_t k = 0; k < 10000; ++k)
    for (double ej : sample_ejs(d, 10, k)) freq.push_back(std::sqrt(8.0 * d.e_c * ej) - d.e_c);
  const double n = static_cast<double>(freq.size());
  const double mean = std::accumulate(freq.begin(), freq.end(), 0.0) / n;
  double ss = 0.0;
  for (double f : freq) ss += (f - mean) * (f - mean);
  // frequency spread c E_C to first order in the disorder
  EXPECT_NEAR(std::sqrt(ss / (n - 1.0)), 0.125, 0.05 * 0.125);
}

TEST(Disorder, SeedsAreStableAndDistinct) {
  EXPECT_EQ(realization_seed(1, 5), realization_seed(1, 5));
  EXPECT_NE(realization_seed(1, 5), realization_seed(1, 6));
  EXPECT_NE(realization_seed(1, 5), realization_seed(2, 5));
  DisorderSpec d;
  EXPECT_EQ(sample_ejs(d, 6, 3), sample_ejs(d, 6, 3));
  EXPECT_NE(sample_ejs(d, 6, 3), sample_ejs(d, 6, 4));
}

TEST(Disorder, RejectsHopelessSpread) {
  const std::vector<double> centers{-50.0};
  EXPECT_THROW(sample_around(centers, 1.0, 0, 0), ParameterError);
}

TEST(Summary, Statistics) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0, 10.0};
  const EnsembleStats s = summarize(v, 3);
  EXPECT_EQ(s.count, 5u);
  EXPECT_DOUBLE_EQ(s.mean, 4.0);
  EXPECT_DOUBLE_EQ(s.median, 3.0);
  EXPECT_DOUBLE_EQ(s.max, 10.0);
  EXPECT_NEAR(s.std, std::sqrt(50.0 / 4.0), 1e-12);
  ASSERT_EQ(s.histogram.edges.size(), 4u);
  EXPECT_DOUBLE_EQ(s.histogram.edges.front(), 1.0);
  EXPECT_DOUBLE_EQ(s.histogram.edges.back(), 10.0);
  EXPECT_EQ(s.histogram.counts, (std::vector<std::size_t>{3, 1, 1}));
  EXPECT_EQ(summarize(std::vector<double>{2.0, 2.0}).histogram.counts[0], 2u);
  EXPECT_EQ(summarize(std::vector<double>{}).count, 0u);
}

TEST(Ensemble, IndependentOfWorkerCount) {
  EnsembleConfig cfg = small_config();
  cfg.workers = 1;
  const auto serial = run_ensemble(cfg);
  cfg.workers = 4;
  const auto parallel = run_ensemble(cfg);
  ASSERT_EQ(serial.size(), 2u);
  for (std::size_t t = 0; t < serial.size(); ++t) {
    ASSERT_EQ(serial[t].rows.size(), 6u);
    for (std::size_t r = 0; r < 6; ++r) {
      EXPECT_EQ(serial[t].rows[r].lambda, parallel[t].rows[r].lambda);
      EXPECT_EQ(serial[t].rows[r].seed, parallel[t].rows[r].seed);
    }
  }
}

TEST(Ensemble, SharesDisorderAcrossCouplings) {
  const auto res = run_ensemble(small_config());
  for (std::size_t r = 0; r < 6; ++r)
    EXPECT_EQ(res[0].rows[r].ej_mean, res[1].rows[r].ej_mean);
}

TEST(Ensemble, SingleRealizationMatchesDirectRun) {
  EnsembleConfig cfg = small_config();
  cfg.realizations = 1;
  cfg.t_values = {0.02};
  const auto res = run_ensemble(cfg);
  const RealizationResult direct = run_realization(cfg, 0.02, 0);
  EXPECT_EQ(res[0].rows[0].lambda, direct.lambda);
  EXPECT_EQ(res[0].lambda.mean, direct.lambda);

  const Lattice lat = chain(4);
  const ArrayParams p = lat.params(0.25, sample_ejs(cfg.disorder, 4, 0), 0.02);
  const auto spectra = site_spectra(p);
  LyapunovOptions opts = cfg.lyapunov;
  opts.seed = realization_seed(cfg.disorder.master_seed, 0);
  const auto est = max_lyapunov_benettin(
      p, init_state(p, initial_pattern(lat, cfg.init), spectra), opts, cfg.integrator);
  EXPECT_EQ(est.lambda_max, direct.lambda);
}

TEST(Ensemble, FailureBudget) {
  EnsembleConfig cfg = small_config();
  cfg.pattern.kind = PatternKind::AB;  // no base E_J for B sites, so every realization fails
  cfg.pattern.base_ej = {{Sublattice::A, 10.0}};
  EXPECT_THROW(run_ensemble(cfg), EnsembleError);
  cfg.enforce_failure_budget = false;
  const auto res = run_ensemble(cfg);
  EXPECT_EQ(res[0].failures, 6u);
  EXPECT_EQ(res[0].lambda.count, 0u);
  cfg.max_failure_fraction = 1.0;
  EXPECT_NO_THROW(enforce_failure_budget(res, 1.0));
}

TEST(Ensemble, CsvLayout) {
  EnsembleConfig cfg = small_config();
  const auto res = run_ensemble(cfg);
  std::ostringstream os;
  write_results_csv(os, res, cfg.disorder);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line,
            "realization,seed,T_GHz,ej_nominal_GHz,ej_mean_GHz,c,ej_spread_GHz,lambda_per_ns,"
            "ipr_mean,converged,status");
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 10);
    EXPECT_EQ(line.substr(line.size() - 2), "ok");
  }
  EXPECT_EQ(rows, 12u);
}

TEST(Ensemble, RejectsBadConfig) {
  EnsembleConfig cfg = small_config();
  cfg.t_values.clear();
  EXPECT_THROW(run_ensemble(cfg), ParameterError);
  cfg = small_config();
  cfg.realizations = 0;
  EXPECT_THROW(run_ensemble(cfg), ParameterError);
}

CollapseCurve curve(double ej, double scale, double shift) {
  CollapseCurve c;
  c.e_j = ej;
  for (int k = 0; k <= 40; ++k) {
    const double u = 0.005 * k;
    c.t.push_back(u / std::sqrt(ej));
    c.lambda.push_back(scale * std::exp(-(u - 0.1) * (u - 0.1) / 0.002) + shift);
  }
  return c;
}

TEST(Collapse, IdenticalShapesCollapse) {
  const std::vector<CollapseCurve> curves{curve(5.0, 1.0, 0.0), curve(10.0, 1.0, 0.0),
                                          curve(20.0, 1.0, 0.0)};
  const CollapseResult r = collapse_check(curves);
  EXPECT_LT(r.deviation, 1e-12);
  EXPECT_NEAR(r.peak, 1.0, 1e-12);
}

TEST(Collapse, OffsetIsMeasured) {
  const std::vector<CollapseCurve> curves{curve(5.0, 1.0, 0.0), curve(10.0, 1.0, 0.1)};
  EXPECT_NEAR(collapse_check(curves).deviation, 0.1 / 1.1, 1e-12);
  CollapseOptions flank;
  flank.rising_flank_only = true;
  EXPECT_NEAR(collapse_check(curves, flank).u_max, 0.1, 1e-12);
}

TEST(Collapse, RawTMisaligns) {
  // same curves plotted against T instead of u do not coincide
  std::vector<CollapseCurve> curves{curve(5.0, 1.0, 0.0), curve(20.0, 1.0, 0.0)};
  for (auto& c : curves) c.e_j = 1.0;
  EXPECT_GT(collapse_check(curves).deviation, 0.5);
  EXPECT_THROW(collapse_check(std::vector<CollapseCurve>{curve(5.0, 1.0, 0.0)}), ParameterError);
}

TEST(Correlation, Spearman) {
  std::vector<double> x, y;
  for (int k = 0; k < 60; ++k) {
    x.push_back(k);
    y.push_back(std::exp(-0.1 * k));
  }
  EXPECT_NEAR(spearman(x, y), -1.0, 1e-12);
  const CorrelationResult c = correlation_lambda_ipr(x, y);
  EXPECT_NEAR(c.spearman_rho, -1.0, 1e-12);
  EXPECT_LT(c.bound_slope, 0.0);
  // ties share the average rank
  EXPECT_NEAR(spearman(std::vector<double>{1, 2, 2, 3}, std::vector<double>{1, 2, 2, 3}), 1.0,
              1e-12);
  EXPECT_THROW(spearman(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
               DegenerateError);
  EXPECT_THROW(correlation_lambda_ipr(std::vector<double>(10, 1.0), std::vector<double>(10, 1.0)),
               ParameterError);
}

TEST(Correlation, IndependentSamplesNearZero) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(2000), y(2000);
  for (auto& v : x) v = u(rng);
  for (auto& v : y) v = u(rng);
  // null standard error is 1/sqrt(n-1), about 0.022
  EXPECT_LT(std::abs(spearman(x, y)), 0.1);
}

}  // namespace
}  // namespace transmon
