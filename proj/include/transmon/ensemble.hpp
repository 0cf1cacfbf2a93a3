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

#ifndef TRANSMON_ENSEMBLE_HPP
#define TRANSMON_ENSEMBLE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "transmon/integrate.hpp"
#include "transmon/lattice.hpp"
#include "transmon/lyapunov.hpp"
#include "transmon/quantum.hpp"
#include "transmon/spectrum.hpp"

namespace transmon {

/// Gaussian E_J disorder. The spread defaults to c sqrt(E_C E_J / 2), which
/// gives a qubit-frequency spread of c E_C.
struct DisorderSpec {
  double mean_ej = 10.0;
  double c = 0.5;
  double e_c = 0.25;
  std::uint64_t master_seed = 0;
  std::optional<double> spread_override;  // explicit delta E_J in GHz

  void validate() const;
  double spread() const;
};

/// Seed of realization `index`, derived from the master seed alone, so it is
/// shared by every point of a coupling sweep.
std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index);

inline constexpr int kMaxRejections = 100;

/// Independent Normal(center_i, spread) draws; non-positive draws are redrawn.
std::vector<double> sample_around(std::span<const double> centers, double spread,
                                  std::uint64_t master_seed, std::uint64_t index);

std::vector<double> sample_ejs(const DisorderSpec& spec, std::size_t L, std::uint64_t index);

struct Histogram {
  std::vector<double> edges;  // bins + 1 entries
  std::vector<std::size_t> counts;
};

struct EnsembleStats {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
  double median = 0.0;
  double max = 0.0;
  Histogram histogram;
};

inline constexpr std::size_t kHistogramBins = 50;

/// Uniform bins over the observed range.
EnsembleStats summarize(std::span<const double> values, std::size_t bins = kHistogramBins);

struct RealizationResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double t_coupling = 0.0;
  double ej_mean = 0.0;
  double lambda = 0.0;
  std::optional<double> ipr;
  bool converged = false;
  std::string error;  // empty on success

  bool ok() const noexcept { return error.empty(); }
};

/// All realizations at one coupling value, in realization order.
struct EnsembleResult {
  double t_coupling = 0.0;
  std::vector<RealizationResult> rows;
  EnsembleStats lambda;
  std::optional<EnsembleStats> ipr;
  std::size_t failures = 0;
};

struct EnsembleConfig {
  Lattice lattice = chain(10);
  /// Site centers; when base_ej is empty every site is centered on mean_ej.
  PatternSpec pattern;
  InitSpec init;
  PhaseSignSpec signs;
  bool mean_spectrum = false;
  std::vector<double> t_values;
  DisorderSpec disorder;
  std::size_t realizations = 100;
  LyapunovOptions lyapunov;
  IntegratorConfig integrator;
  bool compute_ipr = false;
  OnsiteModel onsite = OnsiteModel::asymptotic;
  /// Multiply every energy by 2 pi before integrating.
  bool angular_convention = false;
  double max_failure_fraction = 0.01;
  bool enforce_failure_budget = true;
  std::size_t workers = 0;  // 0: all hardware threads

  void validate() const;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Inputs of one realization: the disorder draw, the physical parameters,
/// the parameters handed to the integrator (scaled by 2 pi under the angular
/// convention) and the initial state.
struct PreparedRealization {
  ArrayParams params;
  ArrayParams integration_params;
  ClassicalState state;
  std::uint64_t seed = 0;
  double ej_mean = 0.0;
};

PreparedRealization prepare_realization(const EnsembleConfig& config, double t_coupling,
                                        std::size_t index);

/// One realization: disorder draw, spectra, initial state, Lyapunov estimate
/// and optionally the block IPR.
RealizationResult run_realization(const EnsembleConfig& config, double t_coupling,
                                  std::size_t index);

/// Parallel over (T, realization); results do not depend on the worker count.
std::vector<EnsembleResult> run_ensemble(const EnsembleConfig& config,
                                         const ProgressFn& progress = {});

void enforce_failure_budget(std::span<const EnsembleResult> results, double max_fraction);

inline constexpr int kResultsCsvVersion = 1;
/// One row per realization, sweep order; numbers printed with %.17g.
/// Several disorder settings may share a file by passing header = false
/// after the first block.
void write_results_csv(std::ostream& out, std::span<const EnsembleResult> results,
                       const DisorderSpec& disorder, bool header = true);

struct CollapseCurve {
  double e_j = 0.0;
  std::vector<double> t;
  std::vector<double> lambda;
};

struct CollapseOptions {
  std::size_t grid_points = 200;
  /// Restrict the comparison to u below the first curve peak.
  bool rising_flank_only = false;
};

struct CollapseResult {
  double deviation = 0.0;  // max pairwise |difference| / peak lambda
  double peak = 0.0;
  double u_min = 0.0;
  double u_max = 0.0;
};

/// Compares curves after the substitution u = T sqrt(E_J).
CollapseResult collapse_check(std::span<const CollapseCurve> curves,
                              const CollapseOptions& options = {});

struct CorrelationResult {
  double spearman_rho = 0.0;
  double bound_slope = 0.0;      // upper envelope IPR ~ a + b lambda
  double bound_intercept = 0.0;
};

inline constexpr std::size_t kMinCorrelationPairs = 50;
inline constexpr std::size_t kEnvelopeBins = 10;

double spearman(std::span<const double> x, std::span<const double> y);
CorrelationResult correlation_lambda_ipr(std::span<const double> lambda,
                                         std::span<const double> ipr);

}  // namespace transmon

#endif  // TRANSMON_ENSEMBLE_HPP
