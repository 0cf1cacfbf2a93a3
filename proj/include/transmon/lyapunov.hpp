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

#ifndef TRANSMON_LYAPUNOV_HPP
#define TRANSMON_LYAPUNOV_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "transmon/integrate.hpp"
#include "transmon/model.hpp"

namespace transmon {

struct LyapunovOptions {
  double d0 = 1e-9;          // separation in the (wrapped dphi, dn) Euclidean metric
  double tau = 1.0;          // time between renormalizations
  std::size_t n_steps = 10000;
  double transient = 100.0;  // renormalized but not counted
  std::uint64_t seed = 0;    // direction of the initial perturbation

  void validate() const;
};

struct LyapunovEstimate {
  double lambda_max = 0.0;
  std::vector<double> history;  // running estimate after each renormalization
  std::optional<std::vector<double>> spectrum;  // H2 only, descending
  bool converged = false;
  std::size_t accepted_steps = 0;
};

/// Benettin two-trajectory estimate. Fiducial and perturbed copies are
/// integrated as one system so that they share every step.
LyapunovEstimate max_lyapunov_benettin(const ArrayParams& params, const ClassicalState& state0,
                                       const LyapunovOptions& opts = {},
                                       const IntegratorConfig& config = {});

/// Full spectrum from 2L tangent vectors with QR re-orthonormalization
/// every tau. Requires 2L <= kMaxH2Dimension.
inline constexpr std::size_t kMaxH2Dimension = 128;
LyapunovEstimate lyapunov_spectrum_h2(const ArrayParams& params, const ClassicalState& state0,
                                      const LyapunovOptions& opts = {},
                                      const IntegratorConfig& config = {});

/// True once the last quarter of the history varies by less than 10 %
/// of its mean, or by less than 1e-3 in absolute terms. Needs >= 100 entries.
bool convergence_test(std::span<const double> history);

/// Phase-space distance with angle differences wrapped into (-pi, pi].
double phase_space_distance(const ClassicalState& a, const ClassicalState& b);

/// Two unrenormalized trajectories sampled on a time grid (the divergence
/// picture of two slightly different initial conditions).
struct DivergenceTrace {
  std::vector<double> times;
  std::vector<double> distance;
  std::vector<ClassicalState> first;
  std::vector<ClassicalState> second;
};

DivergenceTrace divergence_trace(const ArrayParams& params, const ClassicalState& a,
                                 const ClassicalState& b, std::span<const double> times,
                                 const IntegratorConfig& config = {});

}  // namespace transmon

#endif  // TRANSMON_LYAPUNOV_HPP
