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

#include "transmon/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>

#include <Eigen/QR>

#include "transmon/errors.hpp"

namespace transmon {

void LyapunovOptions::validate() const {
  if (!(d0 >= 1e-12 && d0 <= 1e-6)) throw ParameterError("d0 must lie in [1e-12, 1e-6]");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError("tau must be positive");
  if (n_steps < 100) throw ParameterError("n_steps must be at least 100");
  if (!(transient >= 0.0) || !std::isfinite(transient))
    throw ParameterError("transient must be >= 0");
}

namespace {

// Separation of the second copy from the first inside a joint state vector
// (phi_a, n_a, phi_b, n_b). Angle differences are wrapped.
double joint_separation(std::span<const double> y, std::size_t L, std::span<double> delta) {
  const std::size_t dim = 2 * L;
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    double d = y[dim + i] - y[i];
    if (i < L) d = wrap_angle(d);
    delta[i] = d;
    acc += d * d;
  }
  return std::sqrt(acc);
}

std::vector<double> random_direction(std::size_t dim, std::uint64_t seed) {
  std::seed_seq seq{seed, std::uint64_t{0x6c79617075}};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> g;
  std::vector<double> v(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : v) {
      x = g(rng);
      norm += x * x;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

// Renormalization times: transient first (not counted), then n_steps
// intervals of length tau.
struct Schedule {
  std::vector<double> times;
  std::size_t first_counted = 0;
};

Schedule make_schedule(const LyapunovOptions& opts) {
  Schedule s;
  const auto n_transient = static_cast<std::size_t>(std::ceil(opts.transient / opts.tau - 1e-12));
  for (std::size_t k = 1; k <= n_transient; ++k)
    s.times.push_back(std::min(static_cast<double>(k) * opts.tau, opts.transient));
  s.first_counted = s.times.size();
  for (std::size_t k = 1; k <= opts.n_steps; ++k)
    s.times.push_back(opts.transient + static_cast<double>(k) * opts.tau);
  return s;
}

}  // namespace

double phase_space_distance(const ClassicalState& a, const ClassicalState& b) {
  if (a.size() != b.size() || a.n.size() != b.n.size())
    throw DimensionError("states of different size");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dp = wrap_angle(b.phi[i] - a.phi[i]);
    const double dn = b.n[i] - a.n[i];
    acc += dp * dp + dn * dn;
  }
  return std::sqrt(acc);
}

LyapunovEstimate max_lyapunov_benettin(const ArrayParams& params, const ClassicalState& state0,
                                       const LyapunovOptions& opts,
                                       const IntegratorConfig& config) {
  check_state(params, state0);
  opts.validate();
  const std::size_t L = params.size();
  const std::size_t dim = 2 * L;
  PendulumArray system(params);
  Stepper stepper(
      [&system, dim](std::span<const double> y, std::span<double> dy) {
        system.rhs(y.first(dim), dy.first(dim));
        system.rhs(y.subspan(dim), dy.subspan(dim));
      },
      2 * dim, config);

  std::vector<double> joint = state0.to_flat();
  joint.resize(2 * dim);
  const std::vector<double> dir = random_direction(dim, opts.seed);
  for (std::size_t i = 0; i < dim; ++i) joint[dim + i] = joint[i] + opts.d0 * dir[i];
  stepper.reset(0.0, joint);

  const Schedule schedule = make_schedule(opts);
  std::vector<double> delta(dim);
  LyapunovEstimate est;
  est.history.reserve(opts.n_steps);
  double log_sum = 0.0;
  for (std::size_t k = 0; k < schedule.times.size(); ++k) {
    stepper.advance_to(schedule.times[k]);
    const auto y = stepper.y();
    const double d = joint_separation(y, L, delta);
    if (!(d > 0.0) || !std::isfinite(d))
      throw DegenerateError("separation collapsed at t = " + std::to_string(stepper.t()) +
                            "; re-seed the perturbation");
    std::copy(y.begin(), y.end(), joint.begin());
    const double scale = opts.d0 / d;
    for (std::size_t i = 0; i < dim; ++i) joint[dim + i] = joint[i] + scale * delta[i];
    stepper.set_state(joint);
    if (k >= schedule.first_counted) {
      log_sum += std::log(d / opts.d0);
      const auto counted = static_cast<double>(k - schedule.first_counted + 1);
      est.history.push_back(log_sum / (counted * opts.tau));
    }
  }
  est.lambda_max = est.history.back();
  est.converged = convergence_test(est.history);
  est.accepted_steps = stepper.accepted_steps();
  return est;
}

LyapunovEstimate lyapunov_spectrum_h2(const ArrayParams& params, const ClassicalState& state0,
                                      const LyapunovOptions& opts,
                                      const IntegratorConfig& config) {
  check_state(params, state0);
  opts.validate();
  const std::size_t L = params.size();
  const std::size_t dim = 2 * L;
  if (dim > kMaxH2Dimension)
    throw CapacityError("H2 spectrum limited to 2L <= " + std::to_string(kMaxH2Dimension) +
                        "; use the Benettin estimate for larger arrays");
  PendulumArray system(params);
  Stepper stepper(
      [&system, dim](std::span<const double> y, std::span<double> dy) {
        system.rhs_with_tangents(y, dy, dim);
      },
      dim + dim * dim, config);

  std::vector<double> aug(dim + dim * dim, 0.0);
  const std::vector<double> x0 = state0.to_flat();
  std::copy(x0.begin(), x0.end(), aug.begin());
  for (std::size_t j = 0; j < dim; ++j) aug[dim + j * dim + j] = 1.0;
  stepper.reset(0.0, aug);

  const Schedule schedule = make_schedule(opts);
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::VectorXd log_sums = Eigen::VectorXd::Zero(n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(n, n);
  LyapunovEstimate est;
  est.history.reserve(opts.n_steps);
  for (std::size_t k = 0; k < schedule.times.size(); ++k) {
    stepper.advance_to(schedule.times[k]);
    std::copy(stepper.y().begin(), stepper.y().end(), aug.begin());
    Eigen::Map<Eigen::MatrixXd> v(aug.data() + dim, n, n);
    qr.compute(v);
    const Eigen::MatrixXd& packed = qr.matrixQR();
    Eigen::MatrixXd q = qr.householderQ();
    for (Eigen::Index j = 0; j < n; ++j) {
      double r = packed(j, j);
      if (!(std::abs(r) > 0.0) || !std::isfinite(r))
        throw DegenerateError("tangent basis lost rank at t = " + std::to_string(stepper.t()));
      if (r < 0.0) {
        q.col(j) = -q.col(j);
        r = -r;
      }
      if (k >= schedule.first_counted) log_sums[j] += std::log(r);
    }
    v = q;
    stepper.set_state(aug);
    if (k >= schedule.first_counted) {
      const auto counted = static_cast<double>(k - schedule.first_counted + 1);
      est.history.push_back(log_sums[0] / (counted * opts.tau));
    }
  }
  const double total = static_cast<double>(opts.n_steps) * opts.tau;
  std::vector<double> spectrum(dim);
  for (std::size_t j = 0; j < dim; ++j) spectrum[j] = log_sums[static_cast<Eigen::Index>(j)] / total;
  std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  est.lambda_max = spectrum.front();
  est.spectrum = std::move(spectrum);
  est.converged = convergence_test(est.history);
  est.accepted_steps = stepper.accepted_steps();
  return est;
}

bool convergence_test(std::span<const double> history) {
  if (history.empty()) throw ParameterError("empty Lyapunov history");
  if (history.size() < 100) return false;
  const auto tail = history.subspan(history.size() - history.size() / 4);
  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  double mean = 0.0;
  for (double v : tail) mean += v;
  mean /= static_cast<double>(tail.size());
  const double spread = *hi - *lo;
  return spread < 1e-3 || spread < 0.1 * std::abs(mean);
}

DivergenceTrace divergence_trace(const ArrayParams& params, const ClassicalState& a,
                                 const ClassicalState& b, std::span<const double> times,
                                 const IntegratorConfig& config) {
  check_state(params, a);
  check_state(params, b);
  if (times.empty()) throw ParameterError("empty time grid");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw ParameterError("time grid must be increasing");
  const std::size_t dim = 2 * params.size();
  PendulumArray system(params);
  Stepper stepper(
      [&system, dim](std::span<const double> y, std::span<double> dy) {
        system.rhs(y.first(dim), dy.first(dim));
        system.rhs(y.subspan(dim), dy.subspan(dim));
      },
      2 * dim, config);
  std::vector<double> joint = a.to_flat();
  const std::vector<double> yb = b.to_flat();
  joint.insert(joint.end(), yb.begin(), yb.end());
  stepper.reset(times.front(), joint);

  DivergenceTrace out;
  for (double t : times) {
    if (t > stepper.t()) stepper.advance_to(t);
    const auto y = stepper.y();
    out.times.push_back(t);
    out.first.push_back(ClassicalState::from_flat(y.first(dim), true));
    out.second.push_back(ClassicalState::from_flat(y.subspan(dim), true));
    out.distance.push_back(phase_space_distance(out.first.back(), out.second.back()));
  }
  return out;
}

}  // namespace transmon
