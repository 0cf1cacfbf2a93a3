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

#ifndef TRANSMON_INTEGRATE_HPP
#define TRANSMON_INTEGRATE_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "transmon/model.hpp"
#include "transmon/simd/kernels.hpp"

namespace transmon {

enum class Method {
  rk54,  // Tsitouras 5(4), FSAL, free 4th-order interpolant
  rk87,  // Dormand-Prince 8(5,3) with 7th-order dense output
};

std::string_view method_name(Method m);
Method parse_method(std::string_view name);

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-8;
  double max_step = 1.0;
  Method method = Method::rk54;
  double initial_step = 0.0;  // 0 = automatic

  void validate() const;
};

/// Autonomous right-hand side on a flat state vector.
using RhsFunction = std::function<void(std::span<const double> y, std::span<double> dy)>;

/// Embedded Runge-Kutta stepper with PI step-size control. Works on any
/// autonomous system; the classical array, its doubled Benettin form and the
/// tangent-augmented H2 form are all fed through here.
class Stepper {
 public:
  Stepper(RhsFunction f, std::size_t dim, const IntegratorConfig& config,
          const simd::KernelTable& kernels = simd::active_kernels());

  /// Starts from (t, y). Chooses an initial step unless one is configured.
  void reset(double t, std::span<const double> y);

  /// Replaces the state at the current time (rescaling, QR), keeping the
  /// step size. The FSAL derivative is recomputed.
  void set_state(std::span<const double> y);

  /// Takes one accepted step, never past t_stop.
  void step(double t_stop);

  /// Steps until t() == t_target exactly.
  void advance_to(double t_target);

  double t() const noexcept { return t_; }
  double t_prev() const noexcept { return t_prev_; }
  std::span<const double> y() const noexcept { return y_; }
  std::span<const double> y_prev() const noexcept { return y_prev_; }
  double step_size() const noexcept { return h_; }
  std::size_t dim() const noexcept { return dim_; }
  Method method() const noexcept { return config_.method; }

  /// Dense output over the last accepted step [t_prev, t].
  void dense_eval(double t, std::span<double> out);

  /// Interpolation data of the last accepted step, see dense_interpolate.
  void dense_coefficients(std::vector<double>& out);

  std::size_t accepted_steps() const noexcept { return accepted_; }
  std::size_t rejected_steps() const noexcept { return rejected_; }
  std::size_t rhs_evaluations() const noexcept { return evals_; }

 private:
  double attempt(double h);
  double attempt_tsit5(double h);
  double attempt_dop853(double h);
  void prepare_dense();
  double initial_step();
  double error_norm(std::span<const double> err);
  void eval(std::span<const double> y, std::span<double> dy);

  RhsFunction f_;
  std::size_t dim_;
  IntegratorConfig config_;
  const simd::KernelTable* kernels_;

  double t_ = 0.0;
  double t_prev_ = 0.0;
  double h_ = 0.0;
  double h_last_ = 0.0;
  double err_old_ = 1e-4;
  bool last_rejected_ = false;
  bool dense_ready_ = false;
  bool has_step_ = false;
  std::vector<double> y_, y_prev_, y_new_, f0_, f_prev_, f_new_, err_, tmp_;
  std::vector<std::vector<double>> k_;
  std::vector<double> dense_;
  std::size_t accepted_ = 0;
  std::size_t rejected_ = 0;
  std::size_t evals_ = 0;
};

/// Number of dim-sized blocks in one step's interpolation data.
std::size_t dense_block_count(Method m);

/// Evaluates a stored step at theta in [0, 1].
void dense_interpolate(Method m, std::span<const double> coeffs, std::size_t dim, double theta,
                       std::span<double> out);

struct Trajectory {
  Method method = Method::rk54;
  std::size_t sites = 0;
  std::vector<double> times;
  std::vector<ClassicalState> states;  // wrapped
  std::vector<double> dense;           // one block run per step, unwrapped phases
  double energy0 = 0.0;
  double max_energy_drift = 0.0;  // max |H(t) - H(0)| / |H(0)| over nodes
  double final_energy_drift = 0.0;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;

  double t0() const { return times.front(); }
  double t1() const { return times.back(); }
};

Trajectory evolve(const ArrayParams& params, const ClassicalState& state0, double t0, double t1,
                  const IntegratorConfig& config = {});

ClassicalState evaluate(const Trajectory& traj, double t);

}  // namespace transmon

#endif  // TRANSMON_INTEGRATE_HPP
