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

#ifndef TRANSMON_MODEL_HPP
#define TRANSMON_MODEL_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "transmon/simd/kernels.hpp"

namespace transmon {

/// Energies are in GHz throughout; with Hamilton's equations taken verbatim
/// the induced time unit is ns (no factor 2*pi).
inline constexpr double kPi = 3.14159265358979323846;

/// Wraps an angle into (-pi, pi].
double wrap_angle(double phi);

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Physical parameters of a capacitively coupled transmon array:
///   H = 4 E_C sum n_i^2 - sum E_J,i cos(phi_i) + T sum_<ij> n_i n_j.
/// Validated on construction; immutable afterwards.
class ArrayParams {
 public:
  ArrayParams(double e_c, std::vector<double> e_j, double t_coupling, std::vector<Edge> edges);

  double e_c() const noexcept { return e_c_; }
  double t_coupling() const noexcept { return t_; }
  std::span<const double> e_j() const noexcept { return e_j_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return e_j_.size(); }

  /// Sites adjacent to i (all neighbors, order of first appearance in edges).
  std::span<const std::size_t> neighbors(std::size_t i) const;

  /// Copy with e_c, e_j and T multiplied by factor (angular-frequency convention).
  ArrayParams scaled(double factor) const;
  ArrayParams with_coupling(double t_coupling) const;

 private:
  double e_c_;
  std::vector<double> e_j_;
  double t_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> nbr_offsets_;
  std::vector<std::size_t> nbr_index_;
};

/// Phase-space point. phi is kept in (-pi, pi] whenever a state is handed
/// back to callers.
struct ClassicalState {
  std::vector<double> phi;
  std::vector<double> n;

  std::size_t size() const noexcept { return phi.size(); }
  ClassicalState wrapped() const;

  /// Flat layout used by the integrators: (phi_0..phi_{L-1}, n_0..n_{L-1}).
  std::vector<double> to_flat() const;
  static ClassicalState from_flat(std::span<const double> y, bool wrap = true);
};

struct StateDerivative {
  std::vector<double> dphi;
  std::vector<double> dn;
};

double hamiltonian(const ArrayParams& params, const ClassicalState& state);

/// Single-transmon Hamilton function 4 E_C n_i^2 - E_J,i cos(phi_i); the
/// coupling term is excluded, so the sum over sites equals H at T = 0.
double site_energy(const ArrayParams& params, const ClassicalState& state, std::size_t i);

StateDerivative eom(const ArrayParams& params, const ClassicalState& state);

/// 2L x 2L Jacobian of the flow in the (phi, n) ordering.
Eigen::MatrixXd linearized_eom(const ArrayParams& params, const ClassicalState& state);

/// Right-hand side on the flat layout, evaluated through a kernel table.
/// Holds scratch space, so one instance must not be shared across threads.
class PendulumArray {
 public:
  explicit PendulumArray(const ArrayParams& params,
                         const simd::KernelTable& kernels = simd::active_kernels());

  std::size_t sites() const noexcept { return sites_; }
  std::size_t dimension() const noexcept { return 2 * sites_; }

  void rhs(std::span<const double> y, std::span<double> dy);

  /// Tangent dynamics for `count` deviation vectors stored contiguously
  /// after the base point: y = (x, v_0, ..., v_{count-1}), each of size 2L.
  void rhs_with_tangents(std::span<const double> y, std::span<double> dy, std::size_t count);

  double energy(std::span<const double> y) const;

 private:
  void neighbor_sum(const double* n, double* out) const;

  const simd::KernelTable* kernels_;
  std::size_t sites_;
  double eight_ec_;
  double four_ec_;
  double t_;
  std::vector<double> e_j_;
  std::vector<Edge> edges_;
  std::vector<double> nbr_;
  std::vector<double> curvature_;
};

void check_state(const ArrayParams& params, const ClassicalState& state);

}  // namespace transmon

#endif  // TRANSMON_MODEL_HPP
