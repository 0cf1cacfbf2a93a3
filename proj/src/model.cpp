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

#include "transmon/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "transmon/errors.hpp"

namespace transmon {

double wrap_angle(double phi) {
  double r = std::remainder(phi, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  if (r > kPi) r -= 2.0 * kPi;
  return r;
}

namespace {

void build_csr(std::size_t sites, std::span<const Edge> edges, std::vector<std::size_t>& offsets,
               std::vector<std::size_t>& index) {
  offsets.assign(sites + 1, 0);
  for (const Edge& e : edges) {
    ++offsets[e.a + 1];
    ++offsets[e.b + 1];
  }
  for (std::size_t i = 0; i < sites; ++i) offsets[i + 1] += offsets[i];
  index.assign(offsets.back(), 0);
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) {
    index[fill[e.a]++] = e.b;
    index[fill[e.b]++] = e.a;
  }
}

}  // namespace

ArrayParams::ArrayParams(double e_c, std::vector<double> e_j, double t_coupling,
                         std::vector<Edge> edges)
    : e_c_(e_c), e_j_(std::move(e_j)), t_(t_coupling), edges_(std::move(edges)) {
  if (!(e_c_ > 0.0) || !std::isfinite(e_c_)) throw ParameterError("e_c must be positive");
  if (e_j_.empty()) throw ParameterError("array needs at least one site");
  for (std::size_t i = 0; i < e_j_.size(); ++i) {
    if (!(e_j_[i] > 0.0) || !std::isfinite(e_j_[i]))
      throw ParameterError("e_j[" + std::to_string(i) + "] must be positive");
  }
  if (!(t_ >= 0.0) || !std::isfinite(t_)) throw ParameterError("coupling T must be >= 0");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : edges_) {
    if (e.a >= e_j_.size() || e.b >= e_j_.size())
      throw DimensionError("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                           ") references a site beyond e_j length " +
                           std::to_string(e_j_.size()));
    if (e.a == e.b) throw ParameterError("self-loop at site " + std::to_string(e.a));
    if (!seen.emplace(std::min(e.a, e.b), std::max(e.a, e.b)).second)
      throw ParameterError("duplicate edge (" + std::to_string(e.a) + "," +
                           std::to_string(e.b) + ")");
  }
  build_csr(e_j_.size(), edges_, nbr_offsets_, nbr_index_);
}

std::span<const std::size_t> ArrayParams::neighbors(std::size_t i) const {
  if (i >= size()) throw DimensionError("site index out of range");
  return {nbr_index_.data() + nbr_offsets_[i], nbr_offsets_[i + 1] - nbr_offsets_[i]};
}

ArrayParams ArrayParams::scaled(double factor) const {
  std::vector<double> ej = e_j_;
  for (double& v : ej) v *= factor;
  return ArrayParams(e_c_ * factor, std::move(ej), t_ * factor, edges_);
}

ArrayParams ArrayParams::with_coupling(double t_coupling) const {
  return ArrayParams(e_c_, e_j_, t_coupling, edges_);
}

ClassicalState ClassicalState::wrapped() const {
  ClassicalState out = *this;
  for (double& p : out.phi) p = wrap_angle(p);
  return out;
}

std::vector<double> ClassicalState::to_flat() const {
  std::vector<double> y;
  y.reserve(phi.size() + n.size());
  y.insert(y.end(), phi.begin(), phi.end());
  y.insert(y.end(), n.begin(), n.end());
  return y;
}

ClassicalState ClassicalState::from_flat(std::span<const double> y, bool wrap) {
  if (y.size() % 2 != 0) throw DimensionError("flat state must have even length");
  const std::size_t L = y.size() / 2;
  ClassicalState s{{y.begin(), y.begin() + L}, {y.begin() + L, y.end()}};
  if (wrap) {
    for (double& p : s.phi) p = wrap_angle(p);
  }
  return s;
}

void check_state(const ArrayParams& params, const ClassicalState& state) {
  if (state.phi.size() != state.n.size())
    throw DimensionError("phi and n lengths differ");
  if (state.phi.size() != params.size())
    throw DimensionError("state has " + std::to_string(state.phi.size()) +
                         " sites but params have " + std::to_string(params.size()));
}

double hamiltonian(const ArrayParams& params, const ClassicalState& state) {
  check_state(params, state);
  double h = 0.0;
  const auto ej = params.e_j();
  for (std::size_t i = 0; i < params.size(); ++i)
    h += 4.0 * params.e_c() * state.n[i] * state.n[i] - ej[i] * std::cos(state.phi[i]);
  double coupling = 0.0;
  for (const Edge& e : params.edges()) coupling += state.n[e.a] * state.n[e.b];
  return h + params.t_coupling() * coupling;
}

double site_energy(const ArrayParams& params, const ClassicalState& state, std::size_t i) {
  check_state(params, state);
  if (i >= params.size()) throw DimensionError("site index " + std::to_string(i) + " out of range");
  return 4.0 * params.e_c() * state.n[i] * state.n[i] - params.e_j()[i] * std::cos(state.phi[i]);
}

StateDerivative eom(const ArrayParams& params, const ClassicalState& state) {
  check_state(params, state);
  const std::size_t L = params.size();
  StateDerivative d{std::vector<double>(L), std::vector<double>(L)};
  for (std::size_t i = 0; i < L; ++i) {
    double nbr = 0.0;
    for (std::size_t j : params.neighbors(i)) nbr += state.n[j];
    d.dphi[i] = 8.0 * params.e_c() * state.n[i] + params.t_coupling() * nbr;
    d.dn[i] = -params.e_j()[i] * std::sin(state.phi[i]);
  }
  return d;
}

Eigen::MatrixXd linearized_eom(const ArrayParams& params, const ClassicalState& state) {
  check_state(params, state);
  const auto L = static_cast<Eigen::Index>(params.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * L, 2 * L);
  for (Eigen::Index i = 0; i < L; ++i) {
    m(i, L + i) = 8.0 * params.e_c();
    m(L + i, i) = -params.e_j()[i] * std::cos(state.phi[i]);
  }
  for (const Edge& e : params.edges()) {
    const auto a = static_cast<Eigen::Index>(e.a);
    const auto b = static_cast<Eigen::Index>(e.b);
    m(a, L + b) += params.t_coupling();
    m(b, L + a) += params.t_coupling();
  }
  return m;
}

PendulumArray::PendulumArray(const ArrayParams& params, const simd::KernelTable& kernels)
    : kernels_(&kernels),
      sites_(params.size()),
      eight_ec_(8.0 * params.e_c()),
      four_ec_(4.0 * params.e_c()),
      t_(params.t_coupling()),
      e_j_(params.e_j().begin(), params.e_j().end()),
      edges_(params.edges().begin(), params.edges().end()),
      nbr_(params.size()),
      curvature_(params.size()) {}

void PendulumArray::neighbor_sum(const double* n, double* out) const {
  std::fill(out, out + sites_, 0.0);
  for (const Edge& e : edges_) {
    out[e.a] += n[e.b];
    out[e.b] += n[e.a];
  }
}

void PendulumArray::rhs(std::span<const double> y, std::span<double> dy) {
  const std::size_t L = sites_;
  neighbor_sum(y.data() + L, nbr_.data());
  kernels_->pendulum_rhs(y.first(L), y.subspan(L, L), nbr_, e_j_, eight_ec_, t_, dy.first(L),
                         dy.subspan(L, L));
}

void PendulumArray::rhs_with_tangents(std::span<const double> y, std::span<double> dy,
                                      std::size_t count) {
  const std::size_t L = sites_;
  const std::size_t dim = 2 * L;
  rhs(y.first(dim), dy.first(dim));
  kernels_->neg_ej_cos(y.first(L), e_j_, curvature_);
  for (std::size_t v = 0; v < count; ++v) {
    const double* dv = y.data() + dim * (v + 1);
    double* out = dy.data() + dim * (v + 1);
    // d(dphi)/dt = 8 E_C dn + T A dn ; d(dn)/dt = -E_J cos(phi) dphi
    neighbor_sum(dv + L, nbr_.data());
    for (std::size_t i = 0; i < L; ++i) {
      out[i] = eight_ec_ * dv[L + i] + t_ * nbr_[i];
      out[L + i] = curvature_[i] * dv[i];
    }
  }
}

double PendulumArray::energy(std::span<const double> y) const {
  const std::size_t L = sites_;
  double h = 0.0;
  for (std::size_t i = 0; i < L; ++i) h += four_ec_ * y[L + i] * y[L + i] - e_j_[i] * std::cos(y[i]);
  double coupling = 0.0;
  for (const Edge& e : edges_) coupling += y[L + e.a] * y[L + e.b];
  return h + t_ * coupling;
}

}  // namespace transmon
