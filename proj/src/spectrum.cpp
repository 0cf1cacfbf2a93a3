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

#include "transmon/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <tuple>
#include <utility>

#include <Eigen/Eigenvalues>

#include "transmon/errors.hpp"

namespace transmon {
namespace {

Eigen::VectorXd tridiagonal_eigenvalues(const Eigen::VectorXd& diag, const Eigen::VectorXd& off) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("tridiagonal eigensolver failed");
  return solver.eigenvalues();
}

// The charge-basis matrix commutes with n -> -n. Diagonalizing the even and
// odd sectors separately avoids the near-degenerate +-n pairs high up in the
// spectrum, which stall the QR iteration on the full matrix.
Eigen::VectorXd charge_basis_eigenvalues(double e_c, double e_j, int cutoff) {
  Eigen::VectorXd even_d(cutoff + 1), even_o(cutoff);
  Eigen::VectorXd odd_d(cutoff), odd_o(cutoff - 1);
  for (int n = 0; n <= cutoff; ++n) even_d[n] = 4.0 * e_c * n * n;
  for (int n = 1; n <= cutoff; ++n) odd_d[n - 1] = 4.0 * e_c * n * n;
  even_o.setConstant(-0.5 * e_j);
  even_o[0] = -0.5 * e_j * std::sqrt(2.0);
  odd_o.setConstant(-0.5 * e_j);
  const Eigen::VectorXd a = tridiagonal_eigenvalues(even_d, even_o);
  const Eigen::VectorXd b = tridiagonal_eigenvalues(odd_d, odd_o);
  Eigen::VectorXd all(a.size() + b.size());
  std::merge(a.data(), a.data() + a.size(), b.data(), b.data() + b.size(), all.data());
  return all;
}

}  // namespace

TransmonSpectrum single_transmon_levels(double e_c, double e_j, int charge_cutoff) {
  if (!(e_c > 0.0) || !std::isfinite(e_c)) throw ParameterError("e_c must be positive");
  if (!(e_j > 0.0) || !std::isfinite(e_j)) throw ParameterError("e_j must be positive");
  if (charge_cutoff < 30) throw ParameterError("charge cutoff must be at least 30");

  const Eigen::VectorXd ev = charge_basis_eigenvalues(e_c, e_j, charge_cutoff);
  const Eigen::VectorXd ref = charge_basis_eigenvalues(e_c, e_j, 2 * charge_cutoff);

  TransmonSpectrum out;
  out.e_c = e_c;
  out.e_j = e_j;
  std::size_t bound = 0;
  while (bound < static_cast<std::size_t>(ev.size()) && ev[static_cast<Eigen::Index>(bound)] < e_j)
    ++bound;
  const std::size_t keep = std::min<std::size_t>(bound + 2, static_cast<std::size_t>(ev.size()));
  out.n_bound = bound;
  out.levels.assign(ev.data(), ev.data() + keep);

  for (std::size_t a = 0; a < keep; ++a) {
    const double e = ev[static_cast<Eigen::Index>(a)];
    const double r = ref[static_cast<Eigen::Index>(a)];
    if (std::abs(e - r) > 1e-9 * std::max(1.0, std::abs(r)))
      throw ConvergenceError("level " + std::to_string(a) + " not converged at charge cutoff " +
                             std::to_string(charge_cutoff));
  }
  for (std::size_t a = 1; a < keep; ++a) {
    if (!(out.levels[a] > out.levels[a - 1]))
      throw ConvergenceError("degenerate levels in charge basis (E_J/E_C too small?)");
  }
  return out;
}

const TransmonSpectrum& cached_levels(double e_c, double e_j, int charge_cutoff) {
  using Key = std::tuple<long long, long long, int>;
  static std::mutex mu;
  static std::map<Key, std::unique_ptr<TransmonSpectrum>> cache;
  const Key key{std::llround(e_c * 1e12), std::llround(e_j * 1e12), charge_cutoff};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto spec = std::make_unique<TransmonSpectrum>(single_transmon_levels(e_c, e_j, charge_cutoff));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, std::move(spec));
  return *it->second;
}

double init_angle(double e_a, double e_j) {
  if (!(e_j > 0.0)) throw ParameterError("e_j must be positive");
  if (!(std::abs(e_a) <= e_j))
    throw DomainError("level energy " + std::to_string(e_a) + " outside [-E_J, E_J] for E_J = " +
                      std::to_string(e_j));
  return std::acos(-e_a / e_j);
}

std::vector<TransmonSpectrum> site_spectra(const ArrayParams& params, bool use_mean_ej,
                                           int charge_cutoff) {
  const auto ej = params.e_j();
  std::vector<TransmonSpectrum> out;
  out.reserve(ej.size());
  if (use_mean_ej) {
    double mean = 0.0;
    for (double v : ej) mean += v;
    mean /= static_cast<double>(ej.size());
    const TransmonSpectrum& s = cached_levels(params.e_c(), mean, charge_cutoff);
    out.assign(ej.size(), s);
    return out;
  }
  for (double v : ej) out.push_back(cached_levels(params.e_c(), v, charge_cutoff));
  return out;
}

ClassicalState init_state(const ArrayParams& params, std::span<const int> level_pattern,
                          std::span<const TransmonSpectrum> spectra, PhaseSignSpec signs) {
  const std::size_t L = params.size();
  if (level_pattern.size() != L)
    throw DimensionError("level pattern has " + std::to_string(level_pattern.size()) +
                         " entries, array has " + std::to_string(L));
  if (spectra.size() != L) throw DimensionError("need one spectrum per site");

  std::mt19937_64 rng(signs.seed);
  ClassicalState s{std::vector<double>(L), std::vector<double>(L, 0.0)};
  for (std::size_t i = 0; i < L; ++i) {
    const int a = level_pattern[i];
    if (a < 0 || static_cast<std::size_t>(a) >= spectra[i].n_bound)
      throw DomainError("site " + std::to_string(i) + ": level " + std::to_string(a) +
                        " is not bound (n_bound = " + std::to_string(spectra[i].n_bound) + ")");
    // with the mean-E_J option the level may sit slightly outside this
    // site's own well; clamp to the turning point in that case
    const double e_j = params.e_j()[i];
    const double e_a = std::clamp(spectra[i].levels[static_cast<std::size_t>(a)], -e_j, e_j);
    double phi = init_angle(e_a, e_j);
    switch (signs.kind) {
      case PhaseSigns::uniform:
        break;
      case PhaseSigns::alternating:
        if (i % 2 == 1) phi = -phi;
        break;
      case PhaseSigns::random:
        if ((rng() >> 63) != 0) phi = -phi;
        break;
    }
    s.phi[i] = phi;
  }
  return s;
}

std::string_view phase_signs_name(PhaseSigns s) {
  switch (s) {
    case PhaseSigns::uniform:
      return "uniform";
    case PhaseSigns::alternating:
      return "alternating";
    case PhaseSigns::random:
      return "random";
  }
  return "uniform";
}

PhaseSigns parse_phase_signs(std::string_view s) {
  for (PhaseSigns k : {PhaseSigns::uniform, PhaseSigns::alternating, PhaseSigns::random})
    if (phase_signs_name(k) == s) return k;
  throw ParameterError("unknown phase-sign rule '" + std::string(s) +
                       "' (expected uniform, alternating or random)");
}

}  // namespace transmon
