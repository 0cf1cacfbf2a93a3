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

#include "transmon/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>
#include <utility>

#include "transmon/errors.hpp"

namespace transmon {

void SectionSpec::validate(std::size_t sites) const {
  if (section_site >= sites || record_site >= sites)
    throw DimensionError("section or record site out of range");
  if (section_site == record_site) throw ParameterError("section and record site must differ");
  if (direction != 1 && direction != -1) throw ParameterError("direction must be +1 or -1");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ParameterError("t_max must be positive");
  if (max_points == 0) throw ParameterError("max_points must be positive");
  if (!std::isfinite(section_value)) throw ParameterError("section value must be finite");
}

namespace {

constexpr double kCrossingTol = 1e-10;

// Root of phi_s(t) - level on [ta, tb] using the step's dense output.
double refine_crossing(Stepper& stepper, std::size_t comp, double level, double ta, double tb,
                       std::vector<double>& buf) {
  auto g = [&](double t) {
    stepper.dense_eval(t, buf);
    return buf[comp] - level;
  };
  double ga = g(ta);
  double gb = g(tb);
  if (ga == 0.0) return ta;
  if (gb == 0.0) return tb;
  for (int it = 0; it < 8; ++it) {
    const double tm = 0.5 * (ta + tb);
    const double gm = g(tm);
    if (gm == 0.0) return tm;
    if ((gm < 0.0) == (ga < 0.0)) {
      ta = tm;
      ga = gm;
    } else {
      tb = tm;
      gb = gm;
    }
  }
  // secant on the bracket, falling back to bisection if it leaves it
  for (int it = 0; it < 100; ++it) {
    double tc = tb - gb * (tb - ta) / (gb - ga);
    if (!(tc > ta && tc < tb)) tc = 0.5 * (ta + tb);
    const double gc = g(tc);
    const double width_floor = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(tb);
    if (std::abs(gc) < kCrossingTol || tb - ta <= width_floor) return tc;
    if ((gc < 0.0) == (ga < 0.0)) {
      ta = tc;
      ga = gc;
    } else {
      tb = tc;
      gb = gc;
    }
  }
  return std::abs(ga) < std::abs(gb) ? ta : tb;
}

}  // namespace

SectionPoints poincare_section(const ArrayParams& params, const ClassicalState& state0,
                               const SectionSpec& spec, const IntegratorConfig& config) {
  check_state(params, state0);
  if (params.size() != 2)
    throw DimensionError("Poincare sections need exactly two sites, got " +
                         std::to_string(params.size()));
  spec.validate(params.size());
  const std::size_t L = params.size();
  PendulumArray system(params);
  Stepper stepper([&system](std::span<const double> y, std::span<double> dy) { system.rhs(y, dy); },
                  2 * L, config);
  const std::vector<double> y0 = state0.to_flat();
  stepper.reset(0.0, y0);

  SectionPoints out;
  out.energy = system.energy(y0);
  const double e_scale = std::max(std::abs(out.energy), 1e-300);
  const std::size_t sc = spec.section_site;
  const std::size_t rc = spec.record_site;
  constexpr double kTwoPi = 2.0 * kPi;
  std::vector<double> buf(2 * L);

  // The solver state keeps phi unwrapped; surfaces sit at value + 2 pi m.
  auto branch = [&](double phi) { return std::floor((phi - spec.section_value) / kTwoPi); };
  while (stepper.t() < spec.t_max && out.points.size() < spec.max_points) {
    const double b0 = branch(stepper.y()[sc]);
    stepper.step(spec.t_max);
    const double b1 = branch(stepper.y()[sc]);
    if (b0 == b1) continue;
    // every surface passed during the step, in time order
    const double lo = std::min(b0, b1) + 1.0;
    const double hi = std::max(b0, b1);
    const bool upward = b1 > b0;
    for (double k = 0.0; k <= hi - lo && out.points.size() < spec.max_points; k += 1.0) {
      const double m = upward ? lo + k : hi - k;
      const double level = spec.section_value + kTwoPi * m;
      const double tc = refine_crossing(stepper, sc, level, stepper.t_prev(), stepper.t(), buf);
      stepper.dense_eval(tc, buf);
      if ((buf[L + sc] > 0.0 ? 1 : -1) != spec.direction || buf[L + sc] == 0.0) continue;
      out.points.push_back({wrap_angle(buf[rc]), buf[L + rc]});
      out.times.push_back(tc);
      out.max_section_residual = std::max(
          out.max_section_residual, std::abs(wrap_angle(buf[sc] - spec.section_value)));
      out.max_energy_error =
          std::max(out.max_energy_error, std::abs(system.energy(buf) - out.energy) / e_scale);
    }
  }
  out.t_end = stepper.t();
  return out;
}

namespace {

std::pair<double, double> padded(double lo, double hi) {
  const double span = hi - lo;
  const double pad = span > 0.0 ? 0.05 * span : 0.5;
  return {lo - pad, hi + pad};
}

std::pair<double, double> window(std::optional<double> lo, std::optional<double> hi,
                                 const char* axis) {
  if (!lo || !hi) throw ParameterError(std::string("incomplete ") + axis + " window");
  if (!(*hi > *lo)) throw ParameterError(std::string(axis) + " window is empty");
  return {*lo, *hi};
}

}  // namespace

FillingGrid shared_grid(std::span<const SectionPoints> sections, std::size_t n_phi,
                        std::size_t n_n) {
  double phi_lo = std::numeric_limits<double>::infinity();
  double phi_hi = -phi_lo;
  double n_lo = phi_lo;
  double n_hi = -phi_lo;
  for (const SectionPoints& s : sections) {
    for (const SectionPoint& p : s.points) {
      phi_lo = std::min(phi_lo, p.phi);
      phi_hi = std::max(phi_hi, p.phi);
      n_lo = std::min(n_lo, p.n);
      n_hi = std::max(n_hi, p.n);
    }
  }
  if (!(phi_hi >= phi_lo)) throw ParameterError("no section points to bound");
  FillingGrid g;
  g.n_phi = n_phi;
  g.n_n = n_n;
  const auto [pa, pb] = padded(phi_lo, phi_hi);
  const auto [na, nb] = padded(n_lo, n_hi);
  g.phi_min = pa;
  g.phi_max = pb;
  g.n_min = na;
  g.n_max = nb;
  return g;
}

double filling_fraction(const SectionPoints& section, const FillingGrid& grid) {
  const auto& pts = section.points;
  if (pts.empty()) throw ParameterError("empty section");
  if (pts.size() < kMinFillingPoints)
    throw ParameterError("filling fraction needs at least " + std::to_string(kMinFillingPoints) +
                         " points, got " + std::to_string(pts.size()));
  if (grid.n_phi == 0 || grid.n_n == 0) throw ParameterError("grid needs at least one cell");
  double phi_lo = -kPi;
  double phi_hi = kPi;
  if (grid.phi_min || grid.phi_max)
    std::tie(phi_lo, phi_hi) = window(grid.phi_min, grid.phi_max, "phi");
  double lo = 0.0;
  double hi = 0.0;
  if (grid.n_min || grid.n_max) {
    std::tie(lo, hi) = window(grid.n_min, grid.n_max, "n");
  } else {
    const auto [mn, mx] = std::minmax_element(pts.begin(), pts.end(),
                                              [](const auto& a, const auto& b) { return a.n < b.n; });
    std::tie(lo, hi) = padded(mn->n, mx->n);
  }
  std::vector<char> occupied(grid.n_phi * grid.n_n, 0);
  const auto cell = [](double x, double a, double b, std::size_t n) {
    const double f = (x - a) / (b - a) * static_cast<double>(n);
    return static_cast<std::size_t>(std::clamp(f, 0.0, static_cast<double>(n - 1)));
  };
  for (const SectionPoint& p : pts) {
    if (p.n < lo || p.n > hi || p.phi < phi_lo || p.phi > phi_hi) continue;
    const std::size_t i = cell(p.phi, phi_lo, phi_hi, grid.n_phi);
    const std::size_t j = cell(p.n, lo, hi, grid.n_n);
    occupied[i * grid.n_n + j] = 1;
  }
  const auto count = std::count(occupied.begin(), occupied.end(), char{1});
  return static_cast<double>(count) / static_cast<double>(occupied.size());
}

double own_filling_fraction(const SectionPoints& section) {
  return filling_fraction(section, shared_grid(std::span<const SectionPoints>(&section, 1)));
}

bool looks_chaotic(const SectionPoints& section) {
  return own_filling_fraction(section) > kChaoticFillingThreshold;
}

}  // namespace transmon
