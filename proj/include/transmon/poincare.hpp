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

#ifndef TRANSMON_POINCARE_HPP
#define TRANSMON_POINCARE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "transmon/integrate.hpp"
#include "transmon/model.hpp"

namespace transmon {

/// Surface phi[section_site] = section_value (mod 2 pi), crossed while
/// n[section_site] has the sign of `direction`.
struct SectionSpec {
  std::size_t section_site = 1;
  double section_value = 0.0;
  int direction = +1;
  std::size_t record_site = 0;
  double t_max = 1.0e4;
  std::size_t max_points = 100000;

  void validate(std::size_t sites) const;
};

struct SectionPoint {
  double phi = 0.0;
  double n = 0.0;
};

struct SectionPoints {
  std::vector<SectionPoint> points;
  std::vector<double> times;
  double energy = 0.0;            // H at t = 0
  double max_energy_error = 0.0;  // relative, over all crossings
  double max_section_residual = 0.0;  // |phi_section - value| mod 2 pi at crossings
  double t_end = 0.0;
};

/// Refined crossings of one orbit. Only two-site arrays are accepted.
SectionPoints poincare_section(const ArrayParams& params, const ClassicalState& state0,
                               const SectionSpec& spec = {},
                               const IntegratorConfig& config = {});

struct FillingGrid {
  std::size_t n_phi = 100;
  std::size_t n_n = 100;
  // Angle window; the full circle (-pi, pi] when absent.
  std::optional<double> phi_min;
  std::optional<double> phi_max;
  // Momentum window; taken from the data padded by 5 % when absent.
  std::optional<double> n_min;
  std::optional<double> n_max;
};

/// One grid for comparing several sections: the joint bounding box of all
/// points, padded by 5 % on both axes.
FillingGrid shared_grid(std::span<const SectionPoints> sections, std::size_t n_phi = 100,
                        std::size_t n_n = 100);

inline constexpr std::size_t kMinFillingPoints = 100;

/// Fraction of occupied cells of the grid; points outside the window are ignored.
double filling_fraction(const SectionPoints& section, const FillingGrid& grid = {});

/// Orbits whose filling fraction on their own padded 100 x 100 window exceeds
/// this are classed as chaotic. Placed between a regular (0.035) and a
/// chaotic (0.145) reference orbit of 2000 points.
inline constexpr double kChaoticFillingThreshold = 0.07;

double own_filling_fraction(const SectionPoints& section);
bool looks_chaotic(const SectionPoints& section);

}  // namespace transmon

#endif  // TRANSMON_POINCARE_HPP
