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

#ifndef TRANSMON_SPECTRUM_HPP
#define TRANSMON_SPECTRUM_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "transmon/model.hpp"

namespace transmon {

inline constexpr int kDefaultChargeCutoff = 60;

/// Eigenvalues of 4 E_C n^2 - E_J cos(phi), measured on the same scale as the
/// classical potential (ground state slightly above -E_J).
struct TransmonSpectrum {
  std::vector<double> levels;  // every bound level plus the next two
  std::size_t n_bound = 0;     // levels below E_J
  double e_j = 0.0;
  double e_c = 0.0;

  double nu01() const { return levels.at(1) - levels.at(0); }
  double anharmonicity() const { return (levels.at(1) - levels.at(0)) - (levels.at(2) - levels.at(1)); }
};

/// Diagonalizes the charge-basis matrix on n in [-cutoff, cutoff] and checks
/// the result against a run at twice the cutoff.
TransmonSpectrum single_transmon_levels(double e_c, double e_j,
                                        int charge_cutoff = kDefaultChargeCutoff);

/// Same as above, memoized on (e_c, e_j) rounded to 1e-12 GHz. Thread-safe.
const TransmonSpectrum& cached_levels(double e_c, double e_j,
                                      int charge_cutoff = kDefaultChargeCutoff);

/// arccos(-e_a / e_j), the turning-point angle of a zero-momentum pendulum
/// with energy e_a.
double init_angle(double e_a, double e_j);

enum class PhaseSigns { uniform, alternating, random };
std::string_view phase_signs_name(PhaseSigns s);
PhaseSigns parse_phase_signs(std::string_view s);

struct PhaseSignSpec {
  PhaseSigns kind = PhaseSigns::uniform;
  std::uint64_t seed = 0;
};

/// One spectrum per site. With use_mean_ej every site shares the spectrum of
/// the mean Josephson energy.
std::vector<TransmonSpectrum> site_spectra(const ArrayParams& params, bool use_mean_ej = false,
                                           int charge_cutoff = kDefaultChargeCutoff);

/// n = 0 everywhere and phi_i = +-init_angle(E_{a_i}, E_J,i).
ClassicalState init_state(const ArrayParams& params, std::span<const int> level_pattern,
                          std::span<const TransmonSpectrum> spectra, PhaseSignSpec signs = {});

}  // namespace transmon

#endif  // TRANSMON_SPECTRUM_HPP
