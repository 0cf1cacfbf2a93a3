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

#ifndef TRANSMON_RUN_CONFIG_HPP
#define TRANSMON_RUN_CONFIG_HPP

#include <string>
#include <string_view>
#include <vector>

#include "transmon/ensemble.hpp"

namespace transmon {

/// "start:stop:count" (inclusive, evenly spaced), a comma list, or one value.
std::vector<double> parse_sweep(std::string_view text);

/// Ensemble over a grid of nominal E_J and disorder levels c. Blocks run in
/// E_J-major order; each block reuses base with disorder.mean_ej and
/// disorder.c replaced.
struct EnsembleRun {
  EnsembleConfig base;
  std::vector<double> ej_values{10.0};
  std::vector<double> c_values{0.5};

  void validate() const;
  std::vector<EnsembleConfig> blocks() const;
};

inline constexpr int kRunConfigVersion = 1;

/// Every field that influences results.csv. The worker count is echoed but
/// never read back as a result-relevant setting.
std::string run_to_json(const EnsembleRun& run, int indent = 2);

/// Unknown keys and type mismatches are reported with their JSON path;
/// syntax errors carry line and column.
EnsembleRun run_from_json(std::string_view text);

}  // namespace transmon

#endif  // TRANSMON_RUN_CONFIG_HPP
