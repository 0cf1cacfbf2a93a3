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

#ifndef TRANSMON_CHAOS_ENSEMBLE_RUNNER_HPP
#define TRANSMON_CHAOS_ENSEMBLE_RUNNER_HPP

#include <string>
#include <vector>

#include "transmon/run_config.hpp"

namespace transmon::cli {

/// Runs every block of the sweep and writes results.csv, summary.csv and
/// manifest.json into out_dir. Returns the process exit code.
int execute_ensemble(const EnsembleRun& run, const std::string& out_dir, bool force,
                     bool progress, const std::vector<std::string>& argv);

}  // namespace transmon::cli

#endif  // TRANSMON_CHAOS_ENSEMBLE_RUNNER_HPP
