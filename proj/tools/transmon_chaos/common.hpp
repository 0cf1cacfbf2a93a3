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

#ifndef TRANSMON_CHAOS_COMMON_HPP
#define TRANSMON_CHAOS_COMMON_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "transmon/ensemble.hpp"

namespace transmon::cli {

using json = nlohmann::ordered_json;

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFailureBudget = 2;
inline constexpr int kExitUnconverged = 3;

/// Lattice, couplings, disorder and initial state of one array.
struct SystemOptions {
  std::string lattice = "chain";
  std::size_t L = 10;
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::string preset;
  std::string lattice_file;
  double e_c = 0.25;
  double e_j = 10.0;
  double c = 0.5;
  std::optional<double> spread;
  std::uint64_t seed = 0;
  std::string pattern = "uniform";
  std::string base_ej;
  std::string init = "alternating";
  std::string levels;
  std::size_t k = 0;
  std::uint64_t init_seed = 0;
  std::string signs = "uniform";
  std::uint64_t signs_seed = 0;
  bool mean_spectrum = false;
  bool angular = false;
};

struct SolverOptions {
  std::size_t steps = 10000;
  double transient = 100.0;
  double tau = 1.0;
  double d0 = 1e-9;
  double tol = 1e-8;
  std::string method = "rk54";
  double max_step = 1.0;
};

void add_system_options(CLI::App& cmd, SystemOptions& o);
void add_solver_options(CLI::App& cmd, SolverOptions& o);

Lattice build_lattice(const SystemOptions& o);
IntegratorConfig build_integrator(const SolverOptions& o);
/// Everything except the coupling sweep and the realization count.
EnsembleConfig build_config(const SystemOptions& o, const SolverOptions& s);

/// --workers, else TRANSMON_WORKERS, else 0 (all cores).
std::size_t resolve_workers(std::optional<std::size_t> flag);

/// Creates the directory; refuses to overwrite an existing results.csv
/// unless force is set.
std::filesystem::path prepare_output(const std::string& dir, bool force);

void write_text(const std::filesystem::path& path, const std::string& text);

/// %.17g, used for every CSV number.
std::string format_double(double v);
/// Shortest text that reads back to v, for labels and console output.
std::string format_short(double v);

/// Records how a run was invoked and how long it took.
class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> argv);

  json& body() { return body_; }
  void write(const std::filesystem::path& dir);

 private:
  json body_;
  std::chrono::steady_clock::time_point start_;
};

inline constexpr int kManifestVersion = 1;

}  // namespace transmon::cli

#endif  // TRANSMON_CHAOS_COMMON_HPP
