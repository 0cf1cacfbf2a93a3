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

#include "common.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "transmon/errors.hpp"
#include "transmon/run_config.hpp"
#include "transmon/simd/kernels.hpp"

namespace transmon::cli {

namespace fs = std::filesystem;

void add_system_options(CLI::App& cmd, SystemOptions& o) {
  cmd.add_option("--lattice", o.lattice, "chain, grid or heavy_hex")
      ->check(CLI::IsMember({"chain", "grid", "heavy_hex"}));
  cmd.add_option("--L", o.L, "Chain length")->check(CLI::PositiveNumber);
  cmd.add_option("--rows", o.rows, "Grid rows or heavy-hex cell rows");
  cmd.add_option("--cols", o.cols, "Grid columns or heavy-hex cell columns");
  cmd.add_option("--preset", o.preset, "Chip preset (see `chip list`)");
  cmd.add_option("--lattice-file", o.lattice_file, "Lattice JSON from `chip export`")
      ->check(CLI::ExistingFile);
  cmd.add_option("--ec", o.e_c, "Charging energy E_C in GHz");
  cmd.add_option("--ej", o.e_j, "Mean Josephson energy E_J in GHz");
  cmd.add_option("--c", o.c, "Disorder level; spread = c sqrt(E_C E_J / 2)");
  cmd.add_option("--spread", o.spread, "Explicit E_J spread in GHz (overrides --c)");
  cmd.add_option("--seed", o.seed, "Master seed");
  cmd.add_option("--pattern", o.pattern, "uniform, AB or CACB")
      ->check(CLI::IsMember({"uniform", "AB", "CACB"}));
  cmd.add_option("--base-ej", o.base_ej, "Per-sublattice E_J, e.g. A=12,B=13,C=11");
  cmd.add_option("--init", o.init, "alternating, high_e, low_e, explicit or random_k");
  cmd.add_option("--levels", o.levels, "Comma list of per-site levels for --init explicit");
  cmd.add_option("--k", o.k, "Excited sites for --init random_k");
  cmd.add_option("--init-seed", o.init_seed, "Seed for --init random_k");
  cmd.add_option("--signs", o.signs, "Initial phase signs: uniform, alternating or random");
  cmd.add_option("--signs-seed", o.signs_seed, "Seed for --signs random");
  cmd.add_flag("--mean-spectrum", o.mean_spectrum, "Use the mean-E_J spectrum on every site");
  cmd.add_flag("--angular", o.angular, "Integrate with every energy multiplied by 2 pi");
}

void add_solver_options(CLI::App& cmd, SolverOptions& o) {
  cmd.add_option("--steps", o.steps, "Renormalization steps");
  cmd.add_option("--transient", o.transient, "Discarded transient in ns");
  cmd.add_option("--tau", o.tau, "Renormalization interval in ns");
  cmd.add_option("--d0", o.d0, "Initial separation");
  cmd.add_option("--tol", o.tol, "Relative and absolute integrator tolerance");
  cmd.add_option("--method", o.method, "rk54 or rk87")->check(CLI::IsMember({"rk54", "rk87"}));
  cmd.add_option("--max-step", o.max_step, "Largest step in ns");
}

Lattice build_lattice(const SystemOptions& o) {
  const int sources = (o.preset.empty() ? 0 : 1) + (o.lattice_file.empty() ? 0 : 1);
  if (sources > 1) throw ParameterError("--preset and --lattice-file are exclusive");
  if (!o.preset.empty()) return ibm_preset(o.preset);
  if (!o.lattice_file.empty()) {
    std::ifstream in(o.lattice_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return lattice_from_json(ss.str());
  }
  switch (parse_geometry(o.lattice)) {
    case Geometry::chain:
      return chain(o.L);
    case Geometry::grid:
      return grid(o.rows, o.cols);
    case Geometry::heavy_hex:
      return heavy_hexagon(o.rows, o.cols);
  }
  throw ParameterError("unknown lattice");
}

IntegratorConfig build_integrator(const SolverOptions& o) {
  IntegratorConfig c;
  c.rel_tol = o.tol;
  c.abs_tol = o.tol;
  c.max_step = o.max_step;
  c.method = parse_method(o.method);
  c.validate();
  return c;
}

namespace {

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_sweep(text)) {
    if (v < 0.0 || v != static_cast<int>(v)) throw ParameterError("levels must be integers >= 0");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::map<Sublattice, double> parse_base_ej(const std::string& text) {
  std::map<Sublattice, double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParameterError("--base-ej entries read LABEL=GHz");
    const auto v = parse_sweep(item.substr(eq + 1));
    if (v.size() != 1) throw ParameterError("--base-ej takes one value per label");
    out[parse_sublattice(item.substr(0, eq))] = v.front();
  }
  return out;
}

}  // namespace

EnsembleConfig build_config(const SystemOptions& o, const SolverOptions& s) {
  EnsembleConfig c;
  c.lattice = build_lattice(o);
  c.pattern.kind = parse_pattern_kind(o.pattern);
  if (!o.base_ej.empty()) c.pattern.base_ej = parse_base_ej(o.base_ej);
  if (c.pattern.kind != PatternKind::uniform && c.pattern.base_ej.empty())
    throw ParameterError("--pattern " + o.pattern + " needs --base-ej");
  c.init.kind = parse_init_kind(o.init);
  if (!o.levels.empty()) c.init.levels = parse_levels(o.levels);
  c.init.k = o.k;
  c.init.seed = o.init_seed;
  c.signs.kind = parse_phase_signs(o.signs);
  c.signs.seed = o.signs_seed;
  c.mean_spectrum = o.mean_spectrum;
  c.disorder.mean_ej = o.e_j;
  c.disorder.e_c = o.e_c;
  c.disorder.c = o.c;
  c.disorder.master_seed = o.seed;
  c.disorder.spread_override = o.spread;
  c.disorder.validate();
  c.lyapunov.n_steps = s.steps;
  c.lyapunov.transient = s.transient;
  c.lyapunov.tau = s.tau;
  c.lyapunov.d0 = s.d0;
  c.lyapunov.validate();
  c.integrator = build_integrator(s);
  c.angular_convention = o.angular;
  return c;
}

std::size_t resolve_workers(std::optional<std::size_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TRANSMON_WORKERS")) {
    const auto v = parse_sweep(env);
    if (v.size() != 1 || v.front() < 0.0 || v.front() != static_cast<double>(static_cast<std::size_t>(v.front())))
      throw ParameterError("TRANSMON_WORKERS must be a non-negative integer");
    return static_cast<std::size_t>(v.front());
  }
  return 0;
}

fs::path prepare_output(const std::string& dir, bool force) {
  if (dir.empty()) throw ParameterError("--out is required");
  const fs::path p(dir);
  fs::create_directories(p);
  if (!force && (fs::exists(p / "results.csv") || fs::exists(p / "manifest.json")))
    throw ParameterError("output directory " + dir + " already holds a run (use --force)");
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Manifest::Manifest(std::string command, std::vector<std::string> argv)
    : start_(std::chrono::steady_clock::now()) {
  body_["manifest_version"] = kManifestVersion;
  body_["command"] = std::move(command);
  body_["argv"] = std::move(argv);
  body_["code_version"] = TRANSMON_VERSION;
  body_["results_csv_version"] = kResultsCsvVersion;
  body_["kernels"] = std::string(simd::active_kernels().name);
}

void Manifest::write(const fs::path& dir) {
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  body_["timing"] = {{"finished_utc", stamp}, {"wall_seconds", wall}};
  write_text(dir / "manifest.json", body_.dump(2) + "\n");
}

}  // namespace transmon::cli
