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

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "commands.hpp"
#include "common.hpp"
#include "ensemble_runner.hpp"
#include "transmon/errors.hpp"
#include "transmon/run_config.hpp"

namespace transmon::cli {

namespace {

struct EnsembleCmdOptions {
  SystemOptions system;
  SolverOptions solver;
  std::string t_values;
  std::string ej_values;
  std::string c_values;
  std::size_t realizations = 100;
  bool ipr = false;
  std::string onsite = "asymptotic";
  double max_fail = 0.01;
  std::optional<std::size_t> workers;
  std::string config_file;
  std::string out;
  bool force = false;
  bool progress = false;
};

EnsembleRun run_from_flags(const EnsembleCmdOptions& o) {
  EnsembleRun run;
  run.base = build_config(o.system, o.solver);
  if (o.t_values.empty()) throw ParameterError("--T is required");
  run.base.t_values = parse_sweep(o.t_values);
  run.base.realizations = o.realizations;
  run.base.compute_ipr = o.ipr;
  run.base.onsite = parse_onsite_model(o.onsite);
  run.base.max_failure_fraction = o.max_fail;
  run.ej_values = o.ej_values.empty() ? std::vector<double>{o.system.e_j} : parse_sweep(o.ej_values);
  run.c_values = o.c_values.empty() ? std::vector<double>{o.system.c} : parse_sweep(o.c_values);
  return run;
}

}  // namespace

void add_ensemble(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<EnsembleCmdOptions>();
  CLI::App* cmd = app.add_subcommand(
      "ensemble", "Disorder ensembles of the Lyapunov exponent over T, E_J and c sweeps");
  add_system_options(*cmd, o->system);
  add_solver_options(*cmd, o->solver);
  cmd->add_option("--T", o->t_values, "Coupling sweep in GHz (start:stop:count or list)");
  cmd->add_option("--ej-sweep", o->ej_values, "Nominal E_J sweep in GHz (overrides --ej)");
  cmd->add_option("--c-sweep", o->c_values, "Disorder-level sweep (overrides --c)");
  cmd->add_option("--R", o->realizations, "Realizations per sweep point");
  cmd->add_flag("--ipr", o->ipr, "Also compute the mean block IPR of each realization");
  cmd->add_option("--onsite", o->onsite, "Onsite energies for the IPR: asymptotic or exact")
      ->check(CLI::IsMember({"asymptotic", "exact"}));
  cmd->add_option("--max-fail", o->max_fail, "Tolerated fraction of failed realizations");
  cmd->add_option("--workers", o->workers, "Worker threads (default TRANSMON_WORKERS or all cores)");
  cmd->add_option("--config", o->config_file,
                  "Run configuration JSON; replaces every model and sweep flag")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", o->out, "Output directory")->required();
  cmd->add_flag("--force", o->force, "Overwrite an existing run");
  cmd->add_flag("--progress", o->progress, "Report progress on stderr");
  cmd->callback([o, &ctx] {
    EnsembleRun run;
    if (!o->config_file.empty()) {
      std::ifstream in(o->config_file);
      std::stringstream ss;
      ss << in.rdbuf();
      run = run_from_json(ss.str());
    } else {
      run = run_from_flags(*o);
    }
    run.base.workers = resolve_workers(o->workers);
    ctx.exit_code = execute_ensemble(run, o->out, o->force, o->progress, ctx.argv);
  });
}

}  // namespace transmon::cli
