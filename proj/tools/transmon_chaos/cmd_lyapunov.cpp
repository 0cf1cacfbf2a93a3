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

#include <chrono>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "commands.hpp"
#include "common.hpp"
#include "transmon/errors.hpp"
#include "transmon/lyapunov.hpp"
#include "transmon/run_config.hpp"

namespace transmon::cli {

namespace {

struct LyapunovCmdOptions {
  SystemOptions system;
  SolverOptions solver;
  double t = 0.02;
  std::size_t realization = 0;
  bool h2 = false;
  bool divergence = false;
  double div_factor = 1.001;
  std::size_t div_site = 0;
  std::string div_times = "0:1000:1001";
  std::string out;
  bool force = false;
};

}  // namespace

void add_lyapunov(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<LyapunovCmdOptions>();
  CLI::App* cmd = app.add_subcommand("lyapunov", "Largest Lyapunov exponent of one realization");
  add_system_options(*cmd, o->system);
  add_solver_options(*cmd, o->solver);
  cmd->add_option("--T", o->t, "Coupling T in GHz");
  cmd->add_option("--realization", o->realization, "Disorder realization index");
  cmd->add_flag("--h2", o->h2, "Full spectrum from tangent-space QR (at most 64 sites)");
  cmd->add_flag("--divergence", o->divergence,
                "Also trace the distance to a copy with one phase scaled by --div-factor");
  cmd->add_option("--div-factor", o->div_factor, "Scale applied to the perturbed phase");
  cmd->add_option("--div-site", o->div_site, "Site whose phase is scaled");
  cmd->add_option("--div-times", o->div_times, "Sample times in ns (start:stop:count)");
  cmd->add_option("--out", o->out, "Output directory for history.csv and manifest.json");
  cmd->add_flag("--force", o->force, "Overwrite an existing run");
  cmd->callback([o, &ctx] {
    const EnsembleConfig config = build_config(o->system, o->solver);
    const PreparedRealization prep = prepare_realization(config, o->t, o->realization);
    LyapunovOptions opts = config.lyapunov;
    opts.seed = prep.seed;

    const auto start = std::chrono::steady_clock::now();
    const LyapunovEstimate est =
        o->h2 ? lyapunov_spectrum_h2(prep.integration_params, prep.state, opts, config.integrator)
              : max_lyapunov_benettin(prep.integration_params, prep.state, opts,
                                      config.integrator);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::cout << "lattice = " << config.lattice.name() << " (" << config.lattice.size()
              << " sites)\n"
              << "method = " << (o->h2 ? "h2" : "benettin") << "\n"
              << "lambda_max_per_ns = " << format_short(est.lambda_max) << "\n"
              << "converged = " << (est.converged ? "yes" : "no") << "\n"
              << "accepted_steps = " << est.accepted_steps << "\n"
              << "wall_seconds = " << wall << "\n";
    if (est.spectrum) {
      std::cout << "spectrum_per_ns =";
      for (double v : *est.spectrum) std::cout << ' ' << format_double(v);
      std::cout << '\n';
    }

    std::optional<DivergenceTrace> trace;
    if (o->divergence) {
      if (o->div_site >= prep.state.size()) throw ParameterError("--div-site out of range");
      ClassicalState other = prep.state;
      other.phi[o->div_site] *= o->div_factor;
      const auto times = parse_sweep(o->div_times);
      trace = divergence_trace(prep.integration_params, prep.state, other, times,
                               config.integrator);
      std::cout << "divergence_final = " << format_double(trace->distance.back()) << "\n";
    }

    if (!o->out.empty()) {
      const auto dir = prepare_output(o->out, o->force);
      Manifest manifest("lyapunov", ctx.argv);
      std::ostringstream hist;
      hist << "step,t_ns,lambda_per_ns\n";
      for (std::size_t k = 0; k < est.history.size(); ++k)
        hist << k + 1 << ',' << format_double(opts.transient + static_cast<double>(k + 1) * opts.tau) << ','
             << format_double(est.history[k]) << '\n';
      write_text(dir / "history.csv", hist.str());
      if (trace) {
        std::ostringstream div;
        div << "t_ns,distance,phi_first,phi_second\n";
        for (std::size_t k = 0; k < trace->times.size(); ++k)
          div << format_double(trace->times[k]) << ',' << format_double(trace->distance[k]) << ','
              << format_double(trace->first[k].phi[o->div_site]) << ','
              << format_double(trace->second[k].phi[o->div_site]) << '\n';
        write_text(dir / "divergence.csv", div.str());
      }
      json result = {{"lambda_max_per_ns", est.lambda_max},
                     {"converged", est.converged},
                     {"accepted_steps", est.accepted_steps},
                     {"seed", prep.seed},
                     {"integration_seconds", wall}};
      if (est.spectrum) result["spectrum_per_ns"] = *est.spectrum;
      EnsembleRun run;
      run.base = config;
      run.base.t_values = {o->t};
      run.base.realizations = 1;
      run.ej_values = {config.disorder.mean_ej};
      run.c_values = {config.disorder.c};
      manifest.body()["config"] = json::parse(run_to_json(run));
      manifest.body()["realization"] = o->realization;
      manifest.body()["result"] = result;
      manifest.write(dir);
    }
    ctx.exit_code = est.converged ? kExitOk : kExitUnconverged;
  });
}

}  // namespace transmon::cli
