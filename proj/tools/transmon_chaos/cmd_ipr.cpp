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

#include <iostream>
#include <memory>
#include <sstream>

#include "commands.hpp"
#include "common.hpp"
#include "transmon/errors.hpp"
#include "transmon/quantum.hpp"
#include "transmon/run_config.hpp"

namespace transmon::cli {

namespace {

struct IprCmdOptions {
  SystemOptions system;
  std::string t_values = "0.02";
  std::size_t realization = 0;
  std::optional<std::size_t> excitations;
  std::optional<std::size_t> n_max;
  std::string onsite = "asymptotic";
  bool multiplets = false;
  std::string evolve;
  std::string times = "0:100:101";
  std::string out;
  bool force = false;
};

}  // namespace

void add_ipr(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<IprCmdOptions>();
  CLI::App* cmd =
      app.add_subcommand("ipr", "Eigenstate IPRs of the Bose-Hubbard block of one realization");
  add_system_options(*cmd, o->system);
  cmd->add_option("--T", o->t_values, "Coupling sweep in GHz");
  cmd->add_option("--realization", o->realization, "Disorder realization index");
  cmd->add_option("--N", o->excitations, "Excitation number (default L/2)");
  cmd->add_option("--nmax", o->n_max, "Per-site occupation cap (default min(N, 6))");
  cmd->add_option("--onsite", o->onsite, "asymptotic or exact onsite energies")
      ->check(CLI::IsMember({"asymptotic", "exact"}));
  cmd->add_flag("--multiplets", o->multiplets, "Mean IPR per sublattice multiplet");
  cmd->add_option("--evolve", o->evolve, "Fock occupations to evolve, e.g. 1,0,1,0");
  cmd->add_option("--times", o->times, "Evolution sample times in ns");
  cmd->add_option("--out", o->out, "Output directory");
  cmd->add_flag("--force", o->force, "Overwrite an existing run");
  cmd->callback([o, &ctx] {
    SolverOptions solver;
    const EnsembleConfig config = build_config(o->system, solver);
    const std::size_t L = config.lattice.size();
    const std::size_t N = o->excitations.value_or(L / 2);
    const std::size_t n_max = o->n_max.value_or(default_n_max(N));
    const OnsiteModel onsite = parse_onsite_model(o->onsite);
    const FockBlock block(L, N, n_max);
    const auto labels = config.pattern.kind == PatternKind::uniform
                            ? std::vector<Sublattice>(config.lattice.sublattice().begin(),
                                                      config.lattice.sublattice().end())
                            : pattern_labels(config.lattice, config.pattern.kind);

    std::vector<int> occupation;
    if (!o->evolve.empty())
      for (double v : parse_sweep(o->evolve)) occupation.push_back(static_cast<int>(v));
    const auto times = parse_sweep(o->times);

    std::ostringstream eig_csv, mult_csv, evo_csv;
    eig_csv << "T_GHz,state,energy_GHz,ipr\n";
    mult_csv << "T_GHz,multiplet,dim,assigned,mean_ipr\n";
    evo_csv << "T_GHz,t_ns,ipr\n";
    json summary = json::array();
    std::cout << "block: L=" << L << " N=" << N << " n_max=" << n_max << " dim=" << block.dim()
              << '\n';
    for (double t : parse_sweep(o->t_values)) {
      const PreparedRealization prep = prepare_realization(config, t, o->realization);
      const auto h = build_hamiltonian(block, bose_hubbard_from(prep.params, onsite));
      const Eigensystem eig = diagonalize(h);
      const IprResult res = eigen_ipr(eig);
      for (std::size_t k = 0; k < res.values.size(); ++k)
        eig_csv << format_double(t) << ',' << k << ','
                << format_double(eig.values(static_cast<Eigen::Index>(k))) << ','
                << format_double(res.values[k]) << '\n';
      std::cout << "T=" << format_short(t) << "  mean IPR " << format_short(res.mean) << '\n';
      json entry = {{"T_GHz", t}, {"mean_ipr", res.mean}};
      if (o->multiplets) {
        for (const MultipletIpr& m : multiplet_ipr(eig, multiplet_partition(block, labels))) {
          mult_csv << format_double(t) << ',' << m.name << ',' << m.dim << ',' << m.assigned << ','
                   << (m.mean_ipr ? format_double(*m.mean_ipr) : "") << '\n';
          std::cout << "  " << m.name << " dim " << m.dim << " assigned " << m.assigned
                    << " mean IPR " << (m.mean_ipr ? format_short(*m.mean_ipr) : "-") << '\n';
        }
      }
      if (!occupation.empty()) {
        const auto series = evolve_ipr(eig, block.index(occupation), times);
        for (std::size_t k = 0; k < times.size(); ++k)
          evo_csv << format_double(t) << ',' << format_double(times[k]) << ','
                  << format_double(series[k]) << '\n';
      }
      summary.push_back(entry);
    }
    if (!o->out.empty()) {
      const auto dir = prepare_output(o->out, o->force);
      Manifest manifest("ipr", ctx.argv);
      write_text(dir / "eigenstates.csv", eig_csv.str());
      if (o->multiplets) write_text(dir / "multiplets.csv", mult_csv.str());
      if (!occupation.empty()) write_text(dir / "evolution.csv", evo_csv.str());
      manifest.body()["block"] = {{"sites", L}, {"N", N}, {"n_max", n_max}, {"dim", block.dim()},
                                  {"onsite", o->onsite}};
      manifest.body()["summary"] = summary;
      manifest.write(dir);
    }
    ctx.exit_code = kExitOk;
  });
}

}  // namespace transmon::cli
