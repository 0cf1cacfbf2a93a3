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
#include "transmon/poincare.hpp"
#include "transmon/run_config.hpp"

namespace transmon::cli {

namespace {

struct PoincareOptions {
  double e_c = 0.3;
  std::string e_j = "98.8,101.2";
  double t = 0.04;
  std::string x;
  std::vector<std::string> ics;
  double n1 = 0.01;
  std::size_t points = 2000;
  double t_max = 1.0e7;
  double tol = 1e-10;
  std::string method = "rk54";
  std::size_t section_site = 1;
  int direction = +1;
  std::string out;
  bool force = false;
};

struct Orbit {
  std::string label;
  ClassicalState start;
};

std::vector<Orbit> orbits_from(const PoincareOptions& o) {
  std::vector<Orbit> out;
  if (!o.x.empty())
    for (double x : parse_sweep(o.x))
      out.push_back({"x=" + format_short(x), ClassicalState{{0.0, kPi - x}, {o.n1, 0.0}}});
  for (const std::string& ic : o.ics) {
    const auto v = parse_sweep(ic);
    if (v.size() != 4) throw ParameterError("--ic takes phi1,phi2,n1,n2");
    out.push_back({"ic=" + ic, ClassicalState{{v[0], v[1]}, {v[2], v[3]}}});
  }
  return out;
}

}  // namespace

void add_poincare(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<PoincareOptions>();
  CLI::App* cmd =
      app.add_subcommand("poincare", "Poincare sections of two coupled transmons, one per orbit");
  cmd->add_option("--ec", o->e_c, "Charging energy E_C in GHz");
  cmd->add_option("--ej", o->e_j, "E_J,1,E_J,2 in GHz");
  cmd->add_option("--T", o->t, "Coupling T in GHz");
  cmd->add_option("--x", o->x,
                  "Orbits starting at phi2 = pi - x, phi1 = n2 = 0, n1 = --n1 (list or sweep)");
  cmd->add_option("--ic", o->ics, "Orbit start phi1,phi2,n1,n2 (repeatable)");
  cmd->add_option("--n1", o->n1, "Initial n1 for --x orbits");
  cmd->add_option("--points", o->points, "Section points per orbit");
  cmd->add_option("--t-max", o->t_max, "Time limit per orbit in ns");
  cmd->add_option("--tol", o->tol, "Integrator tolerance");
  cmd->add_option("--method", o->method, "rk54 or rk87")->check(CLI::IsMember({"rk54", "rk87"}));
  cmd->add_option("--section-site", o->section_site, "Site whose phase defines the surface");
  cmd->add_option("--direction", o->direction, "Crossing direction, +1 or -1")
      ->check(CLI::Range(-1, 1));
  cmd->add_option("--out", o->out, "Output directory")->required();
  cmd->add_flag("--force", o->force, "Overwrite an existing run");
  cmd->callback([o, &ctx] {
    const auto orbits = orbits_from(*o);
    if (orbits.empty()) throw CLI::ValidationError("poincare", "no orbits given (use --x or --ic)");
    const auto ej = parse_sweep(o->e_j);
    if (ej.size() != 2) throw ParameterError("--ej takes two values");
    const ArrayParams params(o->e_c, ej, o->t, {{0, 1}});
    SectionSpec spec;
    spec.section_site = o->section_site;
    spec.record_site = 1 - o->section_site;
    spec.direction = o->direction;
    spec.t_max = o->t_max;
    spec.max_points = o->points;
    SolverOptions solver;
    solver.tol = o->tol;
    solver.method = o->method;
    const IntegratorConfig config = build_integrator(solver);
    const auto dir = prepare_output(o->out, o->force);
    Manifest manifest("poincare", ctx.argv);

    std::vector<SectionPoints> sections;
    std::vector<std::string> status;
    for (const Orbit& orbit : orbits) {
      try {
        sections.push_back(poincare_section(params, orbit.start, spec, config));
        status.emplace_back("ok");
      } catch (const Error& e) {
        sections.emplace_back();
        status.emplace_back(e.what());
      }
    }
    std::vector<SectionPoints> usable;
    for (std::size_t k = 0; k < sections.size(); ++k)
      if (status[k] == "ok" && sections[k].points.size() >= kMinFillingPoints)
        usable.push_back(sections[k]);
    std::optional<FillingGrid> shared;
    if (!usable.empty()) shared = shared_grid(usable);

    std::ostringstream points;
    points << "orbit,t_ns,phi,n\n";
    std::ostringstream summary;
    summary << "orbit,label,points,t_end_ns,filling_own,filling_shared,class,max_energy_error,"
               "status\n";
    bool failed = false;
    std::cout << "orbit  points  filling_own  filling_shared  class\n";
    for (std::size_t k = 0; k < orbits.size(); ++k) {
      const SectionPoints& s = sections[k];
      for (std::size_t i = 0; i < s.points.size(); ++i)
        points << k << ',' << format_double(s.times[i]) << ',' << format_double(s.points[i].phi)
               << ',' << format_double(s.points[i].n) << '\n';
      std::string own, joint, label = "n/a";
      std::string st = status[k];
      if (st == "ok" && s.points.size() < kMinFillingPoints)
        st = "too few points for a filling fraction";
      if (st == "ok") {
        const double f = own_filling_fraction(s);
        own = format_double(f);
        joint = format_double(filling_fraction(s, *shared));
        label = f > kChaoticFillingThreshold ? "chaotic" : "regular";
      } else {
        failed = true;
      }
      for (char& ch : st)
        if (ch == ',' || ch == '\n') ch = ';';
      summary << k << ',' << orbits[k].label << ',' << s.points.size() << ','
              << format_double(s.t_end) << ',' << own << ',' << joint << ',' << label << ','
              << format_double(s.max_energy_error) << ',' << st << '\n';
      std::cout << k << "  " << s.points.size() << "  " << (own.empty() ? "-" : own.substr(0, 8))
                << "  " << (joint.empty() ? "-" : joint.substr(0, 8)) << "  " << label << "  (" << orbits[k].label
                << ")\n";
    }
    write_text(dir / "points.csv", points.str());
    write_text(dir / "orbits.csv", summary.str());
    manifest.body()["parameters"] = {{"e_c_GHz", o->e_c},
                                     {"e_j_GHz", ej},
                                     {"T_GHz", o->t},
                                     {"points", o->points},
                                     {"t_max_ns", o->t_max},
                                     {"tol", o->tol},
                                     {"method", o->method},
                                     {"chaotic_filling_threshold", kChaoticFillingThreshold}};
    manifest.write(dir);
    ctx.exit_code = failed ? kExitError : kExitOk;
  });
}

}  // namespace transmon::cli
