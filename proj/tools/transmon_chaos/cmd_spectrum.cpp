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

#include "commands.hpp"
#include "common.hpp"
#include "transmon/errors.hpp"
#include "transmon/spectrum.hpp"

namespace transmon::cli {

namespace {

struct SpectrumOptions {
  double e_c = 0.25;
  double e_j = 12.5;
  int cutoff = kDefaultChargeCutoff;
  std::string out;
};

}  // namespace

void add_spectrum(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<SpectrumOptions>();
  CLI::App* cmd = app.add_subcommand("spectrum", "Single-transmon levels and bound states");
  cmd->add_option("--ec", o->e_c, "Charging energy E_C in GHz");
  cmd->add_option("--ej", o->e_j, "Josephson energy E_J in GHz");
  cmd->add_option("--cutoff", o->cutoff, "Charge-basis cutoff");
  cmd->add_option("--out", o->out, "Also write the level table to this CSV file");
  cmd->callback([o, &ctx] {
    const TransmonSpectrum s = single_transmon_levels(o->e_c, o->e_j, o->cutoff);
    std::string table = "level,energy_GHz,bound\n";
    for (std::size_t k = 0; k < s.levels.size(); ++k)
      table += std::to_string(k) + "," + format_double(s.levels[k]) + "," +
               (k < s.n_bound ? "1" : "0") + "\n";
    std::cout << "E_C_GHz = " << format_short(o->e_c) << "\n"
              << "E_J_GHz = " << format_short(o->e_j) << "\n"
              << "n_bound = " << s.n_bound << "\n"
              << "nu01_GHz = " << format_double(s.nu01()) << "\n"
              << "anharmonicity_GHz = " << format_double(s.anharmonicity()) << "\n"
              << table;
    if (!o->out.empty()) write_text(o->out, table);
    ctx.exit_code = kExitOk;
  });
}

}  // namespace transmon::cli
