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
#include <sstream>

#include "commands.hpp"
#include "common.hpp"
#include "transmon/errors.hpp"
#include "transmon/lattice.hpp"

namespace transmon::cli {

namespace {

void print_row(const Lattice& l) {
  std::cout << l.name() << ',' << l.size() << ',' << l.count(Role::target) << ','
            << l.count(Role::control) << ',' << l.edges().size() << '\n';
}

}  // namespace

void add_chip(CLI::App& app, Context& ctx) {
  CLI::App* chip = app.add_subcommand("chip", "Chip presets and lattice files");
  chip->require_subcommand(1);

  chip->add_subcommand("list", "Presets with their site counts")->callback([&ctx] {
    std::cout << "name,sites,targets,controls,edges\n";
    for (const std::string& name : preset_names()) print_row(ibm_preset(name));
    ctx.exit_code = kExitOk;
  });

  auto sys = std::make_shared<SystemOptions>();
  auto out = std::make_shared<std::string>();
  CLI::App* exp = chip->add_subcommand("export", "Write a lattice as JSON");
  exp->add_option("--lattice", sys->lattice, "chain, grid or heavy_hex")
      ->check(CLI::IsMember({"chain", "grid", "heavy_hex"}));
  exp->add_option("--L", sys->L, "Chain length");
  exp->add_option("--rows", sys->rows, "Grid rows or heavy-hex cell rows");
  exp->add_option("--cols", sys->cols, "Grid columns or heavy-hex cell columns");
  exp->add_option("--preset", sys->preset, "Chip preset");
  exp->add_option("--out", *out, "Destination file (default stdout)");
  exp->callback([sys, out, &ctx] {
    const std::string text = lattice_to_json(build_lattice(*sys)) + "\n";
    if (out->empty()) {
      std::cout << text;
    } else {
      write_text(*out, text);
    }
    ctx.exit_code = kExitOk;
  });

  auto file = std::make_shared<std::string>();
  CLI::App* imp = chip->add_subcommand("import", "Validate a lattice JSON file");
  imp->add_option("file", *file, "Lattice JSON")->required()->check(CLI::ExistingFile);
  imp->callback([file, &ctx] {
    std::ifstream in(*file);
    std::stringstream ss;
    ss << in.rdbuf();
    std::cout << "name,sites,targets,controls,edges\n";
    print_row(lattice_from_json(ss.str()));
    ctx.exit_code = kExitOk;
  });
}

}  // namespace transmon::cli
