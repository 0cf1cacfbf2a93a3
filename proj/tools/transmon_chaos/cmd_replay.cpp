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

struct ReplayOptions {
  std::string manifest;
  std::string out;
  std::optional<std::size_t> workers;
  bool force = false;
};

// Swaps the value of --out (both "--out X" and "--out=X") and appends --force.
std::vector<std::string> redirect(std::vector<std::string> argv, const std::string& out) {
  bool found = false;
  for (std::size_t k = 0; k < argv.size(); ++k) {
    if (argv[k] == "--out" && k + 1 < argv.size()) {
      argv[k + 1] = out;
      found = true;
    } else if (argv[k].rfind("--out=", 0) == 0) {
      argv[k] = "--out=" + out;
      found = true;
    }
  }
  if (!found) {
    argv.emplace_back("--out");
    argv.push_back(out);
  }
  argv.emplace_back("--force");
  return argv;
}

}  // namespace

void add_replay(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<ReplayOptions>();
  CLI::App* cmd = app.add_subcommand("replay", "Re-run a recorded run from its manifest.json");
  cmd->add_option("manifest", o->manifest, "manifest.json of the original run")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", o->out, "Output directory for the replay")->required();
  cmd->add_option("--workers", o->workers, "Worker threads for ensemble replays");
  cmd->add_flag("--force", o->force, "Overwrite an existing run");
  cmd->callback([o, &ctx] {
    std::ifstream in(o->manifest);
    json m;
    try {
      m = json::parse(in);
    } catch (const json::exception& e) {
      throw ParameterError(o->manifest + ": " + e.what());
    }
    if (!m.contains("manifest_version") || m["manifest_version"] != kManifestVersion)
      throw ParameterError(o->manifest + ": unsupported manifest version");
    const std::string command = m.at("command").get<std::string>();
    if (command == "ensemble") {
      EnsembleRun run = run_from_json(m.at("config").dump());
      run.base.workers = resolve_workers(o->workers);
      std::vector<std::string> argv{"replay", o->manifest, "--out", o->out};
      ctx.exit_code = execute_ensemble(run, o->out, o->force, false, argv);
      return;
    }
    if (!o->force) prepare_output(o->out, false);
    ctx.exit_code = run_cli(redirect(m.at("argv").get<std::vector<std::string>>(), o->out));
  });
}

}  // namespace transmon::cli
