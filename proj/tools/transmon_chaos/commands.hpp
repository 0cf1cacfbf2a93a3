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

#ifndef TRANSMON_CHAOS_COMMANDS_HPP
#define TRANSMON_CHAOS_COMMANDS_HPP

#include <string>
#include <vector>

#include "CLI11.hpp"

namespace transmon::cli {

struct Context {
  std::vector<std::string> argv;  // without the program name
  int exit_code = 0;
};

void add_spectrum(CLI::App& app, Context& ctx);
void add_poincare(CLI::App& app, Context& ctx);
void add_lyapunov(CLI::App& app, Context& ctx);
void add_ensemble(CLI::App& app, Context& ctx);
void add_ipr(CLI::App& app, Context& ctx);
void add_chip(CLI::App& app, Context& ctx);
void add_replay(CLI::App& app, Context& ctx);

/// Parses and runs one command line; returns the process exit code.
int run_cli(std::vector<std::string> argv);

}  // namespace transmon::cli

#endif  // TRANSMON_CHAOS_COMMANDS_HPP
