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

#include <algorithm>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "transmon/errors.hpp"

namespace transmon::cli {

int run_cli(std::vector<std::string> argv) {
  CLI::App app{"Classical and quantum chaos diagnostics for transmon arrays", "transmon_chaos"};
  app.require_subcommand(1);
  app.set_version_flag("--version", TRANSMON_VERSION);
  Context ctx{argv, 0};
  add_spectrum(app, ctx);
  add_poincare(app, ctx);
  add_lyapunov(app, ctx);
  add_ensemble(app, ctx);
  add_ipr(app, ctx);
  add_chip(app, ctx);
  add_replay(app, ctx);
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return ctx.exit_code;
}

}  // namespace transmon::cli

int main(int argc, char** argv) {
  return transmon::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
