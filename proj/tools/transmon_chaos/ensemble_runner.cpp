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

#include "ensemble_runner.hpp"

#include <iostream>
#include <sstream>

#include "common.hpp"
#include "transmon/errors.hpp"

namespace transmon::cli {

int execute_ensemble(const EnsembleRun& run, const std::string& out_dir, bool force,
                     bool progress, const std::vector<std::string>& argv) {
  run.validate();
  const auto dir = prepare_output(out_dir, force);
  Manifest manifest("ensemble", argv);
  manifest.body()["config"] = json::parse(run_to_json(run));

  std::ostringstream results;
  std::ostringstream summary;
  summary << "T_GHz,ej_nominal_GHz,c,count,failures,unconverged,lambda_mean,lambda_median,"
             "lambda_std,lambda_max,ipr_mean\n";
  json stats = json::array();
  bool budget_ok = true;
  std::size_t unconverged = 0;
  std::string budget_message;

  const auto blocks = run.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    EnsembleConfig config = blocks[b];
    config.enforce_failure_budget = false;
    ProgressFn report;
    if (progress)
      report = [b, n = blocks.size()](std::size_t done, std::size_t total) {
        std::cerr << "\rblock " << b + 1 << "/" << n << ": " << done << "/" << total
                  << std::flush;
        if (done == total) std::cerr << '\n';
      };
    const auto res = run_ensemble(config, report);
    write_results_csv(results, res, config.disorder, b == 0);
    try {
      enforce_failure_budget(res, config.max_failure_fraction);
    } catch (const EnsembleError& e) {
      budget_ok = false;
      if (budget_message.empty()) budget_message = e.what();
    }
    for (const EnsembleResult& r : res) {
      std::size_t bad = 0;
      for (const auto& row : r.rows)
        if (row.ok() && !row.converged) ++bad;
      unconverged += bad;
      const std::string ipr_mean = r.ipr && r.ipr->count > 0 ? format_double(r.ipr->mean) : "";
      summary << format_double(r.t_coupling) << ',' << format_double(config.disorder.mean_ej)
              << ',' << format_double(config.disorder.c) << ',' << r.lambda.count << ','
              << r.failures << ',' << bad << ',' << format_double(r.lambda.mean) << ','
              << format_double(r.lambda.median) << ',' << format_double(r.lambda.std) << ','
              << format_double(r.lambda.max) << ',' << ipr_mean << '\n';
      json entry = {{"T_GHz", r.t_coupling},
                    {"ej_nominal_GHz", config.disorder.mean_ej},
                    {"c", config.disorder.c},
                    {"count", r.lambda.count},
                    {"failures", r.failures},
                    {"unconverged", bad},
                    {"lambda_mean", r.lambda.mean},
                    {"lambda_median", r.lambda.median},
                    {"lambda_histogram",
                     {{"edges", r.lambda.histogram.edges}, {"counts", r.lambda.histogram.counts}}}};
      if (r.ipr && r.ipr->count > 0) entry["ipr_mean"] = r.ipr->mean;
      stats.push_back(entry);
      std::cout << "T=" << format_short(r.t_coupling)
                << " E_J=" << format_short(config.disorder.mean_ej)
                << " c=" << format_short(config.disorder.c) << "  mean lambda "
                << format_short(r.lambda.mean) << "  median " << format_short(r.lambda.median)
                << "  failures " << r.failures << '\n';
    }
  }
  write_text(dir / "results.csv", results.str());
  write_text(dir / "summary.csv", summary.str());
  manifest.body()["summary"] = stats;
  manifest.body()["status"] = {{"failure_budget_ok", budget_ok}, {"unconverged", unconverged}};
  manifest.write(dir);
  if (!budget_ok) {
    std::cerr << "error: " << budget_message << '\n';
    return kExitFailureBudget;
  }
  if (unconverged > 0) {
    std::cerr << "warning: " << unconverged << " realizations did not pass the convergence test\n";
    return kExitUnconverged;
  }
  return kExitOk;
}

}  // namespace transmon::cli
