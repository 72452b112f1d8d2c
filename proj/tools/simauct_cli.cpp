// Copyright 2026 The simauct Authors
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
#include <string>

#include <CLI11.hpp>

#include "simauct/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Simultaneous-auction revenue toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  simauct::HarnessOptions options;
  uint64_t seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "scenario config (JSON)")->required();
    cmd->add_option("--out", options.out_dir, "output directory");
    cmd->add_option("--seed", seed, "override the solver/generator seed")
        ->each([&](const std::string&) { seed_set = true; });
    cmd->add_flag("--quiet", options.quiet, "suppress stdout");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve for an epsilon-equilibrium");
  add_common(solve);

  CLI::App* verify = app.add_subcommand("verify", "run the configured verification checks");
  add_common(verify);
  verify->add_option("--check", options.only_checks, "run only the named checks (repeatable)");
  verify->add_flag("--exact-rational", options.exact_rational,
                   "solve benchmark LPs in exact rational arithmetic");
  verify->add_option("--mc-samples", options.mc_samples,
                     "Monte Carlo sample count for oversized instances");

  CLI::App* sweep = app.add_subcommand("sweep", "random-instance revenue-ratio sweep");
  add_common(sweep);

  CLI::App* decompose = app.add_subcommand("decompose", "emit the revenue decomposition");
  add_common(decompose);

  CLI::App* opt = app.add_subcommand("opt", "compute the optimal-revenue benchmark");
  add_common(opt);
  opt->add_flag("--exact-rational", options.exact_rational,
                "solve the LP in exact rational arithmetic");
  opt->add_option("--emit-lp", options.emit_lp_path, "write the LP in interchange format");

  CLI11_PARSE(app, argc, argv);

  try {
    simauct::ScenarioConfig config = simauct::load_config_file(config_path);
    if (seed_set) options.seed_override = seed;
    if (solve->parsed()) return simauct::cmd_solve(config, options);
    if (verify->parsed()) return simauct::cmd_verify(config, options);
    if (sweep->parsed()) return simauct::cmd_sweep(config, options);
    if (decompose->parsed()) return simauct::cmd_decompose(config, options);
    if (opt->parsed()) return simauct::cmd_opt(config, options);
  } catch (const simauct::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return simauct::kExitConfigError;
  } catch (const simauct::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return simauct::kExitBudgetExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return simauct::kExitBudgetExceeded;
  }
  return simauct::kExitOk;
}
