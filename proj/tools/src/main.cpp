// Copyright (c) 2026 The adacomm Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include "CLI11.hpp"

#include "adacomm/engine.hpp"
#include "adacomm/tools/commands.hpp"
#include "adacomm/tools/manifest.hpp"

namespace {

using namespace adacomm::tools;

void add_bound_flags(CLI::App* cmd, BoundOptions& o) {
  cmd->add_option("--config", o.config, "Take constants from a run config")
      ->check(CLI::ExistingFile);
  cmd->add_option("--F1", o.initial_loss, "Initial loss F(x_1)");
  cmd->add_option("--Finf", o.loss_floor, "Loss lower bound F_inf");
  cmd->add_option("--L", o.smoothness, "Smoothness constant");
  cmd->add_option("--C", o.variance, "Gradient noise variance");
  cmd->add_option("--m", o.workers, "Number of workers");
  cmd->add_option("--Y", o.compute_time, "Per-step compute time");
  cmd->add_option("--D", o.comm_delay, "Communication delay");
  cmd->add_option("--lr", o.lr, "Learning rate");
}

void add_delay_flags(CLI::App* cmd, DelayOptions& o) {
  cmd->add_option("--config", o.config, "Take the delay model from a run config")
      ->check(CLI::ExistingFile);
  cmd->add_option("--dist", o.dist,
                  "constant | exponential | shifted_exponential")
      ->capture_default_str();
  cmd->add_option("--y", o.compute_mean,
                  "Compute time (constant) or its mean")
      ->capture_default_str();
  cmd->add_option("--shift", o.shift, "Shift for shifted_exponential")
      ->capture_default_str();
  cmd->add_option("--D0", o.base_delay, "Base communication delay")
      ->capture_default_str();
  cmd->add_option("--scaling", o.scaling, "constant | log2_tree | linear")
      ->capture_default_str();
  cmd->add_option("--workers", o.workers, "Worker counts, comma separated")
      ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic-averaging SGD simulator with adaptive communication"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run one training simulation");
  simulate->add_option("--config", sim.config, "Run config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--out", sim.out, "Trace CSV")->required();
  simulate->add_option("--seed", sim.seed, "Override train.seed");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run one simulation per sweep value");
  sweep_cmd->add_option("--config", sweep.config, "Run config with a sweep section")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", sweep.out, "Summary CSV")->required();
  sweep_cmd->add_option("--seed", sweep.seed, "Override train.seed");
  sweep_cmd->add_option("--jobs", sweep.jobs, "Concurrent runs (0 = all cores)");

  RuntimeOptions runtime;
  auto* runtime_cmd =
      app.add_subcommand("runtime", "Per-iteration runtime statistics");
  RuntimeOptions speedup;
  speedup.speedup = true;
  speedup.taus = {1, 2, 5, 10, 100};
  auto* speedup_cmd =
      app.add_subcommand("speedup", "Runtime statistics with speedup over tau=1");
  for (auto [cmd, o] : {std::pair{runtime_cmd, &runtime},
                        std::pair{speedup_cmd, &speedup}}) {
    add_delay_flags(cmd, o->delay);
    cmd->add_option("--taus", o->taus, "Communication periods, comma separated")
        ->delimiter(',');
    cmd->add_option("--samples", o->samples, "Monte Carlo samples")
        ->capture_default_str();
    cmd->add_option("--seed", o->seed, "Sampling seed")->capture_default_str();
    cmd->add_option("--out", o->out, "Output CSV")->required();
  }

  BoundCurveOptions bound;
  auto* bound_cmd = app.add_subcommand("bound", "Error-runtime bound versus T");
  add_bound_flags(bound_cmd, bound.bound);
  bound_cmd->add_option("--taus", bound.taus, "Periods, comma separated")
      ->delimiter(',');
  bound_cmd->add_option("--t-min", bound.t_min, "Smallest T")->capture_default_str();
  bound_cmd->add_option("--t-max", bound.t_max, "Largest T")->capture_default_str();
  bound_cmd->add_option("--points", bound.points, "T grid size")
      ->capture_default_str();
  bound_cmd->add_option("--out", bound.out, "Output CSV")->required();

  OptTauOptions opt;
  auto* opt_cmd = app.add_subcommand("opt-tau", "Bound-optimal communication period");
  add_bound_flags(opt_cmd, opt.bound);
  opt_cmd->add_option("--T", opt.horizon, "Wall-clock horizon")->required();
  opt_cmd->add_option("--out", opt.out, "Optional CSV");

  ConditionsOptions cond;
  auto* cond_cmd = app.add_subcommand(
      "check-conditions", "Asymptotic lr/tau conditions for a rate family");
  cond_cmd
      ->add_option("--lr", cond.lr, "const:a | power:a,p")
      ->required();
  cond_cmd
      ->add_option("--tau", cond.tau, "const:t | power:a,q | bounded:lo,hi")
      ->required();

  GridOptions grid;
  auto* grid_cmd = app.add_subcommand("grid-tau0", "Pick tau_0 by a short search");
  grid_cmd->add_option("--config", grid.config, "Run config")
      ->required()
      ->check(CLI::ExistingFile);
  grid_cmd->add_option("--candidates", grid.candidates, "Periods, comma separated")
      ->delimiter(',');
  grid_cmd->add_option("--budget", grid.budget, "Wall-clock budget per candidate");
  grid_cmd->add_option("--seed", grid.seed, "Override train.seed");
  grid_cmd->add_option("--out", grid.out, "Optional CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim, std::cout);
    if (sweep_cmd->parsed()) return run_sweep_command(sweep, std::cout);
    if (runtime_cmd->parsed()) return run_runtime(runtime, std::cout);
    if (speedup_cmd->parsed()) return run_runtime(speedup, std::cout);
    if (bound_cmd->parsed()) return run_bound(bound, std::cout);
    if (opt_cmd->parsed()) return run_opt_tau(opt, std::cout);
    if (cond_cmd->parsed()) return run_check_conditions(cond, std::cout);
    if (grid_cmd->parsed()) return run_grid_tau0(grid, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const adacomm::NumericalError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitInternalError;
}
