// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: solve, trace, sweep, compare, oracle.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "seeopt/baselines.hpp"
#include "seeopt/harness.hpp"
#include "seeopt/io.hpp"
#include "seeopt/optimizer.hpp"
#include "seeopt/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct SolverFlags {
  bool cold_start = false;
  int max_outer = 50;
  int max_inner = 100;
  std::string barrier_log;

  void add_to(CLI::App* app) {
    app->add_flag("--cold-start", cold_start, "Restart every inner loop from Q = 0");
    app->add_option("--max-outer", max_outer, "Outer iteration cap")->check(CLI::PositiveNumber);
    app->add_option("--max-inner", max_inner, "Inner iteration cap")->check(CLI::PositiveNumber);
    app->add_option("--barrier-log", barrier_log, "Write per-stage barrier diagnostics (JSON lines) to this file");
  }
};

// Keeps the optional log stream alive alongside the options that point to it.
struct SolverSetup {
  seeopt::OptimizerOptions opts;
  std::unique_ptr<std::ofstream> log;

  explicit SolverSetup(const SolverFlags& f) {
    opts.warm_start = !f.cold_start;
    opts.max_outer = f.max_outer;
    opts.max_inner = f.max_inner;
    if (!f.barrier_log.empty()) {
      log = std::make_unique<std::ofstream>(f.barrier_log);
      if (!*log) throw seeopt::StructuralError("cannot open " + f.barrier_log);
      opts.barrier.debug = log.get();
    }
  }
};

std::ostream& output_stream(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw seeopt::StructuralError("cannot open " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure energy efficiency optimizer for MISO cognitive SWIPT links"};
  app.require_subcommand(1);

  SolverFlags flags;
  std::string input, output, summary_path, scheme_name = "see_max";
  unsigned threads = 0;
  bool threads_set = false;
  seeopt::GridSpec grid;
  double tolerance = 1e-3;

  CLI::App* solve = app.add_subcommand("solve", "Solve one instance and print the solution as JSON");
  solve->add_option("instance", input, "Instance JSON file")->required()->check(CLI::ExistingFile);
  solve->add_option("--scheme", scheme_name, "see_max, power_min or rate_max");
  flags.add_to(solve);

  CLI::App* trace = app.add_subcommand("trace", "Solve one instance and print the convergence trace as CSV");
  trace->add_option("instance", input, "Instance JSON file")->required()->check(CLI::ExistingFile);
  trace->add_option("-o,--output", output, "Output CSV (default stdout)");
  flags.add_to(trace);

  CLI::App* sweep = app.add_subcommand("sweep", "Run a seeded Monte-Carlo sweep");
  sweep->add_option("config", input, "Experiment config JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("-o,--output", output, "Per-trial CSV (default stdout)");
  sweep->add_option("--summary", summary_path, "Also write per-scheme means to this CSV");
  sweep->add_option("--threads", threads, "Worker threads (0 = hardware)")->each([&](const std::string&) {
    threads_set = true;
  });
  flags.add_to(sweep);

  CLI::App* compare = app.add_subcommand("compare", "Run a sweep for all three schemes and print mean SEE");
  compare->add_option("config", input, "Experiment config JSON")->required()->check(CLI::ExistingFile);
  compare->add_option("-o,--output", output, "Summary CSV (default stdout)");
  compare->add_option("--threads", threads, "Worker threads (0 = hardware)")->each([&](const std::string&) {
    threads_set = true;
  });
  flags.add_to(compare);

  CLI::App* oracle = app.add_subcommand("oracle", "Cross-check a two-antenna instance against grid search");
  oracle->add_option("instance", input, "Instance JSON file")->required()->check(CLI::ExistingFile);
  oracle->add_option("--phase-steps", grid.phase_steps)->check(CLI::Range(2, 1 << 16));
  oracle->add_option("--amplitude-steps", grid.amplitude_steps)->check(CLI::Range(2, 1 << 16));
  oracle->add_option("--power-steps", grid.power_steps)->check(CLI::Range(2, 1 << 16));
  oracle->add_option("--mix-steps", grid.rank2_mix_steps)->check(CLI::Range(2, 1 << 16));
  oracle->add_option("--tolerance", tolerance, "Allowed SEE difference before grid slack")->check(CLI::NonNegativeNumber);
  flags.add_to(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every usage error maps to the generic error code.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    SolverSetup setup(flags);
    if (solve->parsed()) {
      const auto scheme = seeopt::parse_scheme(scheme_name);
      if (!scheme) throw seeopt::StructuralError("unknown scheme '" + scheme_name + "'");
      const seeopt::Instance inst = seeopt::load_instance(input);
      const seeopt::Solution sol = seeopt::solve_scheme(*scheme, inst.channels, inst.params, setup.opts);
      std::cout << seeopt::solution_to_json(sol) << '\n';
      return sol.status == seeopt::SolveStatus::Infeasible ? kExitInfeasible : kExitOk;
    }
    if (trace->parsed()) {
      const seeopt::Instance inst = seeopt::load_instance(input);
      const seeopt::Solution sol = seeopt::dinkelbach_solve(inst.channels, inst.params, setup.opts);
      std::ofstream file;
      seeopt::write_trace_csv(output_stream(output, file), sol.trace);
      return sol.status == seeopt::SolveStatus::Infeasible ? kExitInfeasible : kExitOk;
    }
    if (sweep->parsed() || compare->parsed()) {
      seeopt::ExperimentConfig cfg = seeopt::load_config(input);
      if (threads_set) cfg.threads = threads;
      if (compare->parsed()) {
        cfg.schemes = {seeopt::Scheme::SeeMax, seeopt::Scheme::PowerMin, seeopt::Scheme::RateMax};
      }
      const seeopt::SweepResult result = seeopt::run_sweep(cfg, setup.opts);
      std::ofstream file;
      if (sweep->parsed()) {
        seeopt::write_sweep_csv(output_stream(output, file), result);
        if (!summary_path.empty()) {
          std::ofstream sum;
          seeopt::write_summary_csv(output_stream(summary_path, sum), result.variable,
                                    seeopt::summarize(result, cfg.schemes));
        }
      } else {
        seeopt::write_summary_csv(output_stream(output, file), result.variable,
                                  seeopt::summarize(result, cfg.schemes));
      }
      return kExitOk;
    }
    if (oracle->parsed()) {
      const seeopt::Instance inst = seeopt::load_instance(input);
      const seeopt::Solution sol = seeopt::dinkelbach_solve(inst.channels, inst.params, setup.opts);
      const seeopt::OracleResult res = seeopt::grid_search(inst.channels, inst.params, seeopt::OracleObjective::see(), grid);
      std::cout << seeopt::oracle_report_to_json(sol, res, tolerance) << '\n';
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
