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

// Monte-Carlo sweeps over seeded channel realizations.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "seeopt/model.hpp"
#include "seeopt/optimizer.hpp"
#include "seeopt/rng.hpp"
#include "seeopt/solution.hpp"

namespace seeopt {

/// Sweep variable names: r_d, e_s, e_s_db, p_tx, p_tx_db, p_f, p_f_db.
/// An empty name means a single point at the base parameters.
struct SweepSpec {
  std::string variable;
  std::vector<double> values;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int trials = 1;
  SystemParams params;  // params.n_t is the antenna count
  SweepSpec sweep;
  std::vector<Scheme> schemes{Scheme::SeeMax};
  unsigned threads = 0;  // 0 picks the hardware concurrency

  /// Throws StructuralError on an invalid config, including any sweep value
  /// that yields invalid parameters.
  void validate() const;
  /// Base parameters with the sweep variable set to `value`.
  SystemParams params_at(double value) const;
  std::vector<double> sweep_points() const;
};

/// CSCG channels: real and imaginary parts i.i.d. N(0, 1/2), drawn as h_s, h_e, h_p.
ChannelSet sample_channels(CounterRng& rng, std::size_t n_t);

/// Channels of Monte-Carlo trial `trial`, shared by every sweep value and scheme.
ChannelSet trial_channels(std::uint64_t seed, int trial, std::size_t n_t);

struct SweepRow {
  std::size_t sweep_index = 0;
  double sweep_value = 0.0;
  int trial = 0;
  Scheme scheme = Scheme::SeeMax;
  std::string status;  // converged, iter_limit, infeasible, below_target, error
  bool feasible = false;
  double see = 0.0;
  double rate = 0.0;
  double power = 0.0;
  int rank = 0;
  int outer_iters = 0;
  int inner_iters_total = 0;
  HermitianMatrix q_opt;
  std::string error;
};

struct SweepResult {
  std::string variable;
  std::vector<double> values;
  std::vector<SweepRow> rows;  // ordered by (sweep index, trial, scheme order in the config)
};

SweepRow evaluate_scheme(Scheme scheme, const ChannelSet& ch, const SystemParams& params,
                         const OptimizerOptions& opts = {});

/// Per-trial failures are recorded in the row and never abort the sweep.
SweepResult run_sweep(const ExperimentConfig& config, const OptimizerOptions& opts = {});

struct SchemeSummary {
  double sweep_value = 0.0;
  Scheme scheme = Scheme::SeeMax;
  int trials = 0;
  int feasible = 0;
  double mean_see_all = 0.0;     // infeasible trials count as zero
  double mean_see_feasible = 0.0;  // feasible trials only; 0 when there are none
  double mean_rate_feasible = 0.0;
  double mean_power_feasible = 0.0;
};

std::vector<SchemeSummary> summarize(const SweepResult& result, const std::vector<Scheme>& schemes);

void write_sweep_csv(std::ostream& os, const SweepResult& result);
void write_summary_csv(std::ostream& os, const std::string& variable, const std::vector<SchemeSummary>& summary);

}  // namespace seeopt
