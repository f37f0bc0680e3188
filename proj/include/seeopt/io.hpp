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

// JSON and CSV exchange formats for instances, configs, and results.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "seeopt/harness.hpp"
#include "seeopt/model.hpp"
#include "seeopt/oracle.hpp"
#include "seeopt/solution.hpp"

namespace seeopt {

struct Instance {
  ChannelSet channels;
  SystemParams params;
};

/// Instance layout:
///   {"n_t": 2, "channels": {"h_s": [[re, im], ...], "h_e": ..., "h_p": ...}, "params": {...}}
/// Params accept r_d, e_s, p_f, p_tx, p_c, eta_eh, xi, eps_outer, zeta_inner; e_s, p_f and p_tx
/// may instead be given in dB with a "_db" suffix. Unknown keys are rejected.
Instance parse_instance(std::string_view json_text);
Instance load_instance(const std::filesystem::path& path);

/// Config layout:
///   {"seed": 7, "trials": 200, "n_t": 3, "params": {...},
///    "sweep": {"variable": "r_d", "values": [0.5, 1.0]}, "schemes": ["see_max"], "threads": 0}
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

std::string solution_to_json(const Solution& sol, int indent = 2);

/// One row per inner iterate, then one per outer iterate, grouped by outer index.
void write_trace_csv(std::ostream& os, const SolveTrace& trace);

std::string oracle_report_to_json(const Solution& solver, const OracleResult& oracle, double tolerance, int indent = 2);

}  // namespace seeopt
