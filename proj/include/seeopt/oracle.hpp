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

// Brute-force covariance search for two-antenna instances. Used as ground
// truth when checking the iterative solver.

#pragma once

#include <cstddef>

#include "seeopt/hermitian.hpp"
#include "seeopt/model.hpp"

namespace seeopt {

struct GridSpec {
  int phase_steps = 64;      // points on [0, 2 pi)
  int amplitude_steps = 64;  // intervals on [0, pi / 2]
  int power_steps = 128;     // intervals on the feasible power range of each shape
  int rank2_mix_steps = 8;   // intervals on [0.5, 1]
  double power_max = 0.0;    // <= 0 means use params.p_tx

  void validate() const;
};

enum class OracleObjectiveKind { See, RsMinusLambdaPt, TracePower, Rate };

struct OracleObjective {
  OracleObjectiveKind kind = OracleObjectiveKind::See;
  double lambda = 0.0;  // only read by RsMinusLambdaPt

  static OracleObjective see() { return {OracleObjectiveKind::See, 0.0}; }
  static OracleObjective rs_minus_lambda_pt(double lambda) { return {OracleObjectiveKind::RsMinusLambdaPt, lambda}; }
  static OracleObjective trace_power() { return {OracleObjectiveKind::TracePower, 0.0}; }
  static OracleObjective rate() { return {OracleObjectiveKind::Rate, 0.0}; }

  bool minimizes() const { return kind == OracleObjectiveKind::TracePower; }
};

struct OracleResult {
  bool feasible = false;
  HermitianMatrix q;
  double value = 0.0;         // after refinement
  double coarse_value = 0.0;  // best over the coarse grid alone
  // Estimated distance from the true optimum: the gain of the last, finest
  // refinement level.
  double resolution_slack = 0.0;
  std::size_t points_evaluated = 0;
  std::size_t feasible_shapes = 0;
};

/// Exhaustive search over Q = p (mu u u^H + (1 - mu) u_perp u_perp^H) with
/// u = (cos theta, e^{i phi} sin theta). For each shape the feasible range of
/// p is solved in closed form, so every evaluated point satisfies the
/// constraints exactly. Throws StructuralError unless n_t == 2.
OracleResult grid_search(const ChannelSet& ch, const SystemParams& params, OracleObjective objective,
                         const GridSpec& grid = {}, ConstraintMask mask = ConstraintMask::all(),
                         unsigned threads = 0);

}  // namespace seeopt
