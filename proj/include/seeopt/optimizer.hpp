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

// Dinkelbach outer iteration over the parameter lambda and the DC inner
// iteration that maximizes R_s(Q) - lambda P_t(Q) for a fixed lambda.

#pragma once

#include "seeopt/barrier.hpp"
#include "seeopt/model.hpp"
#include "seeopt/solution.hpp"

namespace seeopt {

struct OptimizerOptions {
  int max_outer = 50;
  int max_inner = 100;
  /// Start each inner loop after the first from the previous outer iterate.
  /// When false every inner loop restarts from Q = 0.
  bool warm_start = true;
  bool certify = true;
  BarrierOptions barrier;
};

struct DinkelbachState {
  double lambda_i = 0.0;
  int iter = 0;
  double delta_f = 0.0;
};

struct InnerResult {
  SolveStatus status = SolveStatus::IterLimit;
  HermitianMatrix q;
  double rate = 0.0;   // R_s at the returned iterate
  double power = 0.0;  // P_t at the returned iterate
  double eta = 0.0;    // rate - lambda * power
  std::vector<InnerRecord> trace;
};

/// interior_start must be strictly feasible for the masked feasible set.
InnerResult dc_inner_loop(const ChannelSet& ch, const SystemParams& params, double lambda_i,
                          const HermitianMatrix& q_init, const HermitianMatrix& interior_start,
                          ConstraintMask mask = ConstraintMask::all(), const OptimizerOptions& opts = {},
                          int outer_iter = 0);

/// Convenience overload that runs phase-I first; Infeasible when it fails.
InnerResult dc_inner_loop(const ChannelSet& ch, const SystemParams& params, double lambda_i,
                          const HermitianMatrix& q_init, ConstraintMask mask = ConstraintMask::all(),
                          const OptimizerOptions& opts = {});

/// SEE-maximizing covariance. lambda_0 = 0.
Solution dinkelbach_solve(const ChannelSet& ch, const SystemParams& params, const OptimizerOptions& opts = {});

}  // namespace seeopt
