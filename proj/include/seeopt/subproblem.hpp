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

// The convex subproblem solved at every DC step: maximize
//   log2(1 + h_s^H Q h_s) - f(Q, Q^k) - lambda (tr Q + P_c) / xi
// where f is the first-order expansion of log2(1 + h_e^H Q h_e) at the
// anchor Q^k, over the feasible set with the secrecy constraint in its exact
// linear form 1 + h_s^H Q h_s >= 2^R_d (1 + h_e^H Q h_e).

#pragma once

#include <vector>

#include "seeopt/barrier.hpp"
#include "seeopt/hermitian.hpp"
#include "seeopt/model.hpp"

namespace seeopt {

/// The feasible set as linear rows a . coords(Q) <= b. Rows whose gradient
/// vanishes are constant; they are dropped when satisfied and otherwise
/// recorded in constant_violation.
struct FeasibleSet {
  std::size_t n_t = 0;
  std::vector<LinearConstraint> rows;
  double constant_violation = 0.0;
};

FeasibleSet build_feasible_set(const ChannelSet& ch, const SystemParams& params,
                               ConstraintMask mask = ConstraintMask::all());

struct Phase1Result {
  bool feasible = false;
  HermitianMatrix q;           // strictly feasible, Q > 0, when feasible
  double max_violation = 0.0;  // minimized max row violation; <= -1e-6 when feasible
  int newton_iters = 0;
};

inline constexpr double kPhase1Margin = 1e-6;

/// Minimizes s subject to a_m . x - s <= b_m and Q > 0.
Phase1Result phase1_feasible_point(const ChannelSet& ch, const SystemParams& params,
                                   ConstraintMask mask = ConstraintMask::all(), const BarrierOptions& opts = {});

struct LinearizedSubproblem {
  ChannelSet ch;
  SystemParams params;
  double lambda_i = 0.0;
  HermitianMatrix q_anchor;
  double grad_coeff = 0.0;  // 1 / ((1 + h_e^H Q^k h_e) ln 2)
  ConstraintMask mask;

  static LinearizedSubproblem make(const ChannelSet& ch, const SystemParams& params, double lambda_i,
                                   HermitianMatrix anchor, ConstraintMask mask = ConstraintMask::all());

  /// The concave surrogate being maximized.
  double surrogate(const HermitianMatrix& q) const;
  /// Same problem in barrier form (minimizes the negated surrogate).
  BarrierProblem barrier_problem(const FeasibleSet& fs) const;
};

enum class SolverStatus { Optimal, Infeasible, MaxIter };

const char* to_string(SolverStatus s);

struct SolverReport {
  HermitianMatrix q_opt;
  double objective = 0.0;
  SolverStatus status = SolverStatus::MaxIter;
  int newton_iters = 0;
  int barrier_stages = 0;
  double kkt_residual = 0.0;   // Newton decrement / t at the last centered point
  double duality_gap = 0.0;    // barrier_parameter / t at the last stage
  double infeasibility = 0.0;  // phase-I certificate when status == Infeasible
};

/// interior_start must be strictly feasible for the subproblem's feasible set;
/// when null, phase-I supplies one.
SolverReport solve_linearized(const LinearizedSubproblem& sub, const HermitianMatrix* interior_start = nullptr,
                              const BarrierOptions& opts = {});

/// Minimizes tr(Q) over the feasible set (all constraints are linear in Q).
SolverReport minimize_trace(const ChannelSet& ch, const SystemParams& params,
                            const HermitianMatrix* interior_start = nullptr, const BarrierOptions& opts = {});

}  // namespace seeopt
