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

// Log-barrier path-following method over the Hermitian PSD cone.
//
// Decision vector x = [coords(Q), extra...] where Q is n_t x n_t Hermitian
// (see hermitian.hpp for the coordinate layout). Minimizes
//
//   f(x) = constant + linear . x - log_weight * log2(1 + log_coeffs . x)
//
// subject to a_m . x <= b_m and Q(x) > 0, using the barrier
// -ln det Q - sum_m ln(b_m - a_m . x) and a t-schedule t0, mu*t0, ...

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "seeopt/hermitian.hpp"

namespace seeopt {

struct LinearConstraint {
  std::vector<double> a;
  double b = 0.0;
};

struct BarrierObjective {
  std::vector<double> linear;
  std::vector<double> log_coeffs;  // empty when log_weight == 0
  double log_weight = 0.0;
  double constant = 0.0;
};

struct BarrierProblem {
  std::size_t n_t = 0;
  std::size_t extra_vars = 0;
  BarrierObjective objective;
  std::vector<LinearConstraint> constraints;

  std::size_t dimension() const { return HermitianMatrix::dimension(n_t) + extra_vars; }
  /// Barrier parameter: n_t for the log-det term plus one per linear row.
  double barrier_parameter() const { return static_cast<double>(n_t + constraints.size()); }
};

struct BarrierOptions {
  double t0 = 1.0;
  double mu = 10.0;
  double gap_tol = 1e-8;        // stop when barrier_parameter / t <= gap_tol
  int max_newton_per_stage = 200;
  int max_stages = 60;
  double armijo = 0.01;
  double shrink = 0.5;
  double boundary_fraction = 0.99;
  double newton_tol = 1e-10;    // stop centering when decrement^2 / 2 <= newton_tol
  std::ostream* debug = nullptr;  // JSON lines, one per stage
};

enum class BarrierStatus { Optimal, MaxIter };

struct StageRecord {
  double t = 0.0;
  int newton_steps = 0;
  double objective = 0.0;
  double gap = 0.0;
  std::vector<double> merit_history;  // t f + barrier after each accepted step, starting point first
  std::vector<double> x;              // centered point at the end of the stage
};

struct BarrierResult {
  std::vector<double> x;
  double objective = 0.0;
  BarrierStatus status = BarrierStatus::MaxIter;
  int newton_iters = 0;
  int stages = 0;
  double gap = 0.0;
  double decrement = 0.0;  // Newton decrement at the last centered point, divided by t
  std::vector<StageRecord> stage_log;
};

/// Called after each centered stage; returning true stops the method early.
using StageCallback = std::function<bool(std::span<const double> x, double t, double gap)>;

double barrier_objective_value(const BarrierProblem& p, std::span<const double> x);

/// Q(x) > 0 and every linear row strictly satisfied.
bool strictly_feasible(const BarrierProblem& p, std::span<const double> x);

/// t f(x) + barrier(x); +infinity outside the interior.
double barrier_merit(const BarrierProblem& p, std::span<const double> x, double t);

/// Analytic gradient of barrier_merit. x must be strictly feasible.
std::vector<double> barrier_gradient(const BarrierProblem& p, std::span<const double> x, double t);

/// x0 must be strictly feasible; throws ContractViolation otherwise.
BarrierResult barrier_minimize(const BarrierProblem& p, std::vector<double> x0, const BarrierOptions& opts,
                               const StageCallback& on_stage = {});

}  // namespace seeopt
