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

#include "seeopt/baselines.hpp"

#include "seeopt/subproblem.hpp"

namespace seeopt {

namespace {

Solution infeasible_solution(Scheme scheme, const SystemParams& params, std::size_t n) {
  Solution sol;
  sol.scheme = scheme;
  sol.status = SolveStatus::Infeasible;
  sol.q_opt = HermitianMatrix::zero(n);
  sol.power = transmit_power(params, sol.q_opt);
  sol.certification = certify_rank(sol.q_opt);
  return sol;
}

void fill_metrics(Solution& sol, const ChannelSet& ch, const SystemParams& params) {
  sol.secrecy_rate = secrecy_rate(ch, sol.q_opt);
  sol.power = transmit_power(params, sol.q_opt);
  sol.see = sol.power > 0.0 ? sol.secrecy_rate / sol.power : 0.0;
}

}  // namespace

Solution power_min(const ChannelSet& ch, const SystemParams& params, const OptimizerOptions& opts) {
  params.validate();
  const std::size_t n = ch.n_t();
  const Phase1Result p1 = phase1_feasible_point(ch, params, ConstraintMask::all(), opts.barrier);
  if (!p1.feasible) return infeasible_solution(Scheme::PowerMin, params, n);

  const SolverReport rep = minimize_trace(ch, params, &p1.q, opts.barrier);
  Solution sol;
  sol.scheme = Scheme::PowerMin;
  sol.status = rep.status == SolverStatus::Optimal ? SolveStatus::Converged : SolveStatus::IterLimit;
  sol.q_opt = rep.q_opt;
  fill_metrics(sol, ch, params);
  sol.certification = certify_rank(sol.q_opt);
  sol.notes.push_back("single convex solve of min tr(Q) with the exact linear secrecy constraint");
  return sol;
}

Solution rate_max(const ChannelSet& ch, const SystemParams& params, const OptimizerOptions& opts) {
  params.validate();
  const std::size_t n = ch.n_t();
  const ConstraintMask mask = ConstraintMask::without_secrecy();
  const Phase1Result p1 = phase1_feasible_point(ch, params, mask, opts.barrier);
  if (!p1.feasible) return infeasible_solution(Scheme::RateMax, params, n);

  const InnerResult inner = dc_inner_loop(ch, params, 0.0, HermitianMatrix::zero(n), p1.q, mask, opts, 0);
  Solution sol;
  sol.scheme = Scheme::RateMax;
  sol.status = inner.status;
  sol.q_opt = inner.q;
  sol.trace.inner = inner.trace;
  fill_metrics(sol, ch, params);
  sol.certification = opts.certify
                          ? certify(ch, params, 0.0, sol.q_opt, is_feasible(params, ch, sol.q_opt, 1e-6, mask), mask)
                          : certify_rank(sol.q_opt);
  sol.notes.push_back("secrecy-rate floor R_d is not enforced; the target is met when secrecy_rate >= r_d");
  return sol;
}

Solution solve_scheme(Scheme scheme, const ChannelSet& ch, const SystemParams& params, const OptimizerOptions& opts) {
  switch (scheme) {
    case Scheme::SeeMax: return dinkelbach_solve(ch, params, opts);
    case Scheme::PowerMin: return power_min(ch, params, opts);
    case Scheme::RateMax: return rate_max(ch, params, opts);
  }
  throw StructuralError("unknown scheme");
}

}  // namespace seeopt
