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

#include "seeopt/optimizer.hpp"

#include <cmath>

#include "seeopt/subproblem.hpp"

namespace seeopt {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::IterLimit: return "IterLimit";
  }
  return "?";
}

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::SeeMax: return "see_max";
    case Scheme::PowerMin: return "power_min";
    case Scheme::RateMax: return "rate_max";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "see_max") return Scheme::SeeMax;
  if (name == "power_min") return Scheme::PowerMin;
  if (name == "rate_max") return Scheme::RateMax;
  return std::nullopt;
}

namespace {

void require_dims(const ChannelSet& ch, const SystemParams& params) {
  params.validate();
  if (ch.n_t() != params.n_t) throw StructuralError("channel length does not match n_t");
}

}  // namespace

InnerResult dc_inner_loop(const ChannelSet& ch, const SystemParams& params, double lambda_i,
                          const HermitianMatrix& q_init, const HermitianMatrix& interior_start, ConstraintMask mask,
                          const OptimizerOptions& opts, int outer_iter) {
  if (!(lambda_i >= 0.0)) throw ContractViolation("dc_inner_loop: lambda must be >= 0");
  InnerResult out;
  out.q = q_init;
  out.rate = secrecy_rate(ch, out.q);
  out.power = transmit_power(params, out.q);
  out.eta = out.rate - lambda_i * out.power;

  for (int k = 1; k <= opts.max_inner; ++k) {
    const auto sub = LinearizedSubproblem::make(ch, params, lambda_i, out.q, mask);
    const SolverReport rep = solve_linearized(sub, &interior_start, opts.barrier);
    if (rep.status == SolverStatus::Infeasible) {
      out.status = SolveStatus::Infeasible;
      return out;
    }
    const double rate = secrecy_rate(ch, rep.q_opt);
    const double power = transmit_power(params, rep.q_opt);
    const double eta = rate - lambda_i * power;
    const double delta = eta - out.eta;
    out.trace.push_back({outer_iter, k, eta, delta});
    out.q = rep.q_opt;
    out.rate = rate;
    out.power = power;
    out.eta = eta;
    if (std::abs(delta) <= params.zeta_inner) {
      out.status = SolveStatus::Converged;
      return out;
    }
  }
  out.status = SolveStatus::IterLimit;
  return out;
}

InnerResult dc_inner_loop(const ChannelSet& ch, const SystemParams& params, double lambda_i,
                          const HermitianMatrix& q_init, ConstraintMask mask, const OptimizerOptions& opts) {
  require_dims(ch, params);
  const Phase1Result p1 = phase1_feasible_point(ch, params, mask, opts.barrier);
  if (!p1.feasible) {
    InnerResult out;
    out.status = SolveStatus::Infeasible;
    out.q = HermitianMatrix::zero(ch.n_t());
    return out;
  }
  return dc_inner_loop(ch, params, lambda_i, q_init, p1.q, mask, opts, 0);
}

Solution dinkelbach_solve(const ChannelSet& ch, const SystemParams& params, const OptimizerOptions& opts) {
  require_dims(ch, params);
  const std::size_t n = ch.n_t();
  Solution sol;
  sol.scheme = Scheme::SeeMax;
  sol.notes.push_back(
      "returned rate, power and covariance are those of the final inner solve; lambda_final is the "
      "parameter that solve used and see = rate / power is the next parameter value");

  const Phase1Result p1 = phase1_feasible_point(ch, params, ConstraintMask::all(), opts.barrier);
  if (!p1.feasible) {
    sol.status = SolveStatus::Infeasible;
    sol.q_opt = HermitianMatrix::zero(n);
    sol.power = transmit_power(params, sol.q_opt);
    sol.certification = certify_rank(sol.q_opt);
    sol.notes.push_back("phase-I minimized max violation " + std::to_string(p1.max_violation));
    return sol;
  }

  DinkelbachState state;
  HermitianMatrix q_prev = HermitianMatrix::zero(n);
  sol.status = SolveStatus::IterLimit;
  for (state.iter = 0; state.iter < opts.max_outer; ++state.iter) {
    const HermitianMatrix q_init = (state.iter == 0 || !opts.warm_start) ? HermitianMatrix::zero(n) : q_prev;
    const InnerResult inner = dc_inner_loop(ch, params, state.lambda_i, q_init, p1.q, ConstraintMask::all(), opts,
                                            state.iter);
    sol.trace.inner.insert(sol.trace.inner.end(), inner.trace.begin(), inner.trace.end());
    if (inner.status == SolveStatus::Infeasible) {
      // Cannot happen once phase-I succeeded: every subproblem shares its feasible set.
      throw ContractViolation("dinkelbach_solve: subproblem became infeasible");
    }
    state.delta_f = std::abs(inner.rate - state.lambda_i * inner.power);
    sol.trace.outer.push_back({state.iter, state.lambda_i, inner.rate, inner.power, state.delta_f});
    q_prev = inner.q;
    sol.q_opt = inner.q;
    sol.secrecy_rate = inner.rate;
    sol.power = inner.power;
    sol.lambda_final = state.lambda_i;
    const double next = inner.power > 0.0 ? inner.rate / inner.power : 0.0;
    if (state.delta_f <= params.eps_outer) {
      sol.status = SolveStatus::Converged;
      break;
    }
    state.lambda_i = next;
  }
  sol.see = sol.power > 0.0 ? sol.secrecy_rate / sol.power : 0.0;
  if (opts.certify) {
    sol.certification = certify(ch, params, sol.lambda_final, sol.q_opt, is_feasible(params, ch, sol.q_opt, 1e-6));
    sol.notes.push_back("certification uses the linear interference gradient h_p h_p^H");
  } else {
    sol.certification = certify_rank(sol.q_opt);
  }
  return sol;
}

}  // namespace seeopt
