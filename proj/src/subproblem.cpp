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

#include "seeopt/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace seeopt {

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> combine(double a, const std::vector<double>& x, double b, const std::vector<double>& y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

HermitianMatrix q_part(std::size_t n, std::span<const double> x) {
  return HermitianMatrix::from_coords(n, std::vector<double>(x.begin(), x.begin() + HermitianMatrix::dimension(n)));
}

SolverReport run_barrier(const BarrierProblem& bp, const HermitianMatrix& start, const BarrierOptions& opts) {
  const auto x0 = start.coords();
  const BarrierResult br = barrier_minimize(bp, {x0.begin(), x0.end()}, opts);
  SolverReport rep;
  rep.q_opt = q_part(bp.n_t, br.x);
  rep.status = br.status == BarrierStatus::Optimal ? SolverStatus::Optimal : SolverStatus::MaxIter;
  rep.newton_iters = br.newton_iters;
  rep.barrier_stages = br.stages;
  rep.kkt_residual = br.decrement;
  rep.duality_gap = br.gap;
  rep.objective = br.objective;
  return rep;
}

SolverReport infeasible_report(std::size_t n, const Phase1Result& p1) {
  SolverReport rep;
  rep.q_opt = HermitianMatrix::zero(n);
  rep.status = SolverStatus::Infeasible;
  rep.infeasibility = p1.max_violation;
  rep.newton_iters = p1.newton_iters;
  return rep;
}

}  // namespace

FeasibleSet build_feasible_set(const ChannelSet& ch, const SystemParams& params, ConstraintMask mask) {
  const std::size_t n = ch.n_t();
  const auto cs = quadratic_form_coeffs(ch.h_s);
  const auto ce = quadratic_form_coeffs(ch.h_e);
  const auto cp = quadratic_form_coeffs(ch.h_p);
  const auto tr = trace_coeffs(n);
  const double gain = std::exp2(params.r_d);

  std::vector<LinearConstraint> candidates;
  if (mask.secrecy) candidates.push_back({combine(gain, ce, -1.0, cs), 1.0 - gain});
  if (mask.energy) candidates.push_back({combine(-params.eta_eh, ce, 0.0, ce), params.eta_eh - params.e_s});
  if (mask.interference) candidates.push_back({cp, params.p_f});
  candidates.push_back({tr, params.p_tx});

  const double scale = std::max({1.0, max_abs(cs), max_abs(ce), max_abs(cp)});
  FeasibleSet fs;
  fs.n_t = n;
  for (auto& row : candidates) {
    if (max_abs(row.a) <= 1e-12 * scale) {
      // 0 <= b: constant row
      if (row.b < -1e-12 * std::max(1.0, std::abs(row.b))) fs.constant_violation = std::max(fs.constant_violation, -row.b);
      continue;
    }
    fs.rows.push_back(std::move(row));
  }
  return fs;
}

Phase1Result phase1_feasible_point(const ChannelSet& ch, const SystemParams& params, ConstraintMask mask,
                                   const BarrierOptions& opts) {
  params.validate();
  const std::size_t n = ch.n_t();
  const std::size_t nq = HermitianMatrix::dimension(n);
  const FeasibleSet fs = build_feasible_set(ch, params, mask);

  Phase1Result out;
  if (fs.constant_violation > 0.0) {
    out.q = HermitianMatrix::zero(n);
    out.max_violation = fs.constant_violation;
    return out;
  }

  BarrierProblem bp;
  bp.n_t = n;
  bp.extra_vars = 1;
  bp.objective.linear.assign(nq + 1, 0.0);
  bp.objective.linear[nq] = 1.0;
  for (const auto& r : fs.rows) {
    LinearConstraint row{r.a, r.b};
    row.a.push_back(-1.0);
    bp.constraints.push_back(std::move(row));
  }

  std::vector<double> x0(nq + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) x0[i] = params.p_tx / (2.0 * static_cast<double>(n));
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : fs.rows) {
    double v = -r.b;
    for (std::size_t k = 0; k < nq; ++k) v += r.a[k] * x0[k];
    worst = std::max(worst, v);
  }
  x0[nq] = worst + 1.0;

  // Stop once a centered point carries at least half of the best achievable
  // margin, or once the lower bound on the optimum proves infeasibility.
  auto on_stage = [&](std::span<const double> x, double, double gap) {
    const double s = x[nq];
    if (s < -kPhase1Margin && gap <= 0.5 * std::abs(s)) return true;
    if (s - gap > -kPhase1Margin && gap <= 1e-6 * std::max(1.0, std::abs(s))) return true;
    return false;
  };
  const BarrierResult br = barrier_minimize(bp, std::move(x0), opts, on_stage);
  out.max_violation = br.x[nq];
  out.newton_iters = br.newton_iters;
  out.feasible = out.max_violation < -kPhase1Margin;
  out.q = out.feasible ? q_part(n, br.x) : HermitianMatrix::zero(n);
  return out;
}

LinearizedSubproblem LinearizedSubproblem::make(const ChannelSet& ch, const SystemParams& params, double lambda_i,
                                                HermitianMatrix anchor, ConstraintMask mask) {
  if (anchor.size() != ch.n_t()) throw StructuralError("LinearizedSubproblem: anchor size mismatch");
  if (!is_psd(anchor)) throw ContractViolation("LinearizedSubproblem: anchor is not PSD");
  if (!(lambda_i >= 0.0)) throw ContractViolation("LinearizedSubproblem: lambda must be >= 0");
  LinearizedSubproblem sub{ch, params, lambda_i, std::move(anchor), 0.0, mask};
  sub.grad_coeff = 1.0 / ((1.0 + quadratic_form(ch.h_e, sub.q_anchor)) * std::numbers::ln2);
  return sub;
}

double LinearizedSubproblem::surrogate(const HermitianMatrix& q) const {
  const double ek = quadratic_form(ch.h_e, q_anchor);
  const double e = quadratic_form(ch.h_e, q);
  const double f_lin = std::log2(1.0 + ek) + grad_coeff * (e - ek);
  return std::log2(1.0 + quadratic_form(ch.h_s, q)) - f_lin - lambda_i * (q.trace() + params.p_c) / params.xi;
}

BarrierProblem LinearizedSubproblem::barrier_problem(const FeasibleSet& fs) const {
  const std::size_t n = ch.n_t();
  const double ek = quadratic_form(ch.h_e, q_anchor);
  BarrierProblem bp;
  bp.n_t = n;
  bp.constraints = fs.rows;
  bp.objective.linear = combine(grad_coeff, quadratic_form_coeffs(ch.h_e), lambda_i / params.xi, trace_coeffs(n));
  bp.objective.log_coeffs = quadratic_form_coeffs(ch.h_s);
  bp.objective.log_weight = 1.0;
  bp.objective.constant = std::log2(1.0 + ek) - grad_coeff * ek + lambda_i * params.p_c / params.xi;
  return bp;
}

const char* to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Optimal: return "Optimal";
    case SolverStatus::Infeasible: return "Infeasible";
    case SolverStatus::MaxIter: return "MaxIter";
  }
  return "?";
}

SolverReport solve_linearized(const LinearizedSubproblem& sub, const HermitianMatrix* interior_start,
                              const BarrierOptions& opts) {
  const std::size_t n = sub.ch.n_t();
  const FeasibleSet fs = build_feasible_set(sub.ch, sub.params, sub.mask);
  Phase1Result p1;
  if (interior_start == nullptr) {
    p1 = phase1_feasible_point(sub.ch, sub.params, sub.mask, opts);
    if (!p1.feasible) return infeasible_report(n, p1);
    interior_start = &p1.q;
  }
  SolverReport rep = run_barrier(sub.barrier_problem(fs), *interior_start, opts);
  rep.objective = -rep.objective;
  rep.newton_iters += p1.newton_iters;
  return rep;
}

SolverReport minimize_trace(const ChannelSet& ch, const SystemParams& params, const HermitianMatrix* interior_start,
                            const BarrierOptions& opts) {
  const std::size_t n = ch.n_t();
  const FeasibleSet fs = build_feasible_set(ch, params);
  Phase1Result p1;
  if (interior_start == nullptr) {
    p1 = phase1_feasible_point(ch, params, ConstraintMask::all(), opts);
    if (!p1.feasible) return infeasible_report(n, p1);
    interior_start = &p1.q;
  }
  BarrierProblem bp;
  bp.n_t = n;
  bp.constraints = fs.rows;
  bp.objective.linear = trace_coeffs(n);
  SolverReport rep = run_barrier(bp, *interior_start, opts);
  rep.newton_iters += p1.newton_iters;
  return rep;
}

}  // namespace seeopt
