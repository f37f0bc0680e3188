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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "seeopt/barrier.hpp"
#include "seeopt/harness.hpp"
#include "seeopt/optimizer.hpp"
#include "seeopt/oracle.hpp"
#include "seeopt/subproblem.hpp"
#include "test_support.hpp"

namespace seeopt {
namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Dinkelbach against the exhaustive two-antenna search.
Verdict oracle_equivalence() {
  constexpr int kWanted = 100;
  const SystemParams p = testing::reference_params(2);
  const auto t0 = std::chrono::steady_clock::now();
  int compared = 0, disagreements = 0, trial = 0;
  double worst = 0.0;
  for (; compared < kWanted && trial < 1000; ++trial) {
    const ChannelSet ch = trial_channels(1001, trial, 2);
    const Solution s = dinkelbach_solve(ch, p);
    const OracleResult o = grid_search(ch, p, OracleObjective::see());
    if ((s.status != SolveStatus::Infeasible) != o.feasible) {
      ++disagreements;
      continue;
    }
    if (!o.feasible) continue;
    ++compared;
    const double diff = std::abs(s.see - o.value);
    worst = std::max(worst, diff);
    if (diff > std::max(1e-3, o.resolution_slack)) ++disagreements;
  }
  const double elapsed = seconds_since(t0);
  Verdict v;
  v.pass = compared == kWanted && disagreements == 0 && elapsed <= 60.0;
  v.detail = format("%d instances, %d disagreements, max |diff| %.2e, %.1f s", compared, disagreements, worst, elapsed);
  return v;
}

struct ReferenceRuns {
  std::vector<Solution> feasible;
  int drawn = 0;
};

// The feasible instances shared by criteria 2 to 4.
const ReferenceRuns& reference_runs() {
  static const ReferenceRuns runs = [] {
    ReferenceRuns r;
    const SystemParams p = testing::reference_params(3);
    for (; r.feasible.size() < 500 && r.drawn < 5000; ++r.drawn) {
      Solution s = dinkelbach_solve(trial_channels(2002, r.drawn, 3), p);
      if (s.status != SolveStatus::Infeasible) r.feasible.push_back(std::move(s));
    }
    return r;
  }();
  return runs;
}

// 2. Convergence at the reference operating point.
Verdict dinkelbach_convergence() {
  const ReferenceRuns& r = reference_runs();
  int bad = 0, max_outer = 0;
  double max_df = 0.0;
  for (const Solution& s : r.feasible) {
    max_outer = std::max(max_outer, s.outer_iters());
    const double df = s.trace.outer.empty() ? INFINITY : s.trace.outer.back().delta_f;
    max_df = std::max(max_df, df);
    if (s.status != SolveStatus::Converged || s.outer_iters() > 15 || !(df <= 1e-3)) ++bad;
  }
  Verdict v;
  v.pass = r.feasible.size() == 500 && bad == 0;
  v.detail = format("%zu feasible of %d drawn, %d failing, max outer %d, max final delta_f %.2e", r.feasible.size(),
                    r.drawn, bad, max_outer, max_df);
  return v;
}

// 3. Outer parameter and inner objective never decrease.
Verdict monotonicity() {
  const ReferenceRuns& r = reference_runs();
  int outer_drops = 0, inner_drops = 0;
  double worst_outer = 0.0, worst_inner = 0.0;
  for (const Solution& s : r.feasible) {
    for (std::size_t i = 1; i < s.trace.outer.size(); ++i) {
      const double d = s.trace.outer[i].lambda - s.trace.outer[i - 1].lambda;
      worst_outer = std::min(worst_outer, d);
      if (d < -1e-9) ++outer_drops;
    }
    for (const InnerRecord& rec : s.trace.inner) {
      worst_inner = std::min(worst_inner, rec.delta_eta);
      if (rec.delta_eta < -1e-9) ++inner_drops;
    }
  }
  Verdict v;
  v.pass = !r.feasible.empty() && outer_drops == 0 && inner_drops == 0;
  v.detail = format("%zu trials, lambda drops %d (worst %.1e), eta drops %d (worst %.1e)", r.feasible.size(),
                    outer_drops, worst_outer, inner_drops, worst_inner);
  return v;
}

// 4. Optimal covariances are rank one.
Verdict rank_one() {
  const ReferenceRuns& r = reference_runs();
  int converged = 0, bad = 0;
  double worst = 0.0;
  for (const Solution& s : r.feasible) {
    if (s.status != SolveStatus::Converged) continue;
    ++converged;
    worst = std::max(worst, s.certification.eig_ratio);
    if (s.certification.rank != 1 || s.certification.eig_ratio > 1e-4) ++bad;
  }
  Verdict v;
  v.pass = converged > 0 && bad == 0;
  v.detail = format("%d converged, %d not rank one, max eig_ratio %.2e", converged, bad, worst);
  return v;
}

ExperimentConfig sweep_config(double p_tx_db, double e_s_db, std::vector<Scheme> schemes) {
  ExperimentConfig c;
  c.seed = 5005;
  c.trials = 200;
  c.params = testing::reference_params(3);
  c.params.p_tx = db_to_linear(p_tx_db);
  c.params.e_s = db_to_linear(e_s_db);
  c.sweep = {"r_d", {0.5, 1.0, 1.5, 2.0, 2.5}};
  c.schemes = std::move(schemes);
  return c;
}

// 5. Mean SEE falls with the rate target and the energy floor; extra power
// budget leaves the optimum unchanged.
Verdict sweep_shape() {
  const std::vector<double> e_s_db{-20.0, 0.0};
  std::map<std::pair<double, double>, SweepResult> runs;  // (p_tx_db, e_s_db)
  for (double ptx : {13.0, 20.0}) {
    for (double es : e_s_db) runs[{ptx, es}] = run_sweep(sweep_config(ptx, es, {Scheme::SeeMax}));
  }
  std::map<double, std::vector<double>> means;  // e_s_db -> mean SEE per r_d at 20 dB
  for (double es : e_s_db) {
    for (const SchemeSummary& s : summarize(runs[{20.0, es}], {Scheme::SeeMax})) means[es].push_back(s.mean_see_all);
  }
  int rd_violations = 0, es_violations = 0;
  for (double es : e_s_db) {
    for (std::size_t i = 1; i < means[es].size(); ++i) rd_violations += means[es][i] > means[es][i - 1];
  }
  for (std::size_t i = 0; i < means[0.0].size(); ++i) es_violations += means[0.0][i] > means[-20.0][i];

  int compared = 0, power_violations = 0;
  double worst = 0.0;
  for (double es : e_s_db) {
    const SweepResult& lo = runs[{13.0, es}];
    const SweepResult& hi = runs[{20.0, es}];
    for (std::size_t i = 0; i < lo.rows.size(); ++i) {
      if (!lo.rows[i].feasible) continue;
      ++compared;
      const double d = hi.rows[i].feasible ? std::abs(hi.rows[i].see - lo.rows[i].see) : INFINITY;
      worst = std::max(worst, d);
      if (!(d <= 1e-3)) ++power_violations;
    }
  }
  std::ostringstream curve;
  for (double es : e_s_db) {
    curve << " E_s " << es << " dB:";
    for (double m : means[es]) curve << ' ' << format("%.4f", m);
  }
  Verdict v;
  v.pass = rd_violations == 0 && es_violations == 0 && power_violations == 0 && compared > 0;
  v.detail = format("r_d increases %d, E_s increases %d, 13->20 dB: %d of %d beyond 1e-3 (max %.2e);", rd_violations,
                    es_violations, power_violations, compared, worst) +
             curve.str();
  return v;
}

// 6. SEE maximization dominates both baselines; the rate-maximizing
// covariance does not depend on the rate target.
Verdict scheme_dominance() {
  const std::vector<Scheme> schemes{Scheme::SeeMax, Scheme::PowerMin, Scheme::RateMax};
  const SweepResult r = run_sweep(sweep_config(20.0, -20.0, schemes));
  std::map<std::pair<std::size_t, Scheme>, double> mean;
  for (const SchemeSummary& s : summarize(r, schemes)) {
    const auto it = std::find(r.values.begin(), r.values.end(), s.sweep_value);
    mean[{static_cast<std::size_t>(it - r.values.begin()), s.scheme}] = s.mean_see_all;
  }
  int dominance_violations = 0;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    dominance_violations += mean[{i, Scheme::SeeMax}] < mean[{i, Scheme::PowerMin}];
    dominance_violations += mean[{i, Scheme::SeeMax}] < mean[{i, Scheme::RateMax}];
  }
  std::map<int, const SweepRow*> first_rate_max;
  int q_violations = 0;
  double worst = 0.0;
  for (const SweepRow& row : r.rows) {
    if (row.scheme != Scheme::RateMax || !row.feasible) continue;
    const auto [it, inserted] = first_rate_max.emplace(row.trial, &row);
    if (inserted) continue;
    const double d = testing::max_abs_diff(row.q_opt, it->second->q_opt);
    worst = std::max(worst, d);
    if (d > 1e-6) ++q_violations;
  }
  std::ostringstream curve;
  for (Scheme s : schemes) {
    curve << ' ' << to_string(s) << ':';
    for (std::size_t i = 0; i < r.values.size(); ++i) curve << ' ' << format("%.4f", mean[{i, s}]);
  }
  Verdict v;
  v.pass = dominance_violations == 0 && q_violations == 0;
  v.detail = format("dominance violations %d, rate_max covariance spread %.2e;", dominance_violations, worst) +
             curve.str();
  return v;
}

// 7. Barrier gradients, duality gaps and phase-I verdicts.
Verdict solver_unit() {
  int fixtures = 0, grad_fail = 0, gap_fail = 0, optimal = 0;
  double worst_grad = 0.0, worst_gap = 0.0;
  for (int trial = 0; fixtures < 100 && trial < 1000; ++trial) {
    const ChannelSet ch = trial_channels(7007, trial, 3);
    const SystemParams p = testing::reference_params(3);
    const Phase1Result p1 = phase1_feasible_point(ch, p);
    if (!p1.feasible) continue;
    ++fixtures;
    const double lambda = 0.05 * (trial % 8);
    const LinearizedSubproblem sub = LinearizedSubproblem::make(ch, p, lambda, 0.5 * p1.q);
    const BarrierProblem bp = sub.barrier_problem(build_feasible_set(ch, p));
    const std::vector<double> x(p1.q.coords().begin(), p1.q.coords().end());
    for (double t : {1.0, 10.0, 100.0}) {
      auto merit = [&](std::span<const double> y) { return barrier_merit(bp, y, t); };
      const double e = testing::fd_gradient_error(merit, x, barrier_gradient(bp, x, t));
      worst_grad = std::max(worst_grad, e);
      if (!(e <= 1e-4)) ++grad_fail;
    }
    const SolverReport rep = solve_linearized(sub, &p1.q);
    if (rep.status != SolverStatus::Optimal) continue;
    ++optimal;
    worst_gap = std::max(worst_gap, rep.duality_gap);
    if (!(rep.duality_gap <= 1e-7)) ++gap_fail;
  }

  int verdict_mismatch = 0, oracle_feasible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ChannelSet ch = trial_channels(7008, trial, 2);
    SystemParams p = testing::reference_params(2);
    p.r_d = 1.5;
    const bool solver = phase1_feasible_point(ch, p).feasible;
    const bool oracle = grid_search(ch, p, OracleObjective::trace_power()).feasible;
    oracle_feasible += oracle;
    verdict_mismatch += solver != oracle;
  }
  Verdict v;
  v.pass = fixtures == 100 && optimal > 0 && grad_fail == 0 && gap_fail == 0 && verdict_mismatch == 0;
  v.detail = format(
      "gradient max rel err %.1e over %d points, %d optimal solves with max gap %.1e, "
      "phase-I verdict mismatches %d of 100 (%d feasible)",
      worst_grad, 3 * fixtures, optimal, worst_gap, verdict_mismatch, oracle_feasible);
  return v;
}

// 8. Sweeps are reproducible byte for byte.
Verdict determinism() {
  ExperimentConfig c = sweep_config(13.0, 0.0, {Scheme::SeeMax, Scheme::PowerMin, Scheme::RateMax});
  c.trials = 20;
  auto csv = [&](unsigned threads) {
    c.threads = threads;
    std::ostringstream os;
    write_sweep_csv(os, run_sweep(c));
    return os.str();
  };
  const std::string a = csv(0), b = csv(0), single = csv(1), several = csv(4);
  Verdict v;
  v.pass = a == b && a == single && a == several;
  v.detail = format("%zu bytes, repeat %s, 1 vs 4 threads %s", a.size(), a == b ? "identical" : "differs",
                    single == several ? "identical" : "differs");
  return v;
}

}  // namespace
}  // namespace seeopt

int main() {
  using namespace seeopt;
  const std::vector<std::tuple<int, const char*, std::function<Verdict()>>> criteria{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "dinkelbach convergence", dinkelbach_convergence},
      {3, "monotonicity", monotonicity},
      {4, "rank one optimum", rank_one},
      {5, "sweep shape", sweep_shape},
      {6, "scheme dominance", scheme_dominance},
      {7, "solver unit suite", solver_unit},
      {8, "determinism", determinism},
  };
  int failures = 0;
  for (const auto& [id, name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
