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

#include "seeopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <thread>

#include "seeopt/baselines.hpp"

namespace seeopt {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

const char* status_label(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::IterLimit: return "iter_limit";
  }
  return "error";
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw StructuralError("config: trials must be >= 1");
  if (schemes.empty()) throw StructuralError("config: at least one scheme is required");
  if (!sweep.variable.empty() && sweep.values.empty()) throw StructuralError("config: sweep has no values");
  for (double v : sweep_points()) params_at(v).validate();
}

SystemParams ExperimentConfig::params_at(double value) const {
  SystemParams p = params;
  const std::string& v = sweep.variable;
  if (v.empty()) {
  } else if (v == "r_d") {
    p.r_d = value;
  } else if (v == "e_s") {
    p.e_s = value;
  } else if (v == "e_s_db") {
    p.e_s = db_to_linear(value);
  } else if (v == "p_tx") {
    p.p_tx = value;
  } else if (v == "p_tx_db") {
    p.p_tx = db_to_linear(value);
  } else if (v == "p_f") {
    p.p_f = value;
  } else if (v == "p_f_db") {
    p.p_f = db_to_linear(value);
  } else {
    throw StructuralError("config: unknown sweep variable '" + v + "'");
  }
  return p;
}

std::vector<double> ExperimentConfig::sweep_points() const {
  return sweep.variable.empty() ? std::vector<double>{0.0} : sweep.values;
}

ChannelSet sample_channels(CounterRng& rng, std::size_t n_t) {
  const double scale = std::sqrt(0.5);
  auto draw = [&] {
    std::vector<cplx> v(n_t);
    for (auto& z : v) {
      const auto [re, im] = rng.normal_pair();
      z = {scale * re, scale * im};
    }
    return ComplexVector(std::move(v));
  };
  ComplexVector hs = draw();
  ComplexVector he = draw();
  ComplexVector hp = draw();
  return ChannelSet(std::move(hs), std::move(he), std::move(hp));
}

ChannelSet trial_channels(std::uint64_t seed, int trial, std::size_t n_t) {
  CounterRng rng = CounterRng::split(seed, static_cast<std::uint64_t>(trial));
  return sample_channels(rng, n_t);
}

SweepRow evaluate_scheme(Scheme scheme, const ChannelSet& ch, const SystemParams& params,
                         const OptimizerOptions& opts) {
  SweepRow row;
  row.scheme = scheme;
  try {
    const Solution sol = solve_scheme(scheme, ch, params, opts);
    row.status = status_label(sol.status);
    row.feasible = sol.status != SolveStatus::Infeasible;
    if (scheme == Scheme::RateMax && row.feasible && !meets_rate_target(sol, params)) {
      row.status = "below_target";
      row.feasible = false;
    }
    row.see = sol.see;
    row.rate = sol.secrecy_rate;
    row.power = sol.power;
    row.rank = sol.certification.rank;
    row.outer_iters = sol.outer_iters();
    row.inner_iters_total = sol.inner_iters_total();
    row.q_opt = sol.q_opt;
  } catch (const std::exception& e) {
    row.status = "error";
    row.feasible = false;
    row.error = e.what();
  }
  return row;
}

SweepResult run_sweep(const ExperimentConfig& config, const OptimizerOptions& opts) {
  config.validate();
  SweepResult out;
  out.variable = config.sweep.variable;
  out.values = config.sweep_points();

  const std::size_t n_values = out.values.size();
  const std::size_t n_trials = static_cast<std::size_t>(config.trials);
  const std::size_t n_schemes = config.schemes.size();
  const std::size_t items = n_values * n_trials;
  out.rows.resize(items * n_schemes);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t item = next++; item < items; item = next++) {
      const std::size_t vi = item / n_trials;
      const int trial = static_cast<int>(item % n_trials);
      const SystemParams params = config.params_at(out.values[vi]);
      const ChannelSet ch = trial_channels(config.seed, trial, params.n_t);
      for (std::size_t si = 0; si < n_schemes; ++si) {
        SweepRow row = evaluate_scheme(config.schemes[si], ch, params, opts);
        row.sweep_index = vi;
        row.sweep_value = out.values[vi];
        row.trial = trial;
        out.rows[item * n_schemes + si] = std::move(row);
      }
    }
  };

  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, items));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return out;
}

std::vector<SchemeSummary> summarize(const SweepResult& result, const std::vector<Scheme>& schemes) {
  std::vector<SchemeSummary> out;
  for (std::size_t vi = 0; vi < result.values.size(); ++vi) {
    for (Scheme s : schemes) {
      SchemeSummary sum;
      sum.sweep_value = result.values[vi];
      sum.scheme = s;
      double see_sum = 0.0, rate_sum = 0.0, power_sum = 0.0;
      for (const SweepRow& r : result.rows) {
        if (r.sweep_index != vi || r.scheme != s) continue;
        ++sum.trials;
        if (!r.feasible) continue;
        ++sum.feasible;
        see_sum += r.see;
        rate_sum += r.rate;
        power_sum += r.power;
      }
      if (sum.trials > 0) sum.mean_see_all = see_sum / sum.trials;
      if (sum.feasible > 0) {
        sum.mean_see_feasible = see_sum / sum.feasible;
        sum.mean_rate_feasible = rate_sum / sum.feasible;
        sum.mean_power_feasible = power_sum / sum.feasible;
      }
      out.push_back(sum);
    }
  }
  return out;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  const std::string var = result.variable.empty() ? "none" : result.variable;
  os << "sweep_var,sweep_value,trial,scheme,status,see,rate,power,rank,outer_iters,inner_iters_total\n";
  for (const SweepRow& r : result.rows) {
    os << var << ',' << fmt(r.sweep_value) << ',' << r.trial << ',' << to_string(r.scheme) << ',' << r.status << ','
       << fmt(r.see) << ',' << fmt(r.rate) << ',' << fmt(r.power) << ',' << r.rank << ',' << r.outer_iters << ','
       << r.inner_iters_total << '\n';
  }
}

void write_summary_csv(std::ostream& os, const std::string& variable, const std::vector<SchemeSummary>& summary) {
  const std::string var = variable.empty() ? "none" : variable;
  os << "sweep_var,sweep_value,scheme,trials,feasible,mean_see_all,mean_see_feasible,mean_rate_feasible,"
        "mean_power_feasible\n";
  for (const SchemeSummary& s : summary) {
    os << var << ',' << fmt(s.sweep_value) << ',' << to_string(s.scheme) << ',' << s.trials << ',' << s.feasible
       << ',' << fmt(s.mean_see_all) << ',' << fmt(s.mean_see_feasible) << ',' << fmt(s.mean_rate_feasible) << ','
       << fmt(s.mean_power_feasible) << '\n';
  }
}

}  // namespace seeopt
