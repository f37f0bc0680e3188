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

#include "seeopt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <set>
#include <sstream>

namespace seeopt {

namespace {

using nlohmann::json;

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw StructuralError(std::string(what) + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw StructuralError("'" + key + "' must be a number");
  return j.get<double>();
}

cplx parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw StructuralError("complex entries must be [re, im] pairs or real numbers");
}

ComplexVector parse_vector(const json& j, const char* name) {
  if (!j.is_array() || j.empty()) throw StructuralError(std::string("channel '") + name + "' must be a non-empty array");
  std::vector<cplx> v;
  for (const json& e : j) v.push_back(parse_complex(e));
  return ComplexVector(std::move(v));
}

// Fills `p` from a params object. The base value of each field is kept when absent.
void parse_params(const json& j, SystemParams& p) {
  if (!j.is_object()) throw StructuralError("'params' must be an object");
  static const std::set<std::string> known{"r_d", "e_s", "e_s_db", "p_f", "p_f_db", "p_tx", "p_tx_db",
                                           "p_c", "eta_eh", "xi", "eps_outer", "zeta_inner"};
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw StructuralError("unknown parameter '" + k + "'");
  }
  auto linear_or_db = [&](const char* lin, const char* db, double& out) {
    const bool has_lin = j.contains(lin), has_db = j.contains(db);
    if (has_lin && has_db) throw StructuralError(std::string("give either '") + lin + "' or '" + db + "', not both");
    if (has_lin) out = number(j.at(lin), lin);
    if (has_db) out = db_to_linear(number(j.at(db), db));
  };
  linear_or_db("e_s", "e_s_db", p.e_s);
  linear_or_db("p_f", "p_f_db", p.p_f);
  linear_or_db("p_tx", "p_tx_db", p.p_tx);
  auto plain = [&](const char* key, double& out) {
    if (j.contains(key)) out = number(j.at(key), key);
  };
  plain("r_d", p.r_d);
  plain("p_c", p.p_c);
  plain("eta_eh", p.eta_eh);
  plain("xi", p.xi);
  plain("eps_outer", p.eps_outer);
  plain("zeta_inner", p.zeta_inner);
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const HermitianMatrix& q) {
  json rows = json::array();
  for (std::size_t i = 0; i < q.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < q.size(); ++k) row.push_back(complex_json(q(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// JSON has no NaN or infinity; emit null for those.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

Instance parse_instance(std::string_view json_text) {
  const json j = parse_json(json_text, "instance");
  if (!j.is_object() || !j.contains("channels")) throw StructuralError("instance: missing 'channels'");
  const json& c = j.at("channels");
  for (const char* k : {"h_s", "h_e", "h_p"}) {
    if (!c.contains(k)) throw StructuralError(std::string("instance: missing channel '") + k + "'");
  }
  Instance inst{ChannelSet(parse_vector(c.at("h_s"), "h_s"), parse_vector(c.at("h_e"), "h_e"),
                           parse_vector(c.at("h_p"), "h_p")),
                SystemParams{}};
  inst.params.n_t = inst.channels.n_t();
  if (j.contains("n_t") && j.at("n_t").get<std::size_t>() != inst.params.n_t) {
    throw StructuralError("instance: 'n_t' does not match the channel length");
  }
  if (j.contains("params")) parse_params(j.at("params"), inst.params);
  inst.params.validate();
  return inst;
}

Instance load_instance(const std::filesystem::path& path) { return parse_instance(read_file(path)); }

ExperimentConfig parse_config(std::string_view json_text) {
  const json j = parse_json(json_text, "config");
  if (!j.is_object()) throw StructuralError("config: expected an object");
  static const std::set<std::string> known{"seed", "trials", "n_t", "params", "sweep", "schemes", "threads"};
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw StructuralError("config: unknown key '" + k + "'");
  }
  ExperimentConfig cfg;
  try {
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("n_t")) cfg.params.n_t = j.at("n_t").get<std::size_t>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<unsigned>();
    if (j.contains("params")) parse_params(j.at("params"), cfg.params);
    if (j.contains("sweep")) {
      const json& s = j.at("sweep");
      cfg.sweep.variable = s.at("variable").get<std::string>();
      cfg.sweep.values = s.at("values").get<std::vector<double>>();
    }
    if (j.contains("schemes")) {
      cfg.schemes.clear();
      for (const json& s : j.at("schemes")) {
        const auto scheme = parse_scheme(s.get<std::string>());
        if (!scheme) throw StructuralError("config: unknown scheme '" + s.get<std::string>() + "'");
        cfg.schemes.push_back(*scheme);
      }
    }
  } catch (const json::exception& e) {
    throw StructuralError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

std::string solution_to_json(const Solution& sol, int indent) {
  const CertReport& c = sol.certification;
  json cert = {
      {"rank", c.rank},
      {"eig_ratio", num(c.eig_ratio)},
      {"kkt_checked", c.kkt_checked},
      {"stationarity_residual", num(c.stationarity_residual)},
      {"gradient_scale", num(c.gradient_scale)},
      {"multipliers",
       {{"alpha", num(c.multipliers.alpha)},
        {"beta", num(c.multipliers.beta)},
        {"gamma", num(c.multipliers.gamma)},
        {"mu", num(c.multipliers.mu)}}},
      {"dual_min_eigenvalue", num(c.dual_min_eigenvalue)},
      {"passed", c.passed},
  };
  json beam = json::array();
  for (cplx z : c.beamformer.entries()) beam.push_back(complex_json(z));
  cert["beamformer"] = std::move(beam);
  json cs = json::array();
  for (double v : c.complementary_slackness_residuals) cs.push_back(num(v));
  cert["complementary_slackness_residuals"] = std::move(cs);

  json out = {
      {"scheme", to_string(sol.scheme)},
      {"status", to_string(sol.status)},
      {"see", num(sol.see)},
      {"secrecy_rate", num(sol.secrecy_rate)},
      {"power", num(sol.power)},
      {"lambda_final", num(sol.lambda_final)},
      {"outer_iters", sol.outer_iters()},
      {"inner_iters_total", sol.inner_iters_total()},
      {"q_opt", matrix_json(sol.q_opt)},
      {"certification", std::move(cert)},
      {"notes", sol.notes},
  };
  return out.dump(indent);
}

void write_trace_csv(std::ostream& os, const SolveTrace& trace) {
  os << "row,outer_iter,k,lambda,rate,power,delta_f,eta,delta_eta\n";
  std::size_t next_inner = 0;
  for (const OuterRecord& o : trace.outer) {
    while (next_inner < trace.inner.size() && trace.inner[next_inner].outer_iter <= o.iter) {
      const InnerRecord& r = trace.inner[next_inner++];
      os << "inner," << r.outer_iter << ',' << r.k << ',' << fmt(o.lambda) << ",,,," << fmt(r.eta) << ','
         << fmt(r.delta_eta) << '\n';
    }
    os << "outer," << o.iter << ",," << fmt(o.lambda) << ',' << fmt(o.rate) << ',' << fmt(o.power) << ','
       << fmt(o.delta_f) << ",,\n";
  }
}

std::string oracle_report_to_json(const Solution& solver, const OracleResult& oracle, double tolerance, int indent) {
  const bool both_feasible = oracle.feasible && solver.status != SolveStatus::Infeasible;
  const double diff = both_feasible ? solver.see - oracle.value : 0.0;
  const double allowed = std::max(tolerance, oracle.resolution_slack);
  const bool verdicts_agree = oracle.feasible == (solver.status != SolveStatus::Infeasible);
  json out = {
      {"solver_status", to_string(solver.status)},
      {"solver_see", num(solver.see)},
      {"oracle_feasible", oracle.feasible},
      {"oracle_see", num(oracle.value)},
      {"oracle_coarse_see", num(oracle.coarse_value)},
      {"oracle_resolution_slack", num(oracle.resolution_slack)},
      {"oracle_points", oracle.points_evaluated},
      {"difference", num(diff)},
      {"allowed", num(allowed)},
      {"agree", verdicts_agree && std::abs(diff) <= allowed},
  };
  if (oracle.feasible) out["oracle_q"] = matrix_json(oracle.q);
  return out.dump(indent);
}

}  // namespace seeopt
