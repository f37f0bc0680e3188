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

#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "seeopt/io.hpp"
#include "seeopt/optimizer.hpp"
#include "test_support.hpp"

namespace seeopt {
namespace {

using nlohmann::json;

const char* kInstance = R"({
  "n_t": 2,
  "channels": {"h_s": [[1.0, -0.5], 0.25], "h_e": [[0, 1], [0, 0]], "h_p": [0.5, [0.0, -0.5]]},
  "params": {"r_d": 0.75, "e_s_db": -10, "p_tx": 5.0}
})";

TEST(Instance, ParsesComplexEntriesAndDecibels) {
  const Instance inst = parse_instance(kInstance);
  EXPECT_EQ(inst.params.n_t, 2u);
  EXPECT_EQ(inst.channels.h_s[0], cplx(1.0, -0.5));
  EXPECT_EQ(inst.channels.h_s[1], cplx(0.25, 0.0));
  EXPECT_EQ(inst.channels.h_e[0], cplx(0.0, 1.0));
  EXPECT_EQ(inst.channels.h_p[1], cplx(0.0, -0.5));
  EXPECT_EQ(inst.params.r_d, 0.75);
  EXPECT_NEAR(inst.params.e_s, 0.1, 1e-12);
  EXPECT_EQ(inst.params.p_tx, 5.0);
}

TEST(Instance, RejectsMalformedInput) {
  const std::vector<std::string> bad{
      R"({"channels": {"h_s": [1, 0], "h_e": [0, 0], "h_p": [0, 0]}, "params": {"p_tx": 1, "p_tx_db": 0}})",
      R"({"channels": {"h_s": [1, 0], "h_e": [0, 0], "h_p": [0, 0]}, "params": {"bogus": 1}})",
      R"({"n_t": 3, "channels": {"h_s": [1, 0], "h_e": [0, 0], "h_p": [0, 0]}})",
      R"({"channels": {"h_s": [1, 0], "h_e": [0, 0, 0], "h_p": [0, 0]}})",
      R"({"channels": {"h_s": [1, 0], "h_e": [0, 0]}})",
      R"({"channels": {"h_s": [[1, 0, 2], 0], "h_e": [0, 0], "h_p": [0, 0]}})",
      R"({"params": {}})",
      R"(not json)",
  };
  for (const std::string& text : bad) EXPECT_THROW(parse_instance(text), StructuralError) << text;
}

TEST(ConfigJson, ParsesAllFields) {
  const ExperimentConfig c = parse_config(R"({
    "seed": 9, "trials": 12, "n_t": 4, "threads": 2,
    "params": {"p_tx_db": 20, "e_s_db": -20},
    "sweep": {"variable": "r_d", "values": [0.5, 1.0, 1.5]},
    "schemes": ["see_max", "rate_max"]
  })");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.trials, 12);
  EXPECT_EQ(c.params.n_t, 4u);
  EXPECT_EQ(c.threads, 2u);
  EXPECT_NEAR(c.params.p_tx, 100.0, 1e-9);
  EXPECT_NEAR(c.params.e_s, 0.01, 1e-12);
  EXPECT_EQ(c.sweep.variable, "r_d");
  EXPECT_EQ(c.sweep.values, (std::vector<double>{0.5, 1.0, 1.5}));
  EXPECT_EQ(c.schemes, (std::vector<Scheme>{Scheme::SeeMax, Scheme::RateMax}));
}

TEST(ConfigJson, RejectsUnknownKeysAndSchemes) {
  EXPECT_THROW(parse_config(R"({"sed": 1})"), StructuralError);
  EXPECT_THROW(parse_config(R"({"schemes": ["fastest"]})"), StructuralError);
  EXPECT_THROW(parse_config(R"({"trials": 0})"), StructuralError);
}

TEST(SolutionJson, CarriesSolverOutputs) {
  const Instance inst = parse_instance(kInstance);
  const Solution s = dinkelbach_solve(inst.channels, inst.params);
  ASSERT_NE(s.status, SolveStatus::Infeasible);
  const json j = json::parse(solution_to_json(s));
  EXPECT_EQ(j.at("scheme"), "see_max");
  EXPECT_EQ(j.at("status"), to_string(s.status));
  EXPECT_DOUBLE_EQ(j.at("see").get<double>(), s.see);
  EXPECT_DOUBLE_EQ(j.at("secrecy_rate").get<double>(), s.secrecy_rate);
  EXPECT_DOUBLE_EQ(j.at("power").get<double>(), s.power);
  EXPECT_EQ(j.at("outer_iters").get<int>(), s.outer_iters());
  const json& q = j.at("q_opt");
  ASSERT_EQ(q.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_DOUBLE_EQ(q[i][k][0].get<double>(), s.q_opt(i, k).real());
      EXPECT_DOUBLE_EQ(q[i][k][1].get<double>(), s.q_opt(i, k).imag());
    }
  }
  EXPECT_EQ(j.at("certification").at("rank").get<int>(), s.certification.rank);
  EXPECT_TRUE(j.at("notes").is_array());
}

TEST(TraceCsv, InnerRowsPrecedeTheirOuterRow) {
  SolveTrace t;
  t.outer = {{0, 0.0, 1.0, 2.0, 1.0}, {1, 0.5, 1.2, 2.2, 0.1}};
  t.inner = {{0, 1, 0.8, 0.8}, {0, 2, 1.0, 0.2}, {1, 1, 0.1, 0.05}};
  std::ostringstream os;
  write_trace_csv(os, t);
  EXPECT_EQ(os.str(),
            "row,outer_iter,k,lambda,rate,power,delta_f,eta,delta_eta\n"
            "inner,0,1,0,,,,0.8,0.8\n"
            "inner,0,2,0,,,,1,0.2\n"
            "outer,0,,0,1,2,1,,\n"
            "inner,1,1,0.5,,,,0.1,0.05\n"
            "outer,1,,0.5,1.2,2.2,0.1,,\n");
}

TEST(OracleReport, FlagsAgreementWithinTolerance) {
  Solution s;
  s.status = SolveStatus::Converged;
  s.see = 1.0;
  OracleResult o;
  o.feasible = true;
  o.value = 1.0005;
  o.resolution_slack = 0.0;
  EXPECT_TRUE(json::parse(oracle_report_to_json(s, o, 1e-3)).at("agree").get<bool>());
  o.value = 1.01;
  EXPECT_FALSE(json::parse(oracle_report_to_json(s, o, 1e-3)).at("agree").get<bool>());
  o.resolution_slack = 0.02;
  EXPECT_TRUE(json::parse(oracle_report_to_json(s, o, 1e-3)).at("agree").get<bool>());
  o.feasible = false;
  EXPECT_FALSE(json::parse(oracle_report_to_json(s, o, 1e-3)).at("agree").get<bool>());
}

}  // namespace
}  // namespace seeopt
