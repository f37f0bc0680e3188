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

// Result types shared by the SEE optimizer and the baseline schemes.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seeopt/certification.hpp"
#include "seeopt/hermitian.hpp"

namespace seeopt {

enum class SolveStatus { Converged, Infeasible, IterLimit };

enum class Scheme { SeeMax, PowerMin, RateMax };

const char* to_string(SolveStatus s);
const char* to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

/// One Dinkelbach iteration: lambda_i and the R_s^i, P_t^i it produced.
struct OuterRecord {
  int iter = 0;
  double lambda = 0.0;
  double rate = 0.0;
  double power = 0.0;
  double delta_f = 0.0;  // |R_s^i - lambda_i P_t^i|
};

/// One DC step; eta is the true (un-linearized) objective R_s - lambda_i P_t.
struct InnerRecord {
  int outer_iter = 0;
  int k = 0;
  double eta = 0.0;
  double delta_eta = 0.0;  // eta^{i,k} - eta^{i,k-1}; k = 1 compares against the start point
};

struct SolveTrace {
  std::vector<OuterRecord> outer;
  std::vector<InnerRecord> inner;
};

struct Solution {
  Scheme scheme = Scheme::SeeMax;
  SolveStatus status = SolveStatus::Infeasible;
  HermitianMatrix q_opt;
  double secrecy_rate = 0.0;
  double power = 0.0;
  double see = 0.0;
  double lambda_final = 0.0;  // parameter of the last inner solve
  SolveTrace trace;
  CertReport certification;
  std::vector<std::string> notes;

  int outer_iters() const { return static_cast<int>(trace.outer.size()); }
  int inner_iters_total() const { return static_cast<int>(trace.inner.size()); }
};

}  // namespace seeopt
