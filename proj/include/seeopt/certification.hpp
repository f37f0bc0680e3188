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

// Numerical rank-one and KKT checks for a returned covariance.

#pragma once

#include <array>
#include <vector>

#include "seeopt/hermitian.hpp"
#include "seeopt/model.hpp"

namespace seeopt {

/// Multipliers of the secrecy, energy, interference and power constraints.
struct Multipliers {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
};

struct CertReport {
  int rank = 0;
  double eig_ratio = 0.0;  // lambda_2 / lambda_1, clamped at 0
  ComplexVector beamformer;  // sqrt(lambda_1) v_1
  bool kkt_checked = false;
  double stationarity_residual = 0.0;
  double gradient_scale = 0.0;
  Multipliers multipliers;
  // nu_m * |margin_m| for the four constraints, then ||Z Q||_F.
  std::vector<double> complementary_slackness_residuals;
  double dual_min_eigenvalue = 0.0;  // lambda_min of the fitted Z
  bool passed = false;
};

inline constexpr double kActiveMargin = 1e-5;
inline constexpr double kStationarityTol = 1e-4;

/// Rank, beamformer and the stationarity residual of
///   max R_s(Q) - lambda P_t(Q)  s.t. the masked constraints, Q >= 0,
/// with multipliers fitted by nonnegative least squares over the active set
/// (margin <= 1e-5). The residual is measured on the range of Q, where
/// Z Q = 0 forces Z to vanish.
CertReport certify(const ChannelSet& ch, const SystemParams& params, double lambda_star, const HermitianMatrix& q_opt,
                   const FeasibilityReport& margins, ConstraintMask mask = ConstraintMask::all());

/// Rank and beamformer only; used where the problem is not the SEE problem.
CertReport certify_rank(const HermitianMatrix& q_opt);

}  // namespace seeopt
