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

// Comparison schemes under the same constraint set: transmit power
// minimization and secrecy rate maximization.

#pragma once

#include "seeopt/optimizer.hpp"

namespace seeopt {

/// Minimizes tr(Q) subject to every constraint, one barrier solve.
Solution power_min(const ChannelSet& ch, const SystemParams& params, const OptimizerOptions& opts = {});

/// Maximizes R_s(Q) subject to the energy, interference and power constraints.
/// The secrecy-rate floor is not part of this problem; callers compare the
/// achieved rate against R_d (see meets_rate_target).
Solution rate_max(const ChannelSet& ch, const SystemParams& params, const OptimizerOptions& opts = {});

inline bool meets_rate_target(const Solution& s, const SystemParams& params) {
  return s.status != SolveStatus::Infeasible && s.secrecy_rate >= params.r_d - 1e-6;
}

/// Dispatches to dinkelbach_solve, power_min or rate_max.
Solution solve_scheme(Scheme scheme, const ChannelSet& ch, const SystemParams& params,
                      const OptimizerOptions& opts = {});

}  // namespace seeopt
