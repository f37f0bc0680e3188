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

#include <cmath>

#include "seeopt/harness.hpp"
#include "seeopt/oracle.hpp"
#include "test_support.hpp"

namespace seeopt {
namespace {

using testing::zeros;

SystemParams easy_params() {
  SystemParams p;
  p.n_t = 2;
  p.r_d = 0.0;
  p.e_s = 0.1;
  p.p_tx = 10.0;
  return p;
}

TEST(Oracle, RequiresTwoAntennas) {
  EXPECT_THROW(grid_search(trial_channels(1, 0, 3), testing::reference_params(3), OracleObjective::see()),
               StructuralError);
}

TEST(Oracle, RejectsDegenerateGrid) {
  GridSpec g;
  g.phase_steps = 1;
  EXPECT_THROW(grid_search(trial_channels(1, 0, 2), testing::reference_params(2), OracleObjective::see(), g),
               StructuralError);
}

TEST(Oracle, RateWithoutOtherUsersIsFullPowerBeamforming) {
  const ComplexVector hs = trial_channels(40, 0, 2).h_s;
  const ChannelSet ch(hs, zeros(2), zeros(2));
  const SystemParams p = easy_params();
  const OracleResult r = grid_search(ch, p, OracleObjective::rate());
  ASSERT_TRUE(r.feasible);
  const double g = hs.norm() * hs.norm();
  EXPECT_NEAR(r.value, std::log2(1.0 + g * p.p_tx), 1e-6);
  EXPECT_NEAR(r.q.trace(), p.p_tx, 1e-9);
}

TEST(Oracle, SeeWithoutOtherUsersMatchesScalarOptimum) {
  const ComplexVector hs = trial_channels(41, 0, 2).h_s;
  const ChannelSet ch(hs, zeros(2), zeros(2));
  const SystemParams p = easy_params();
  const double g = hs.norm() * hs.norm();
  const double best =
      testing::golden_max([&](double x) { return std::log2(1.0 + g * x) / (x + p.p_c); }, 0.0, p.p_tx);
  const OracleResult r = grid_search(ch, p, OracleObjective::see());
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.value, best, 1e-6);
  EXPECT_LE(r.value, best + 1e-12);
}

TEST(Oracle, IdenticalReceiversGiveZeroSecrecyRate) {
  const ChannelSet base = trial_channels(42, 0, 2);
  const ChannelSet ch(base.h_s, base.h_s, base.h_p);
  SystemParams p = easy_params();
  const OracleResult r = grid_search(ch, p, OracleObjective::rate());
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  p.r_d = 0.5;
  EXPECT_FALSE(grid_search(ch, p, OracleObjective::rate()).feasible);
}

TEST(Oracle, EveryReturnedPointIsFeasible) {
  const SystemParams p = testing::reference_params(2);
  for (int trial = 0; trial < 20; ++trial) {
    const ChannelSet ch = trial_channels(43, trial, 2);
    for (const OracleObjective obj : {OracleObjective::see(), OracleObjective::trace_power()}) {
      const OracleResult r = grid_search(ch, p, obj);
      if (!r.feasible) continue;
      EXPECT_TRUE(is_feasible(p, ch, r.q, 1e-9).feasible) << "trial " << trial;
      EXPECT_TRUE(is_psd(r.q));
    }
  }
}

TEST(Oracle, ReportedValueMatchesReturnedCovariance) {
  const SystemParams p = testing::reference_params(2);
  for (int trial = 0; trial < 10; ++trial) {
    const ChannelSet ch = trial_channels(44, trial, 2);
    const OracleResult s = grid_search(ch, p, OracleObjective::see());
    if (!s.feasible) continue;
    EXPECT_NEAR(s.value, see(p, ch, s.q), 1e-12);
    const OracleResult t = grid_search(ch, p, OracleObjective::trace_power());
    EXPECT_NEAR(t.value, t.q.trace(), 1e-12);
    const OracleResult e = grid_search(ch, p, OracleObjective::rs_minus_lambda_pt(0.2));
    EXPECT_NEAR(e.value, secrecy_rate(ch, e.q) - 0.2 * transmit_power(p, e.q), 1e-12);
  }
}

TEST(Oracle, RefinementNeverLosesToCoarseGrid) {
  const SystemParams p = testing::reference_params(2);
  for (int trial = 0; trial < 20; ++trial) {
    const ChannelSet ch = trial_channels(45, trial, 2);
    const OracleResult s = grid_search(ch, p, OracleObjective::see());
    if (s.feasible) {
      EXPECT_GE(s.value, s.coarse_value);
      EXPECT_GE(s.resolution_slack, 0.0);
    }
    const OracleResult t = grid_search(ch, p, OracleObjective::trace_power());
    if (t.feasible) {
      EXPECT_LE(t.value, t.coarse_value);
    }
  }
}

TEST(Oracle, FinerGridDoesNotWorsenCoarseOptimum) {
  const SystemParams p = testing::reference_params(2);
  GridSpec coarse;
  coarse.phase_steps = 16;
  coarse.amplitude_steps = 16;
  coarse.power_steps = 32;
  coarse.rank2_mix_steps = 2;
  GridSpec fine;
  fine.phase_steps = 32;
  fine.amplitude_steps = 32;
  fine.power_steps = 64;
  fine.rank2_mix_steps = 4;
  for (int trial = 0; trial < 10; ++trial) {
    const ChannelSet ch = trial_channels(46, trial, 2);
    const OracleResult a = grid_search(ch, p, OracleObjective::see(), coarse);
    const OracleResult b = grid_search(ch, p, OracleObjective::see(), fine);
    ASSERT_EQ(a.feasible, b.feasible);
    if (a.feasible) {
      EXPECT_GE(b.coarse_value, a.coarse_value - 1e-12) << "trial " << trial;
    }
  }
}

TEST(Oracle, ResultIndependentOfThreadCount) {
  const SystemParams p = testing::reference_params(2);
  for (int trial = 0; trial < 5; ++trial) {
    const ChannelSet ch = trial_channels(47, trial, 2);
    const OracleResult a = grid_search(ch, p, OracleObjective::see(), {}, ConstraintMask::all(), 1);
    const OracleResult b = grid_search(ch, p, OracleObjective::see(), {}, ConstraintMask::all(), 3);
    ASSERT_EQ(a.feasible, b.feasible);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.points_evaluated, b.points_evaluated);
    EXPECT_EQ(testing::max_abs_diff(a.q, b.q), 0.0);
  }
}

TEST(Oracle, MaskedSecrecyConstraintWidensFeasibleSet) {
  SystemParams p = testing::reference_params(2);
  p.r_d = 3.0;
  for (int trial = 0; trial < 10; ++trial) {
    const ChannelSet ch = trial_channels(48, trial, 2);
    const OracleResult full = grid_search(ch, p, OracleObjective::see());
    const OracleResult masked = grid_search(ch, p, OracleObjective::see(), {}, ConstraintMask::without_secrecy());
    if (full.feasible) {
      ASSERT_TRUE(masked.feasible);
      EXPECT_GE(masked.value, full.value - 1e-12);
    }
  }
}

}  // namespace
}  // namespace seeopt
