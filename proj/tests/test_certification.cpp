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
#include <numbers>

#include "seeopt/certification.hpp"
#include "seeopt/harness.hpp"
#include "seeopt/optimizer.hpp"
#include "test_support.hpp"

namespace seeopt {
namespace {

using testing::basis;
using testing::zeros;

TEST(CertifyRank, OuterProductIsRankOne) {
  CounterRng rng(5);
  for (int i = 0; i < 50; ++i) {
    const ComplexVector v = testing::random_vector(rng, 4);
    const HermitianMatrix q = HermitianMatrix::outer(v);
    const CertReport rep = certify_rank(q);
    EXPECT_EQ(rep.rank, 1);
    EXPECT_LE(rep.eig_ratio, 1e-10);
    EXPECT_TRUE(rep.passed);
    // The beamformer reproduces v up to a common phase.
    EXPECT_NEAR(std::abs(dot(rep.beamformer, v)), v.norm() * v.norm(), 1e-9 * (1.0 + v.norm() * v.norm()));
    EXPECT_NEAR(rep.beamformer.norm(), v.norm(), 1e-9 * (1.0 + v.norm()));
  }
}

TEST(CertifyRank, IdentityIsFullRank) {
  const CertReport rep = certify_rank(HermitianMatrix::identity(3));
  EXPECT_EQ(rep.rank, 3);
  EXPECT_NEAR(rep.eig_ratio, 1.0, 1e-12);
  EXPECT_FALSE(rep.passed);
}

TEST(CertifyRank, ZeroMatrixHasRankZero) {
  const CertReport rep = certify_rank(HermitianMatrix::zero(2));
  EXPECT_EQ(rep.rank, 0);
  EXPECT_EQ(rep.eig_ratio, 0.0);
}

TEST(CertifyRank, RejectsIndefiniteInput) {
  const std::vector<double> d{1.0, -0.5};
  EXPECT_THROW(certify_rank(HermitianMatrix::diagonal(d)), ContractViolation);
}

TEST(CertifyRank, BeamformerApproximationBoundedByEigenRatio) {
  CounterRng rng(6);
  for (int i = 0; i < 100; ++i) {
    const HermitianMatrix q = testing::random_psd(rng, 3, 1 + i % 3);
    const CertReport rep = certify_rank(q);
    const HermitianMatrix diff = HermitianMatrix::outer(rep.beamformer) - q;
    EXPECT_LE(diff.frobenius_norm(), (2.0 * rep.eig_ratio + 1e-8) * q.trace());
  }
}

// Without an eavesdropper or primary user, max log2(1 + g p) - lambda (p + P_c)
// is solved by p = 1/(lambda ln 2) - 1/g along h_s.
struct LoneLink {
  ChannelSet ch{basis(3, 1).scaled(cplx{1.2, -0.4}), zeros(3), zeros(3)};
  SystemParams params;
  double lambda = 0.25;
  LoneLink() {
    params.n_t = 3;
    params.r_d = 0.1;
    params.e_s = 0.2;
    params.p_tx = 50.0;
  }
  HermitianMatrix covariance(double p) const {
    const double g = ch.h_s.norm() * ch.h_s.norm();
    return (p / g) * HermitianMatrix::outer(ch.h_s);
  }
  double optimal_power() const {
    const double g = ch.h_s.norm() * ch.h_s.norm();
    return 1.0 / (lambda * std::numbers::ln2) - 1.0 / g;
  }
};

TEST(Certify, AnalyticStationaryPointPasses) {
  const LoneLink l;
  const HermitianMatrix q = l.covariance(l.optimal_power());
  const CertReport rep = certify(l.ch, l.params, l.lambda, q, is_feasible(l.params, l.ch, q, 1e-9));
  EXPECT_TRUE(rep.kkt_checked);
  EXPECT_EQ(rep.rank, 1);
  EXPECT_LE(rep.stationarity_residual, 1e-9);
  EXPECT_TRUE(rep.passed);
}

TEST(Certify, InteriorNonStationaryPointFails) {
  const LoneLink l;
  const HermitianMatrix q = l.covariance(0.5 * l.optimal_power());
  const CertReport rep = certify(l.ch, l.params, l.lambda, q, is_feasible(l.params, l.ch, q, 1e-9));
  EXPECT_GT(rep.stationarity_residual, 1e-2);
  EXPECT_FALSE(rep.passed);
}

TEST(Certify, ActivePowerBudgetAbsorbsGradient) {
  LoneLink l;
  l.params.p_tx = 0.5 * l.optimal_power();
  const HermitianMatrix q = l.covariance(l.params.p_tx);
  const CertReport rep = certify(l.ch, l.params, l.lambda, q, is_feasible(l.params, l.ch, q, 1e-9));
  EXPECT_GT(rep.multipliers.mu, 0.0);
  EXPECT_LE(rep.stationarity_residual, 1e-9);
  EXPECT_TRUE(rep.passed);
}

TEST(Certify, RejectsNegativeLambda) {
  const LoneLink l;
  const HermitianMatrix q = l.covariance(1.0);
  EXPECT_THROW(certify(l.ch, l.params, -1.0, q, is_feasible(l.params, l.ch, q, 1e-9)), ContractViolation);
}

TEST(Certify, SolverOutputsAreRankOneWithNonnegativeMultipliers) {
  const SystemParams p = testing::reference_params(3);
  int converged = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Solution s = dinkelbach_solve(trial_channels(31, trial, 3), p);
    if (s.status != SolveStatus::Converged) continue;
    ++converged;
    const CertReport& c = s.certification;
    EXPECT_EQ(c.rank, 1) << "trial " << trial;
    EXPECT_LE(c.eig_ratio, kDefaultRankTol) << "trial " << trial;
    EXPECT_TRUE(c.kkt_checked);
    EXPECT_GE(c.multipliers.alpha, 0.0);
    EXPECT_GE(c.multipliers.beta, 0.0);
    EXPECT_GE(c.multipliers.gamma, 0.0);
    EXPECT_GE(c.multipliers.mu, 0.0);
    EXPECT_TRUE(c.passed) << "trial " << trial << " residual " << c.stationarity_residual;
  }
  EXPECT_GE(converged, 20);
}

}  // namespace
}  // namespace seeopt
