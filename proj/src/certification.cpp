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

#include "seeopt/certification.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

namespace seeopt {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXcd outer_dense(const ComplexVector& h) {
  const auto n = static_cast<Eigen::Index>(h.size());
  MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = h[i] * std::conj(h[j]);
  return m;
}

MatrixXcd dense(const HermitianMatrix& q) {
  const auto n = static_cast<Eigen::Index>(q.size());
  MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = q(i, j);
  return m;
}

VectorXd flatten(const MatrixXcd& m) {
  VectorXd v(2 * m.size());
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    v(2 * k) = m.data()[k].real();
    v(2 * k + 1) = m.data()[k].imag();
  }
  return v;
}

ComplexVector phase_normalized(const ComplexVector& v, double scale) {
  std::size_t big = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[big])) big = i;
  const double mag = std::abs(v[big]);
  const cplx rot = mag > 0.0 ? std::conj(v[big]) / mag : cplx{1.0, 0.0};
  return v.scaled(rot * scale);
}

}  // namespace

CertReport certify_rank(const HermitianMatrix& q_opt) {
  if (!is_psd(q_opt)) throw ContractViolation("certify: covariance is not PSD");
  const auto es = eig_hermitian(q_opt);
  CertReport rep;
  rep.rank = numeric_rank(es);
  const double l1 = es.values.front();
  rep.eig_ratio = (es.values.size() >= 2 && l1 > 0.0) ? std::max(0.0, es.values[1] / l1) : 0.0;
  rep.beamformer = phase_normalized(es.vectors.front(), std::sqrt(std::max(0.0, l1)));
  rep.passed = rep.rank <= 1;
  return rep;
}

CertReport certify(const ChannelSet& ch, const SystemParams& params, double lambda_star, const HermitianMatrix& q_opt,
                   const FeasibilityReport& margins, ConstraintMask mask) {
  if (!(lambda_star >= 0.0)) throw ContractViolation("certify: lambda must be >= 0");
  CertReport rep = certify_rank(q_opt);
  const auto es = eig_hermitian(q_opt);
  const auto n = static_cast<Eigen::Index>(q_opt.size());
  const MatrixXcd id = MatrixXcd::Identity(n, n);
  constexpr double ln2 = std::numbers::ln2;

  const double s = quadratic_form(ch.h_s, q_opt);
  const double e = quadratic_form(ch.h_e, q_opt);
  const MatrixXcd grad_rate = (outer_dense(ch.h_s) / (1.0 + s) - outer_dense(ch.h_e) / (1.0 + e)) / ln2;
  const MatrixXcd grad_obj = grad_rate - (lambda_star / params.xi) * id;

  // Constraint gradients, each oriented as g_m(Q) >= 0. The interference
  // constraint is linear in Q, so its gradient is -h_p h_p^H.
  const std::array<MatrixXcd, 4> grads = {grad_rate, params.eta_eh * outer_dense(ch.h_e), -outer_dense(ch.h_p), -id};
  const std::array<double, 4> margin = {margins.secrecy_margin, margins.energy_margin, margins.interference_margin,
                                        margins.power_margin};
  const std::array<double, 4> rhs = {params.r_d, params.e_s, params.p_f, params.p_tx};
  const std::array<bool, 4> enabled = {mask.secrecy, mask.energy, mask.interference, true};

  std::vector<int> active;
  for (int m = 0; m < 4; ++m) {
    if (enabled[m] && margin[m] <= kActiveMargin * std::max(1.0, std::abs(rhs[m]))) active.push_back(m);
  }

  // Orthonormal basis of range(Q).
  const double cut = kDefaultRankTol * std::max(0.0, es.values.front());
  std::vector<Eigen::Index> range_cols;
  for (std::size_t i = 0; i < es.values.size(); ++i)
    if (es.values[i] > cut && es.values[i] > 0.0) range_cols.push_back(static_cast<Eigen::Index>(i));
  MatrixXcd u(n, static_cast<Eigen::Index>(range_cols.size()));
  for (std::size_t c = 0; c < range_cols.size(); ++c)
    for (Eigen::Index r = 0; r < n; ++r)
      u(r, static_cast<Eigen::Index>(c)) = es.vectors[static_cast<std::size_t>(range_cols[c])][static_cast<std::size_t>(r)];

  const VectorXd base = flatten(grad_obj * u);
  std::vector<VectorXd> cols;
  for (int m : active) cols.push_back(flatten(grads[m] * u));

  // Nonnegative least squares by enumerating supports of the (<= 4) active multipliers.
  double best = std::numeric_limits<double>::infinity();
  std::array<double, 4> nu{};
  const unsigned subsets = 1u << active.size();
  for (unsigned mask_bits = 0; mask_bits < subsets; ++mask_bits) {
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < active.size(); ++k)
      if (mask_bits & (1u << k)) support.push_back(k);
    VectorXd coef = VectorXd::Zero(static_cast<Eigen::Index>(support.size()));
    VectorXd resid = base;
    if (!support.empty() && base.size() > 0) {
      MatrixXd a(base.size(), static_cast<Eigen::Index>(support.size()));
      for (std::size_t k = 0; k < support.size(); ++k) a.col(static_cast<Eigen::Index>(k)) = cols[support[k]];
      coef = a.completeOrthogonalDecomposition().solve(-base);
      if ((coef.array() < 0.0).any()) continue;
      resid = base + a * coef;
    }
    const double r = resid.norm();
    if (r < best) {
      best = r;
      nu.fill(0.0);
      for (std::size_t k = 0; k < support.size(); ++k) nu[active[support[k]]] = coef(static_cast<Eigen::Index>(k));
    }
  }

  MatrixXcd z = -grad_obj;
  for (int m = 0; m < 4; ++m) z -= nu[m] * grads[m];
  std::vector<cplx> zr(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) zr[static_cast<std::size_t>(i * n + j)] = z(i, j);

  rep.kkt_checked = true;
  rep.stationarity_residual = best;
  rep.gradient_scale = grad_obj.norm();
  rep.multipliers = {nu[0], nu[1], nu[2], nu[3]};
  rep.complementary_slackness_residuals.clear();
  for (int m = 0; m < 4; ++m) rep.complementary_slackness_residuals.push_back(nu[m] * std::abs(margin[m]));
  rep.complementary_slackness_residuals.push_back((z * dense(q_opt)).norm());
  rep.dual_min_eigenvalue = eig_hermitian(HermitianMatrix::from_lower(q_opt.size(), zr)).values.back();
  rep.passed = rep.rank <= 1 && rep.stationarity_residual <= kStationarityTol * (1.0 + rep.gradient_scale);
  return rep;
}

}  // namespace seeopt
