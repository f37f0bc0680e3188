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

#include "seeopt/model.hpp"

#include <cmath>
#include <string>

namespace seeopt {

namespace {

constexpr double kPsdRelTol = 1e-8;

void check_range(bool ok, const char* what) {
  if (!ok) throw StructuralError(std::string("SystemParams: ") + what);
}

void require_psd(const HermitianMatrix& q, const char* op) {
  if (!is_psd(q, kPsdRelTol)) throw ContractViolation(std::string(op) + ": covariance is not PSD");
}

void require_dims(const ChannelSet& ch, const HermitianMatrix& q) {
  if (q.size() != ch.n_t()) throw StructuralError("covariance size does not match channel length");
}

}  // namespace

void SystemParams::validate() const {
  check_range(n_t >= 1, "n_t must be >= 1");
  check_range(std::isfinite(r_d) && r_d >= 0.0, "r_d must be >= 0");
  check_range(std::isfinite(e_s) && e_s >= 0.0, "e_s must be >= 0");
  check_range(std::isfinite(p_f) && p_f >= 0.0, "p_f must be >= 0");
  check_range(std::isfinite(p_tx) && p_tx > 0.0, "p_tx must be > 0");
  check_range(std::isfinite(p_c) && p_c >= 0.0, "p_c must be >= 0");
  check_range(eta_eh > 0.0 && eta_eh <= 1.0, "eta_eh must be in (0, 1]");
  check_range(xi > 0.0 && xi <= 1.0, "xi must be in (0, 1]");
  check_range(eps_outer > 0.0, "eps_outer must be > 0");
  check_range(zeta_inner > 0.0, "zeta_inner must be > 0");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

ChannelSet::ChannelSet(ComplexVector s, ComplexVector e, ComplexVector p)
    : h_s(std::move(s)), h_e(std::move(e)), h_p(std::move(p)) {
  if (h_s.size() == 0 || h_e.size() != h_s.size() || h_p.size() != h_s.size()) {
    throw StructuralError("ChannelSet: channel vectors must share a non-zero length");
  }
}

double secrecy_rate(const ChannelSet& ch, const HermitianMatrix& q) {
  require_dims(ch, q);
  require_psd(q, "secrecy_rate");
  return std::log2(1.0 + quadratic_form(ch.h_s, q)) - std::log2(1.0 + quadratic_form(ch.h_e, q));
}

double transmit_power(const SystemParams& params, const HermitianMatrix& q) {
  require_psd(q, "transmit_power");
  return (q.trace() + params.p_c) / params.xi;
}

double see(const SystemParams& params, const ChannelSet& ch, const HermitianMatrix& q) {
  const double p = transmit_power(params, q);
  if (!(p > 0.0)) throw ContractViolation("see: transmit power must be positive");
  return secrecy_rate(ch, q) / p;
}

double harvested_energy(const SystemParams& params, const ChannelSet& ch, const HermitianMatrix& q) {
  require_dims(ch, q);
  require_psd(q, "harvested_energy");
  return params.eta_eh * (quadratic_form(ch.h_e, q) + 1.0);
}

double interference_leakage(const ChannelSet& ch, const HermitianMatrix& q) {
  require_dims(ch, q);
  require_psd(q, "interference_leakage");
  return quadratic_form(ch.h_p, q);
}

FeasibilityReport is_feasible(const SystemParams& params, const ChannelSet& ch, const HermitianMatrix& q,
                              double slack, ConstraintMask mask) {
  require_dims(ch, q);
  const double s = quadratic_form(ch.h_s, q);
  const double e = quadratic_form(ch.h_e, q);
  FeasibilityReport r;
  r.secrecy_margin = std::log2(1.0 + s) - std::log2(1.0 + e) - params.r_d;
  r.energy_margin = params.eta_eh * (e + 1.0) - params.e_s;
  r.interference_margin = params.p_f - quadratic_form(ch.h_p, q);
  r.power_margin = params.p_tx - q.trace();
  r.psd_margin = eig_hermitian(q).values.back();
  r.feasible = (!mask.secrecy || r.secrecy_margin >= -slack) && (!mask.energy || r.energy_margin >= -slack) &&
               (!mask.interference || r.interference_margin >= -slack) &&
               r.power_margin >= -slack && r.psd_margin >= -slack;
  return r;
}

}  // namespace seeopt
