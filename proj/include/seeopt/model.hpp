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

// Physical quantities of the MISO underlay cognitive-radio link with an
// energy-harvesting eavesdropper, and the feasibility predicate of the
// SEE maximization problem.

#pragma once

#include <array>
#include <cstddef>

#include "seeopt/hermitian.hpp"

namespace seeopt {

/// All scalar problem constants, in linear scale.
struct SystemParams {
  std::size_t n_t = 3;
  double r_d = 0.5;          // target secrecy rate, bps/Hz
  double e_s = 1.0;          // minimum harvested energy
  double p_f = 1.0;          // maximum interference leakage at the primary receiver
  double p_tx = 19.952623149688797;  // maximum transmit power (13 dB)
  double p_c = 1.0;          // circuit power
  double eta_eh = 0.5;       // energy conversion ratio
  double xi = 1.0;           // power amplifier efficiency
  double eps_outer = 1e-3;   // Dinkelbach tolerance on |R_s - lambda P_t|
  double zeta_inner = 1e-3;  // DC tolerance on |delta eta|

  /// Throws StructuralError on out-of-range values.
  void validate() const;
};

double db_to_linear(double db);
double linear_to_db(double lin);

struct ChannelSet {
  ComplexVector h_s;  // SU-Tx -> SU-Rx
  ComplexVector h_e;  // SU-Tx -> energy receiver (potential eavesdropper)
  ComplexVector h_p;  // SU-Tx -> PU-Rx

  ChannelSet() = default;
  ChannelSet(ComplexVector s, ComplexVector e, ComplexVector p);

  std::size_t n_t() const { return h_s.size(); }
};

/// log2(1 + h_s^H Q h_s) - log2(1 + h_e^H Q h_e). Q must be PSD.
double secrecy_rate(const ChannelSet& ch, const HermitianMatrix& q);
/// (tr Q + P_c) / xi.
double transmit_power(const SystemParams& params, const HermitianMatrix& q);
/// Secrecy energy efficiency: secrecy_rate / transmit_power.
double see(const SystemParams& params, const ChannelSet& ch, const HermitianMatrix& q);
/// eta_eh (h_e^H Q h_e + 1); the +1 is the receiver noise power.
double harvested_energy(const SystemParams& params, const ChannelSet& ch, const HermitianMatrix& q);
/// h_p^H Q h_p.
double interference_leakage(const ChannelSet& ch, const HermitianMatrix& q);

/// Selects which constraints of the feasible set are enforced. The power
/// budget and PSD constraints are always enforced.
struct ConstraintMask {
  bool secrecy = true;
  bool energy = true;
  bool interference = true;

  static ConstraintMask all() { return {}; }
  static ConstraintMask without_secrecy() { return {false, true, true}; }
};

/// Margins are oriented so that >= 0 means satisfied.
struct FeasibilityReport {
  bool feasible = false;
  double secrecy_margin = 0.0;       // R_s - R_d
  double energy_margin = 0.0;        // E_eh - E_s
  double interference_margin = 0.0;  // P_f - h_p^H Q h_p
  double power_margin = 0.0;         // P_tx - tr Q
  double psd_margin = 0.0;           // lambda_min(Q)

  std::array<double, 5> margins() const {
    return {secrecy_margin, energy_margin, interference_margin, power_margin, psd_margin};
  }
};

FeasibilityReport is_feasible(const SystemParams& params, const ChannelSet& ch, const HermitianMatrix& q,
                              double slack, ConstraintMask mask = ConstraintMask::all());

}  // namespace seeopt
