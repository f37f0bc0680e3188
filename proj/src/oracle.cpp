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

#include "seeopt/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

namespace seeopt {

namespace {

constexpr int kRefinePoints = 21;  // per dimension, spanning one parent cell each side
constexpr int kHalf = kRefinePoints / 2;
constexpr int kMaxRecenter = 200;
constexpr int kRefineLevels = 3;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

struct Shape {
  double theta = 0.0;
  double phi = 0.0;
  double mu = 1.0;
};

struct ShapeGains {
  double s = 0.0;
  double e = 0.0;
  double p = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo <= hi); }
};

struct Candidate {
  double score = kNegInf;  // objective, negated for minimization
  Shape shape;
  double power = 0.0;
  double frac = 0.0;  // position of power within the shape's feasible range
};

// a + b cos(x) + c sin(x)
struct Sinusoid {
  double a = 0.0, b = 0.0, c = 0.0;

  Sinusoid operator*(double k) const { return {a * k, b * k, c * k}; }
  Sinusoid operator-(const Sinusoid& o) const { return {a - o.a, b - o.b, c - o.c}; }

  /// Roots in [0, 2 pi).
  void roots(std::vector<double>& out) const {
    const double r = std::hypot(b, c);
    if (!(r > 1e-14 * std::max(1.0, std::abs(a))) || std::abs(a) > r) return;
    const double d = std::atan2(c, b);
    const double w = std::acos(std::clamp(-a / r, -1.0, 1.0));
    for (double x : {d + w, d - w}) {
      x = std::fmod(x, 2.0 * kPi);
      out.push_back(x < 0.0 ? x + 2.0 * kPi : x);
    }
  }
};

// With u = (cos t, e^{i phi} sin t) and u_perp = (-e^{-i phi} sin t, cos t),
//   h^H S h = mu |h^H u|^2 + (1 - mu) |h^H u_perp|^2,
// which is a sinusoid in phi for fixed (t, mu) and in 2t for fixed (phi, mu).
struct ChannelTerms {
  double n0, n1;  // |h_0|^2, |h_1|^2
  cplx w;         // conj(h_0) h_1

  explicit ChannelTerms(const ComplexVector& h) : n0(std::norm(h[0])), n1(std::norm(h[1])), w(std::conj(h[0]) * h[1]) {}

  double gain(const Shape& sh) const {
    const double c = std::cos(sh.theta), s = std::sin(sh.theta);
    const double p = n0 * c * c + n1 * s * s;
    const double x = 2.0 * c * s * std::real(w * std::polar(1.0, -sh.phi));
    return sh.mu * (p + x) + (1.0 - sh.mu) * (n0 + n1 - p - x);
  }
  Sinusoid in_phi(double theta, double mu) const {
    const double c = std::cos(theta), s = std::sin(theta);
    const double p = n0 * c * c + n1 * s * s;
    const double k = (2.0 * mu - 1.0) * 2.0 * c * s;
    return {mu * p + (1.0 - mu) * (n0 + n1 - p), k * w.real(), k * w.imag()};
  }
  Sinusoid in_two_theta(double phi, double mu) const {
    const double k = 2.0 * mu - 1.0;
    return {0.5 * (n0 + n1), 0.5 * k * (n0 - n1), k * std::real(w * std::polar(1.0, -phi))};
  }
};

class Evaluator {
 public:
  Evaluator(const ChannelSet& ch, const SystemParams& params, OracleObjective obj, double power_max,
            ConstraintMask mask)
      : hs_(ch.h_s),
        he_(ch.h_e),
        hp_(ch.h_p),
        params_(params),
        obj_(obj),
        p_cap_(std::min(power_max, params.p_tx)),
        mask_(mask),
        two_r_(std::exp2(params.r_d)) {}

  ShapeGains gains(const Shape& sh) const { return {hs_.gain(sh), he_.gain(sh), hp_.gain(sh)}; }

  // Feasible range of p for a unit-trace shape; each constraint is affine in p.
  Interval power_range(const ShapeGains& g) const {
    Interval iv{0.0, p_cap_};
    auto at_least = [&iv](double c, double r) {  // c p >= r
      if (c > 0.0) {
        iv.lo = std::max(iv.lo, r / c);
      } else if (c < 0.0) {
        iv.hi = std::min(iv.hi, r / c);
      } else if (r > 0.0) {
        iv.hi = -1.0;
      }
    };
    if (mask_.interference) at_least(-g.p, -params_.p_f);
    if (mask_.energy) at_least(g.e, energy_rhs());
    if (mask_.secrecy) at_least(g.s - two_r_ * g.e, two_r_ - 1.0);
    return iv;
  }

  // Angles at which the p-bounds of two constraints coincide. Those are the
  // shapes where two constraints can be active together, which a regular
  // lattice only approaches at first order.
  template <class Gain>
  void crossings(Gain&& gain_of, std::vector<double>& out) const {
    struct Row {
      Sinusoid c;
      double r;
    };
    std::array<Row, 4> rows;
    int n = 0;
    rows[n++] = {Sinusoid{-1.0, 0.0, 0.0}, -p_cap_};
    if (mask_.interference) rows[n++] = {gain_of(hp_) * -1.0, -params_.p_f};
    if (mask_.energy) rows[n++] = {gain_of(he_), energy_rhs()};
    if (mask_.secrecy) rows[n++] = {gain_of(hs_) - gain_of(he_) * two_r_, two_r_ - 1.0};
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) (rows[i].c * rows[j].r - rows[j].c * rows[i].r).roots(out);
    }
  }

  void phi_crossings(double theta, double mu, std::vector<double>& out) const {
    crossings([&](const ChannelTerms& t) { return t.in_phi(theta, mu); }, out);
  }

  void theta_crossings(double phi, double mu, std::vector<double>& out) const {
    std::vector<double> two_theta;
    crossings([&](const ChannelTerms& t) { return t.in_two_theta(phi, mu); }, two_theta);
    for (double x : two_theta) {
      if (x <= kPi) out.push_back(0.5 * x);
    }
  }

  double score(const ShapeGains& g, double p) const {
    const double rate = std::log2(1.0 + g.s * p) - std::log2(1.0 + g.e * p);
    const double pt = (p + params_.p_c) / params_.xi;
    switch (obj_.kind) {
      case OracleObjectiveKind::See:
        return pt > 0.0 ? rate / pt : 0.0;
      case OracleObjectiveKind::RsMinusLambdaPt:
        return rate - obj_.lambda * pt;
      case OracleObjectiveKind::TracePower:
        return -p;
      case OracleObjectiveKind::Rate:
        return rate;
    }
    return kNegInf;
  }

 private:
  double energy_rhs() const { return params_.e_s / params_.eta_eh - 1.0; }

  ChannelTerms hs_, he_, hp_;
  const SystemParams& params_;
  OracleObjective obj_;
  double p_cap_;
  ConstraintMask mask_;
  double two_r_;
};

HermitianMatrix shape_matrix(const Shape& sh, double p) {
  const double c = std::cos(sh.theta);
  const double s = std::sin(sh.theta);
  const cplx ph = std::polar(1.0, sh.phi);
  const ComplexVector u({cplx{c, 0.0}, ph * s});
  const ComplexVector v({-std::conj(ph) * s, cplx{c, 0.0}});
  HermitianMatrix q = sh.mu * HermitianMatrix::outer(u);
  q += (1.0 - sh.mu) * HermitianMatrix::outer(v);
  q *= p;
  return q;
}

struct ScanResult {
  Candidate best;
  std::size_t points = 0;
  std::size_t feasible_shapes = 0;

  // Strict comparison keeps the first maximizer in scan order.
  void merge(const ScanResult& o) {
    points += o.points;
    feasible_shapes += o.feasible_shapes;
    if (o.best.score > best.score) best = o.best;
  }
};

// Evaluates one shape at p = lo + (hi - lo) f for f = k / power_steps.
void scan_shape(const Evaluator& ev, const Shape& sh, int power_steps, ScanResult& out) {
  const ShapeGains g = ev.gains(sh);
  const Interval iv = ev.power_range(g);
  if (iv.empty()) return;
  ++out.feasible_shapes;
  for (int k = 0; k <= power_steps; ++k) {
    const double f = static_cast<double>(k) / power_steps;
    const double p = iv.lo + (iv.hi - iv.lo) * f;
    const double v = ev.score(g, p);
    ++out.points;
    if (v > out.best.score) out.best = {v, sh, p, f};
  }
}

struct CoarseGrid {
  int n_theta, n_phi, n_mu, power_steps;

  double theta(int a) const { return kPi / 2.0 * (static_cast<double>(a) / (n_theta - 1)); }
  double phi(int b) const { return 2.0 * kPi * (static_cast<double>(b) / n_phi); }
  double mu(int c) const { return 0.5 + 0.5 * (static_cast<double>(c) / (n_mu - 1)); }
};

// Lattice rows of constant theta, plus the crossing angles in phi.
ScanResult scan_theta_rows(const Evaluator& ev, const CoarseGrid& gr, int begin, int end) {
  ScanResult out;
  std::vector<double> extra;
  for (int a = begin; a < end; ++a) {
    for (int c = 0; c < gr.n_mu; ++c) {
      for (int b = 0; b < gr.n_phi; ++b) scan_shape(ev, {gr.theta(a), gr.phi(b), gr.mu(c)}, gr.power_steps, out);
      extra.clear();
      ev.phi_crossings(gr.theta(a), gr.mu(c), extra);
      for (double phi : extra) scan_shape(ev, {gr.theta(a), phi, gr.mu(c)}, gr.power_steps, out);
    }
  }
  return out;
}

// Crossing angles in theta along lattice rows of constant phi.
ScanResult scan_phi_rows(const Evaluator& ev, const CoarseGrid& gr, int begin, int end) {
  ScanResult out;
  std::vector<double> extra;
  for (int b = begin; b < end; ++b) {
    for (int c = 0; c < gr.n_mu; ++c) {
      extra.clear();
      ev.theta_crossings(gr.phi(b), gr.mu(c), extra);
      for (double theta : extra) scan_shape(ev, {theta, gr.phi(b), gr.mu(c)}, gr.power_steps, out);
    }
  }
  return out;
}

template <class Scan>
ScanResult parallel_rows(int rows, unsigned threads, Scan&& scan) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows)));
  std::vector<ScanResult> chunks(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const int lo = static_cast<int>(t * rows / threads);
      const int hi = static_cast<int>((t + 1) * rows / threads);
      pool.emplace_back([&, t, lo, hi] { chunks[t] = scan(lo, hi); });
    }
  }
  // Chunks are contiguous and merged in order, so the outcome matches a serial scan.
  ScanResult out;
  for (const ScanResult& c : chunks) out.merge(c);
  return out;
}

double wrap_angle(double x) {
  x = std::remainder(x, 2.0 * kPi);
  return x;
}

// One refinement level: a lattice at 1/kHalf of the parent cell around the
// anchor, re-centered on each improvement so it can follow a ridge of active
// constraints. Crossing angles inside the window are evaluated too.
Candidate refine_level(const Evaluator& ev, const Candidate& anchor, double cell_theta, double cell_phi,
                       double cell_mu, double cell_frac, std::size_t& points) {
  Candidate best = anchor;
  std::array<int, 4> center{0, 0, 0, 0};
  std::vector<double> extra;
  auto try_shape = [&](const Shape& sh, const std::array<int, 4>& idx, std::array<int, 4>& next) {
    const ShapeGains g = ev.gains(sh);
    const Interval iv = ev.power_range(g);
    if (iv.empty()) return;
    for (int k = idx[3] - kHalf; k <= idx[3] + kHalf; ++k) {
      const double f = anchor.frac + cell_frac * k / kHalf;
      if (f < 0.0 || f > 1.0) continue;
      const double p = iv.lo + (iv.hi - iv.lo) * f;
      const double v = ev.score(g, p);
      ++points;
      if (v > best.score) {
        best = {v, sh, p, f};
        next = {idx[0], idx[1], idx[2], k};
      }
    }
  };
  for (int pass = 0; pass < kMaxRecenter; ++pass) {
    std::array<int, 4> next = center;
    for (int c = center[2] - kHalf; c <= center[2] + kHalf; ++c) {
      const double mu = anchor.shape.mu + cell_mu * c / kHalf;
      if (mu < 0.5 || mu > 1.0) continue;
      for (int a = center[0] - kHalf; a <= center[0] + kHalf; ++a) {
        const double theta = anchor.shape.theta + cell_theta * a / kHalf;
        if (theta < 0.0 || theta > kPi / 2.0) continue;
        for (int b = center[1] - kHalf; b <= center[1] + kHalf; ++b) {
          try_shape({theta, anchor.shape.phi + cell_phi * b / kHalf, mu}, {a, b, c, center[3]}, next);
        }
        extra.clear();
        ev.phi_crossings(theta, mu, extra);
        for (double phi : extra) {
          const int b = static_cast<int>(std::lround(wrap_angle(phi - anchor.shape.phi) / cell_phi * kHalf));
          try_shape({theta, phi, mu}, {a, b, c, center[3]}, next);
        }
      }
      for (int b = center[1] - kHalf; b <= center[1] + kHalf; ++b) {
        const double phi = anchor.shape.phi + cell_phi * b / kHalf;
        extra.clear();
        ev.theta_crossings(phi, mu, extra);
        for (double theta : extra) {
          const int a = static_cast<int>(std::lround((theta - anchor.shape.theta) / cell_theta * kHalf));
          try_shape({theta, phi, mu}, {a, b, c, center[3]}, next);
        }
      }
    }
    if (next == center) break;
    center = next;
  }
  return best;
}

}  // namespace

void GridSpec::validate() const {
  if (phase_steps < 2 || amplitude_steps < 2 || power_steps < 2 || rank2_mix_steps < 2) {
    throw StructuralError("GridSpec: every step count must be >= 2");
  }
  if (!std::isfinite(power_max)) throw StructuralError("GridSpec: power_max must be finite");
}

OracleResult grid_search(const ChannelSet& ch, const SystemParams& params, OracleObjective objective,
                         const GridSpec& grid, ConstraintMask mask, unsigned threads) {
  if (ch.n_t() != 2) throw StructuralError("grid_search: only two transmit antennas are supported");
  grid.validate();
  params.validate();

  const double power_max = grid.power_max > 0.0 ? grid.power_max : params.p_tx;
  const Evaluator ev(ch, params, objective, power_max, mask);
  const CoarseGrid gr{grid.amplitude_steps + 1, grid.phase_steps, grid.rank2_mix_steps + 1, grid.power_steps};
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  ScanResult scan = parallel_rows(gr.n_theta, threads, [&](int lo, int hi) { return scan_theta_rows(ev, gr, lo, hi); });
  scan.merge(parallel_rows(gr.n_phi, threads, [&](int lo, int hi) { return scan_phi_rows(ev, gr, lo, hi); }));

  OracleResult res;
  res.points_evaluated = scan.points;
  res.feasible_shapes = scan.feasible_shapes;
  if (res.feasible_shapes == 0) return res;

  Candidate best = scan.best;
  const double coarse = best.score;
  double cell_theta = kPi / 2.0 / grid.amplitude_steps;
  double cell_phi = 2.0 * kPi / grid.phase_steps;
  double cell_mu = 0.5 / grid.rank2_mix_steps;
  double cell_frac = 1.0 / grid.power_steps;
  double level_gain = 0.0;
  for (int level = 0; level < kRefineLevels; ++level) {
    const Candidate next = refine_level(ev, best, cell_theta, cell_phi, cell_mu, cell_frac, res.points_evaluated);
    level_gain = next.score - best.score;
    best = next;
    cell_theta /= kHalf;
    cell_phi /= kHalf;
    cell_mu /= kHalf;
    cell_frac /= kHalf;
  }

  const double sign = objective.minimizes() ? -1.0 : 1.0;
  res.feasible = true;
  res.q = shape_matrix(best.shape, best.power);
  res.value = sign * best.score;
  res.coarse_value = sign * coarse;
  res.resolution_slack = level_gain;
  return res;
}

}  // namespace seeopt
