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

#include "seeopt/barrier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <json.hpp>

namespace seeopt {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = std::numbers::ln2;

MatrixXcd dense_q(std::size_t n, std::span<const double> x) {
  MatrixXcd q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    q(i, i) = x[i];
    for (std::size_t j = 0; j < i; ++j) {
      const std::size_t k = HermitianMatrix::lower_index(n, i, j);
      q(i, j) = cplx{x[k], x[k + 1]};
      q(j, i) = cplx{x[k], -x[k + 1]};
    }
  }
  return q;
}

// c with Re tr(A M) = c . coords(A).
void dual_coords_into(const MatrixXcd& m, std::span<double> out) {
  const std::size_t n = static_cast<std::size_t>(m.rows());
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = m(i, i).real();
    for (std::size_t j = 0; j < i; ++j) {
      const std::size_t k = HermitianMatrix::lower_index(n, i, j);
      out[k] = m(i, j).real() + m(j, i).real();
      out[k + 1] = m(i, j).imag() - m(j, i).imag();
    }
  }
}

double dotv(std::span<const double> a, std::span<const double> x) {
  double s = 0.0;
  const std::size_t m = std::min(a.size(), x.size());
  for (std::size_t i = 0; i < m; ++i) s += a[i] * x[i];
  return s;
}

double log_arg(const BarrierProblem& p, std::span<const double> x) {
  return p.objective.log_weight == 0.0 ? 1.0 : 1.0 + dotv(p.objective.log_coeffs, x);
}

// Cholesky of Q(x); nullopt-like via success flag.
struct Factor {
  Eigen::LLT<MatrixXcd> llt;
  bool ok = false;
};

Factor factor_q(const BarrierProblem& p, std::span<const double> x) {
  Factor f;
  f.llt.compute(dense_q(p.n_t, x));
  if (f.llt.info() != Eigen::Success) return f;
  const auto& l = f.llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    if (!(l(i, i).real() > 0.0) || !std::isfinite(l(i, i).real())) return f;
  }
  f.ok = true;
  return f;
}

double log_det(const Factor& f) {
  const auto& l = f.llt.matrixLLT();
  double s = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) s += std::log(l(i, i).real());
  return 2.0 * s;
}

struct NewtonSystem {
  VectorXd grad;
  MatrixXd hess;
};

NewtonSystem newton_system(const BarrierProblem& p, std::span<const double> x, double t, const Factor& fq) {
  const std::size_t dim = p.dimension();
  const std::size_t nq = HermitianMatrix::dimension(p.n_t);
  NewtonSystem sys{VectorXd::Zero(static_cast<Eigen::Index>(dim)),
                   MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))};

  const auto& obj = p.objective;
  for (std::size_t i = 0; i < obj.linear.size(); ++i) sys.grad(i) += t * obj.linear[i];
  if (obj.log_weight != 0.0) {
    const double u = log_arg(p, x);
    const double g = t * obj.log_weight / (kLn2 * u);
    const double h = t * obj.log_weight / (kLn2 * u * u);
    for (std::size_t i = 0; i < obj.log_coeffs.size(); ++i) {
      sys.grad(i) -= g * obj.log_coeffs[i];
      for (std::size_t j = 0; j < obj.log_coeffs.size(); ++j)
        sys.hess(i, j) += h * obj.log_coeffs[i] * obj.log_coeffs[j];
    }
  }

  // -ln det Q: gradient -W, Hessian <W B_j W, B_k> with W = Q^{-1}.
  const std::size_t n = p.n_t;
  const MatrixXcd w = fq.llt.solve(MatrixXcd::Identity(n, n));
  std::vector<double> row(nq);
  {
    dual_coords_into(w, row);
    for (std::size_t i = 0; i < nq; ++i) sys.grad(i) -= row[i];
  }
  const cplx iu{0.0, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Index ii = static_cast<Eigen::Index>(i);
    dual_coords_into(w.col(ii) * w.row(ii), row);
    for (std::size_t k = 0; k < nq; ++k) sys.hess(i, k) += row[k];
    for (std::size_t j = 0; j < i; ++j) {
      const Eigen::Index jj = static_cast<Eigen::Index>(j);
      const MatrixXcd a = w.col(ii) * w.row(jj);
      const MatrixXcd b = w.col(jj) * w.row(ii);
      const std::size_t idx = HermitianMatrix::lower_index(n, i, j);
      dual_coords_into(a + b, row);
      for (std::size_t k = 0; k < nq; ++k) sys.hess(idx, k) += row[k];
      dual_coords_into(iu * (a - b), row);
      for (std::size_t k = 0; k < nq; ++k) sys.hess(idx + 1, k) += row[k];
    }
  }

  for (const auto& c : p.constraints) {
    const double slack = c.b - dotv(c.a, x);
    for (std::size_t i = 0; i < c.a.size(); ++i) {
      if (c.a[i] == 0.0) continue;
      sys.grad(i) += c.a[i] / slack;
      const double ai = c.a[i] / (slack * slack);
      for (std::size_t j = 0; j < c.a.size(); ++j) sys.hess(i, j) += ai * c.a[j];
    }
  }
  return sys;
}

// Largest step along dx that keeps Q > 0, the rows strict and the log argument positive.
double max_step(const BarrierProblem& p, std::span<const double> x, std::span<const double> dx, const Factor& fq) {
  double alpha = kInf;
  for (const auto& c : p.constraints) {
    const double rate = dotv(c.a, dx);
    if (rate > 0.0) alpha = std::min(alpha, (c.b - dotv(c.a, x)) / rate);
  }
  if (p.objective.log_weight != 0.0) {
    const double rate = dotv(p.objective.log_coeffs, dx);
    if (rate < 0.0) alpha = std::min(alpha, log_arg(p, x) / -rate);
  }
  // Q + a dQ > 0  <=>  I + a L^{-1} dQ L^{-H} > 0
  const std::size_t n = p.n_t;
  const MatrixXcd dq = dense_q(n, dx);
  const auto l = fq.llt.matrixL();
  MatrixXcd m = l.solve(dq);
  m = l.solve(m.adjoint().eval());
  std::vector<cplx> rm(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rm[i * n + j] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  const double lmin = eig_hermitian(HermitianMatrix::from_lower(n, rm)).values.back();
  if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  return alpha;
}

}  // namespace

double barrier_objective_value(const BarrierProblem& p, std::span<const double> x) {
  const auto& obj = p.objective;
  double f = obj.constant + dotv(obj.linear, x);
  if (obj.log_weight != 0.0) f -= obj.log_weight * std::log2(log_arg(p, x));
  return f;
}

bool strictly_feasible(const BarrierProblem& p, std::span<const double> x) {
  if (x.size() != p.dimension()) return false;
  for (const auto& c : p.constraints) {
    if (!(c.b - dotv(c.a, x) > 0.0)) return false;
  }
  if (!(log_arg(p, x) > 0.0)) return false;
  return factor_q(p, x).ok;
}

double barrier_merit(const BarrierProblem& p, std::span<const double> x, double t) {
  const Factor fq = factor_q(p, x);
  if (!fq.ok || !(log_arg(p, x) > 0.0)) return kInf;
  double phi = -log_det(fq);
  for (const auto& c : p.constraints) {
    const double slack = c.b - dotv(c.a, x);
    if (!(slack > 0.0)) return kInf;
    phi -= std::log(slack);
  }
  return t * barrier_objective_value(p, x) + phi;
}

std::vector<double> barrier_gradient(const BarrierProblem& p, std::span<const double> x, double t) {
  const Factor fq = factor_q(p, x);
  if (!fq.ok) throw ContractViolation("barrier_gradient: point is not strictly feasible");
  const auto sys = newton_system(p, x, t, fq);
  return {sys.grad.data(), sys.grad.data() + sys.grad.size()};
}

BarrierResult barrier_minimize(const BarrierProblem& p, std::vector<double> x0, const BarrierOptions& opts,
                               const StageCallback& on_stage) {
  if (!strictly_feasible(p, x0)) throw ContractViolation("barrier_minimize: start point is not strictly feasible");
  const std::size_t dim = p.dimension();
  const double m = p.barrier_parameter();

  BarrierResult res;
  res.x = std::move(x0);
  std::vector<double> trial(dim);
  double t = opts.t0;

  for (int stage = 0; stage < opts.max_stages; ++stage) {
    StageRecord rec;
    rec.t = t;
    double merit = barrier_merit(p, res.x, t);
    rec.merit_history.push_back(merit);
    bool centered = false;
    double decrement2 = 0.0;

    for (int it = 0; it < opts.max_newton_per_stage; ++it) {
      const Factor fq = factor_q(p, res.x);
      const auto sys = newton_system(p, res.x, t, fq);
      Eigen::LLT<MatrixXd> llt(sys.hess);
      VectorXd dx;
      if (llt.info() == Eigen::Success) {
        dx = llt.solve(-sys.grad);
      } else {
        dx = sys.hess.ldlt().solve(-sys.grad);
      }
      decrement2 = -sys.grad.dot(dx);
      if (!(decrement2 >= 0.0) || !dx.allFinite()) break;
      if (decrement2 / 2.0 <= opts.newton_tol) {
        centered = true;
        break;
      }
      const std::span<const double> dxs(dx.data(), dim);
      double alpha = std::min(1.0, opts.boundary_fraction * max_step(p, res.x, dxs, fq));
      const double slope = sys.grad.dot(dx);
      double next = kInf;
      bool accepted = false;
      for (; alpha > 1e-14; alpha *= opts.shrink) {
        for (std::size_t i = 0; i < dim; ++i) trial[i] = res.x[i] + alpha * dx(static_cast<Eigen::Index>(i));
        next = barrier_merit(p, trial, t);
        if (next < merit && next <= merit + opts.armijo * alpha * slope) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        // No representable decrease left: the point is as centered as rounding allows.
        centered = decrement2 <= 1e-10 * std::max(1.0, std::abs(merit));
        break;
      }
      res.x = trial;
      merit = next;
      rec.merit_history.push_back(merit);
      ++rec.newton_steps;
      ++res.newton_iters;
    }

    rec.objective = barrier_objective_value(p, res.x);
    rec.gap = m / t;
    rec.x = res.x;
    res.stages = stage + 1;
    res.objective = rec.objective;
    res.gap = rec.gap;
    res.decrement = std::sqrt(std::max(0.0, decrement2)) / t;
    if (opts.debug) {
      nlohmann::json line = {{"stage", stage}, {"t", t}, {"newton_steps", rec.newton_steps},
                             {"objective", rec.objective}, {"gap", rec.gap}, {"centered", centered}};
      *opts.debug << line.dump() << '\n';
    }
    res.stage_log.push_back(std::move(rec));

    if (!centered) {
      res.status = BarrierStatus::MaxIter;
      return res;
    }
    if (on_stage && on_stage(res.x, t, m / t)) {
      res.status = BarrierStatus::Optimal;
      return res;
    }
    if (m / t <= opts.gap_tol) {
      res.status = BarrierStatus::Optimal;
      return res;
    }
    t *= opts.mu;
  }
  res.status = BarrierStatus::MaxIter;
  return res;
}

}  // namespace seeopt
