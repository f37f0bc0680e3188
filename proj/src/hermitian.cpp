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

#include "seeopt/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace seeopt {

namespace {

bool all_finite(std::span<const cplx> v) {
  return std::all_of(v.begin(), v.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

void require(bool ok, const std::string& what) {
  if (!ok) throw StructuralError(what);
}

}  // namespace

ComplexVector::ComplexVector(std::vector<cplx> entries) : entries_(std::move(entries)) {
  require(all_finite(entries_), "ComplexVector: non-finite entry");
}

ComplexVector ComplexVector::basis(std::size_t n, std::size_t k) {
  require(k < n, "ComplexVector::basis: index out of range");
  std::vector<cplx> e(n, cplx{0.0, 0.0});
  e[k] = 1.0;
  return ComplexVector(std::move(e));
}

double ComplexVector::norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

cplx dot(const ComplexVector& a, const ComplexVector& b) {
  require(a.size() == b.size(), "dot: dimension mismatch");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

ComplexVector ComplexVector::scaled(cplx s) const {
  std::vector<cplx> e(entries_);
  for (auto& z : e) z *= s;
  return ComplexVector(std::move(e));
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  HermitianMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.coords_[i] = 1.0;
  return m;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  HermitianMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    require(std::isfinite(d[i]), "HermitianMatrix::diagonal: non-finite entry");
    m.coords_[i] = d[i];
  }
  return m;
}

HermitianMatrix HermitianMatrix::outer(const ComplexVector& v) {
  const std::size_t n = v.size();
  HermitianMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.coords_[i] = std::norm(v[i]);
    for (std::size_t j = 0; j < i; ++j) {
      const cplx z = v[i] * std::conj(v[j]);
      const std::size_t k = lower_index(n, i, j);
      m.coords_[k] = z.real();
      m.coords_[k + 1] = z.imag();
    }
  }
  return m;
}

HermitianMatrix HermitianMatrix::from_coords(std::size_t n, std::vector<double> coords) {
  require(coords.size() == dimension(n), "HermitianMatrix::from_coords: wrong coordinate count");
  require(std::all_of(coords.begin(), coords.end(), [](double x) { return std::isfinite(x); }),
          "HermitianMatrix::from_coords: non-finite coordinate");
  HermitianMatrix m;
  m.n_ = n;
  m.coords_ = std::move(coords);
  return m;
}

HermitianMatrix HermitianMatrix::from_dense(std::size_t n, std::span<const cplx> a, double tol) {
  require(a.size() == n * n, "HermitianMatrix::from_dense: expected n*n entries");
  require(all_finite(a), "HermitianMatrix::from_dense: non-finite entry");
  double scale = 1.0;
  for (const auto& z : a) scale = std::max(scale, std::abs(z));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (std::abs(a[i * n + j] - std::conj(a[j * n + i])) > tol * scale) {
        throw StructuralError("HermitianMatrix::from_dense: matrix is not Hermitian at (" +
                              std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  return from_lower(n, a);
}

HermitianMatrix HermitianMatrix::from_lower(std::size_t n, std::span<const cplx> a) {
  require(a.size() == n * n, "HermitianMatrix::from_lower: expected n*n entries");
  HermitianMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.coords_[i] = a[i * n + i].real();
    for (std::size_t j = 0; j < i; ++j) {
      const std::size_t k = lower_index(n, i, j);
      m.coords_[k] = a[i * n + j].real();
      m.coords_[k + 1] = a[i * n + j].imag();
    }
  }
  return m;
}

cplx HermitianMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i == j) return {coords_[i], 0.0};
  if (i > j) {
    const std::size_t k = lower_index(n_, i, j);
    return {coords_[k], coords_[k + 1]};
  }
  const std::size_t k = lower_index(n_, j, i);
  return {coords_[k], -coords_[k + 1]};
}

double HermitianMatrix::trace() const {
  return std::accumulate(coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>(n_), 0.0);
}

double HermitianMatrix::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += coords_[i] * coords_[i];
  for (std::size_t k = n_; k < coords_.size(); ++k) s += 2.0 * coords_[k] * coords_[k];
  return std::sqrt(s);
}

std::vector<cplx> HermitianMatrix::to_dense() const {
  std::vector<cplx> a(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) a[i * n_ + j] = (*this)(i, j);
  return a;
}

void HermitianMatrix::require_same_size(const HermitianMatrix& o) const {
  require(n_ == o.n_, "HermitianMatrix: dimension mismatch");
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  require_same_size(o);
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] += o.coords_[k];
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
  require_same_size(o);
  for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] -= o.coords_[k];
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

std::vector<double> dual_coords(std::size_t n, std::span<const cplx> b) {
  require(b.size() == n * n, "dual_coords: expected n*n entries");
  std::vector<double> c(HermitianMatrix::dimension(n));
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = b[i * n + i].real();
    for (std::size_t j = 0; j < i; ++j) {
      const cplx bij = b[i * n + j];
      const cplx bji = b[j * n + i];
      const std::size_t k = HermitianMatrix::lower_index(n, i, j);
      c[k] = bij.real() + bji.real();
      c[k + 1] = bij.imag() - bji.imag();
    }
  }
  return c;
}

std::vector<double> quadratic_form_coeffs(const ComplexVector& h) {
  const std::size_t n = h.size();
  std::vector<cplx> hh(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) hh[i * n + j] = h[i] * std::conj(h[j]);
  return dual_coords(n, hh);
}

std::vector<double> trace_coeffs(std::size_t n) {
  std::vector<double> c(HermitianMatrix::dimension(n), 0.0);
  for (std::size_t i = 0; i < n; ++i) c[i] = 1.0;
  return c;
}

double quadratic_form(const ComplexVector& h, const HermitianMatrix& q) {
  const std::size_t n = q.size();
  require(h.size() == n, "quadratic_form: dimension mismatch");
  const auto x = q.coords();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += x[i] * std::norm(h[i]);
    for (std::size_t j = 0; j < i; ++j) {
      const std::size_t k = HermitianMatrix::lower_index(n, i, j);
      // conj(h_i) A_ij h_j + conj(h_j) A_ji h_i = 2 Re(conj(h_i) A_ij h_j)
      s += 2.0 * (std::conj(h[i]) * cplx{x[k], x[k + 1]} * h[j]).real();
    }
  }
  return s;
}

Eigensystem eig_hermitian(const HermitianMatrix& q) {
  const std::size_t n = q.size();
  for (double c : q.coords()) {
    if (!std::isfinite(c)) throw StructuralError("eig_hermitian: non-finite entry");
  }
  std::vector<cplx> a = q.to_dense();
  std::vector<cplx> v(n * n, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto off_norm2 = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) s += std::norm(a[i * n + j]);
    return s;
  };
  double total = 0.0;
  for (const auto& z : a) total += std::norm(z);
  const double stop = 1e-32 * total;

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm2() > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        const cplx apr = a[p * n + r];
        const double mag = std::abs(apr);
        if (mag == 0.0) continue;
        // Phase the (p, r) entry real, then apply a real Jacobi rotation.
        const cplx phase = std::conj(apr) / mag;  // e^{-i phi}
        const double app = a[p * n + p].real();
        const double arr = a[r * n + r].real();
        const double theta = (arr - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U restricted to (p, r): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const cplx upp = c, upr = s, urp = -s * phase, urr = c * phase;
        for (std::size_t k = 0; k < n; ++k) {  // A <- A U
          const cplx akp = a[k * n + p], akr = a[k * n + r];
          a[k * n + p] = akp * upp + akr * urp;
          a[k * n + r] = akp * upr + akr * urr;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- U^H A
          const cplx apk = a[p * n + k], ark = a[r * n + k];
          a[p * n + k] = std::conj(upp) * apk + std::conj(urp) * ark;
          a[r * n + k] = std::conj(upr) * apk + std::conj(urr) * ark;
        }
        for (std::size_t k = 0; k < n; ++k) {  // V <- V U
          const cplx vkp = v[k * n + p], vkr = v[k * n + r];
          v[k * n + p] = vkp * upp + vkr * urp;
          v[k * n + r] = vkp * upr + vkr * urr;
        }
        a[p * n + r] = 0.0;
        a[r * n + p] = 0.0;
        a[p * n + p] = a[p * n + p].real();
        a[r * n + r] = a[r * n + r].real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x * n + x].real() > a[y * n + y].real(); });
  Eigensystem es;
  es.values.reserve(n);
  es.vectors.reserve(n);
  for (std::size_t idx : order) {
    es.values.push_back(a[idx * n + idx].real());
    std::vector<cplx> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v[k * n + idx];
    es.vectors.emplace_back(std::move(col));
  }
  return es;
}

int numeric_rank(const Eigensystem& es, double rel_tol) {
  if (es.values.empty() || es.values.front() <= 0.0) return 0;
  const double cut = rel_tol * es.values.front();
  return static_cast<int>(std::count_if(es.values.begin(), es.values.end(), [&](double l) { return l > cut; }));
}

int numeric_rank(const HermitianMatrix& q, double rel_tol) { return numeric_rank(eig_hermitian(q), rel_tol); }

bool is_psd(const HermitianMatrix& q, double rel_tol) {
  if (q.size() == 0) return true;
  const auto es = eig_hermitian(q);
  const double scale = std::max(std::abs(es.values.front()), std::abs(es.values.back()));
  return es.values.back() >= -rel_tol * scale;
}

}  // namespace seeopt
