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

// Complex Hermitian matrices stored in real coordinates, plus the spectral
// routines the optimizer and certifier need.
//
// Coordinate layout for an n x n matrix (n^2 reals):
//   [0, n)            real diagonal entries d_i
//   n + 2*p, n+2*p+1  real and imaginary part of the strictly-lower entry
//                     A(i, j), i > j, where p = i*(i-1)/2 + j
// The upper triangle is implied, so A == A^H holds by construction.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace seeopt {

using cplx = std::complex<double>;

/// Malformed input: dimension mismatch, non-finite entries, broken symmetry.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
class ContractViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t n) : entries_(n, cplx{0.0, 0.0}) {}
  explicit ComplexVector(std::vector<cplx> entries);

  static ComplexVector basis(std::size_t n, std::size_t k);

  std::size_t size() const { return entries_.size(); }
  const cplx& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const cplx> entries() const { return entries_; }

  double norm() const;
  /// Conjugate-linear in the first argument: a^H b.
  friend cplx dot(const ComplexVector& a, const ComplexVector& b);

  ComplexVector scaled(cplx s) const;

 private:
  std::vector<cplx> entries_;
};

class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t n) : n_(n), coords_(n * n, 0.0) {}

  static HermitianMatrix zero(std::size_t n) { return HermitianMatrix(n); }
  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> d);
  /// v v^H
  static HermitianMatrix outer(const ComplexVector& v);
  static HermitianMatrix from_coords(std::size_t n, std::vector<double> coords);
  /// Row-major n x n input. Throws StructuralError unless |A - A^H| <= tol * max(1, |A|_max).
  static HermitianMatrix from_dense(std::size_t n, std::span<const cplx> row_major, double tol = 1e-9);
  /// Builds from the lower triangle of a row-major matrix; the upper triangle is ignored.
  static HermitianMatrix from_lower(std::size_t n, std::span<const cplx> row_major);

  /// Number of real coordinates for an n x n Hermitian matrix.
  static constexpr std::size_t dimension(std::size_t n) { return n * n; }
  static constexpr std::size_t lower_index(std::size_t n, std::size_t i, std::size_t j) {
    return n + 2 * (i * (i - 1) / 2 + j);
  }

  std::size_t size() const { return n_; }
  std::span<const double> coords() const { return coords_; }

  cplx operator()(std::size_t i, std::size_t j) const;
  double trace() const;
  double frobenius_norm() const;
  std::vector<cplx> to_dense() const;

  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);
  HermitianMatrix& operator*=(double s);
  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }

 private:
  void require_same_size(const HermitianMatrix& o) const;

  std::size_t n_ = 0;
  std::vector<double> coords_;
};

/// Re tr(A B) expressed in coordinates of A for a fixed dense B:
/// returns c such that Re tr(A B) = c . coords(A). B is row-major and is
/// assumed Hermitian.
std::vector<double> dual_coords(std::size_t n, std::span<const cplx> dense_b);

/// c such that h^H Q h = c . coords(Q).
std::vector<double> quadratic_form_coeffs(const ComplexVector& h);
/// c such that tr(Q) = c . coords(Q).
std::vector<double> trace_coeffs(std::size_t n);

/// Re(h^H Q h).
double quadratic_form(const ComplexVector& h, const HermitianMatrix& q);

struct Eigensystem {
  std::vector<double> values;          // descending
  std::vector<ComplexVector> vectors;  // orthonormal, vectors[i] pairs with values[i]
};

/// Cyclic complex Jacobi rotations.
Eigensystem eig_hermitian(const HermitianMatrix& q);

inline constexpr double kDefaultRankTol = 1e-4;

/// Count of eigenvalues above rel_tol * lambda_max; 0 for the zero matrix.
int numeric_rank(const HermitianMatrix& q, double rel_tol = kDefaultRankTol);
int numeric_rank(const Eigensystem& es, double rel_tol = kDefaultRankTol);

/// True when lambda_min >= -rel_tol * max|lambda|.
bool is_psd(const HermitianMatrix& q, double rel_tol = 1e-8);

}  // namespace seeopt
