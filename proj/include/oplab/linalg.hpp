// Copyright 2026 The oplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

namespace oplab {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const double> d);
  static ComplexMatrix diagonal(std::span<const Complex> d);
  /// x y^*
  static ComplexMatrix outer(std::span<const Complex> x, std::span<const Complex> y);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  CVector column(std::size_t j) const;

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
CVector operator*(const ComplexMatrix& a, std::span<const Complex> x);

CVector operator+(const CVector& a, const CVector& b);
CVector operator-(const CVector& a, const CVector& b);
CVector operator*(Complex s, const CVector& a);

/// <x, y> = sum conj(x_i) y_i : conjugate-linear in the first slot.
Complex inner_product(std::span<const Complex> x, std::span<const Complex> y);
double norm(std::span<const Complex> x);

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
/// max |a_ij|
double max_abs(const ComplexMatrix& a);
/// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |A_mn - conj(A_nm)|
double hermitian_defect(const ComplexMatrix& a);
/// 1e-10 (1 + ||A||_inf), the default Hermiticity threshold.
double default_hermitian_tolerance(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, std::optional<double> tol = std::nullopt);

/// LU with partial pivoting.
class LuDecomposition {
 public:
  explicit LuDecomposition(ComplexMatrix a);
  CVector solve(std::span<const Complex> b) const;
  ComplexMatrix solve(const ComplexMatrix& b) const;
  ComplexMatrix inverse() const;
  /// Smallest |pivot| / largest |pivot|; a cheap singularity indicator.
  double pivot_ratio() const noexcept { return pivot_ratio_; }

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  double pivot_ratio_ = 0.0;
};

ComplexMatrix inverse(const ComplexMatrix& a);

/// Cholesky factor L with A = L L^*. Returns nullopt when A is not
/// numerically positive definite.
std::optional<ComplexMatrix> cholesky(const ComplexMatrix& a);

// ---------------------------------------------------------------- spectra

/// Eigenvalues ascending, eigenvectors as the columns of `vectors`.
struct HermitianEigensystem {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Householder tridiagonalization followed by implicit QL.
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& a);

/// Cyclic Jacobi; slow but simple, kept as a reference solver.
HermitianEigensystem jacobi_eigensystem(const ComplexMatrix& a, double tol = 1e-15,
                                        int max_sweeps = 100);

/// A = sum_i lambda_i Pi_i with distinct ascending lambda_i.
///
/// Projections are materialised on demand from an orthonormal basis of each
/// eigenspace, so a resolution of an n x n matrix costs O(n^2) memory.
class SpectralResolution {
 public:
  SpectralResolution() = default;
  SpectralResolution(std::vector<double> eigenvalues, std::vector<ComplexMatrix> bases);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return eigenvalues_.size(); }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  std::vector<std::size_t> multiplicities() const;

  /// Columns form an orthonormal basis of the i-th eigenspace.
  const ComplexMatrix& basis(std::size_t i) const { return bases_.at(i); }
  ComplexMatrix projection(std::size_t i) const;
  /// Pi_i x without forming Pi_i.
  CVector project(std::size_t i, std::span<const Complex> x) const;

  /// sum_i f(lambda_i) Pi_i
  ComplexMatrix synthesize(const std::function<Complex(double)>& f) const;
  ComplexMatrix reconstruct() const;

 private:
  std::size_t dimension_ = 0;
  std::vector<double> eigenvalues_;
  std::vector<ComplexMatrix> bases_;
};

/// max(1e-8, 1e-12 ||A||)
double default_cluster_tolerance(const ComplexMatrix& a);

/// Spectral resolution of a Hermitian matrix. Eigenvalues closer than
/// `cluster_tol` (chained) share one projection.
SpectralResolution hermitian_eig(const ComplexMatrix& a,
                                 std::optional<double> cluster_tol = std::nullopt);

/// Groups an eigensystem into a resolution.
SpectralResolution resolve(const HermitianEigensystem& es, double cluster_tol);

// ---------------------------------------------------------- inner products

/// A finite dimensional space with a (possibly weighted) sesquilinear
/// pairing, conjugate-linear in the first slot.
class InnerProductSpace {
 public:
  using Pairing = std::function<Complex(std::span<const Complex>, std::span<const Complex>)>;

  static InnerProductSpace euclidean(std::size_t dimension);
  /// <x, y> = sum_i w_i conj(x_i) y_i, e.g. a quadrature rule.
  static InnerProductSpace weighted(std::vector<double> weights);

  InnerProductSpace(std::size_t dimension, Pairing pairing);

  std::size_t dimension() const noexcept { return dimension_; }
  Complex pair(std::span<const Complex> x, std::span<const Complex> y) const;
  double norm(std::span<const Complex> x) const;

 private:
  std::size_t dimension_;
  Pairing pairing_;
};

/// Modified Gram-Schmidt. Throws DependenceError naming the first input whose
/// residual norm falls below 1e-10 times the largest input norm.
std::vector<CVector> gram_schmidt(const std::vector<CVector>& vectors,
                                  const InnerProductSpace& space);

// -------------------------------------------------------------------- json

nlohmann::json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace oplab
