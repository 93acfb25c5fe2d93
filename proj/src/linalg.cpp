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

#include "oplab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "oplab/errors.hpp"
#include "oplab/kernels.hpp"

namespace oplab {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(fmt::format("{}: shape mismatch {}x{} vs {}x{}", op, a.rows(), a.cols(),
                                     b.rows(), b.cols()));
  }
}

void require_square(const ComplexMatrix& a, const char* op) {
  if (!a.is_square()) {
    throw DimensionError(fmt::format("{}: matrix is {}x{}, expected square", op, a.rows(), a.cols()));
  }
}

}  // namespace

// ------------------------------------------------------------ ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionError(
        fmt::format("matrix {}x{} needs {} entries, got {}", rows, cols, rows * cols, data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> x, std::span<const Complex> y) {
  ComplexMatrix m(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * std::conj(y[j]);
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("from_rows: ragged rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return {r, c, std::move(entries)};
}

CVector ComplexMatrix::column(std::size_t j) const {
  CVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Complex ComplexMatrix::trace() const {
  require_square(*this, "trace");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError(
        fmt::format("matmul: {}x{} times {}x{}", a.rows(), a.cols(), b.rows(), b.cols()));
  }
  ComplexMatrix c(a.rows(), b.cols());
  kernels::parallel::matmul(a, b, c);
  return c;
}

CVector operator*(const ComplexMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) {
    throw DimensionError(fmt::format("matvec: {}x{} times length {}", a.rows(), a.cols(), x.size()));
  }
  CVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    auto row = a.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

CVector operator+(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector +: length mismatch");
  CVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

CVector operator-(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector -: length mismatch");
  CVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

CVector operator*(Complex s, const CVector& a) {
  CVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}

// ---------------------------------------------------------------- scalars

Complex inner_product(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) {
    throw DimensionError(fmt::format("inner_product: lengths {} and {}", x.size(), y.size()));
  }
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

double norm(std::span<const Complex> x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

double operator_norm(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  // sigma_max^2 is the top eigenvalue of the smaller Gram matrix.
  const ComplexMatrix gram = a.rows() >= a.cols() ? a.adjoint() * a : a * a.adjoint();
  const auto es = hermitian_eigensystem(gram);
  return std::sqrt(std::max(0.0, es.values.back()));
}

double frobenius_norm(const ComplexMatrix& a) { return norm(a.data()); }

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const auto& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "hadamard");
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.data().size(); ++k) c.data()[k] = a.data()[k] * b.data()[k];
  return c;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b + b * a; }

double hermitian_defect(const ComplexMatrix& a) {
  require_square(a, "hermitian_defect");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

double default_hermitian_tolerance(const ComplexMatrix& a) {
  double inf_norm = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (const auto& v : a.row(i)) s += std::abs(v);
    inf_norm = std::max(inf_norm, s);
  }
  return 1e-10 * (1.0 + inf_norm);
}

bool is_hermitian(const ComplexMatrix& a, std::optional<double> tol) {
  if (!a.is_square()) return false;
  return hermitian_defect(a) <= tol.value_or(default_hermitian_tolerance(a));
}

// --------------------------------------------------------------------- LU

LuDecomposition::LuDecomposition(ComplexMatrix a) : lu_(std::move(a)) {
  require_square(lu_, "LuDecomposition");
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  double pmin = std::numeric_limits<double>::infinity();
  double pmax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
    }
    pmin = std::min(pmin, best);
    pmax = std::max(pmax, best);
    if (best == 0.0) continue;
    const Complex pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu_(i, k) / pivot;
      lu_(i, k) = f;
      if (f == 0.0) continue;
      auto ri = lu_.row(i);
      auto rk = lu_.row(k);
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= f * rk[j];
    }
  }
  pivot_ratio_ = (n == 0 || pmax == 0.0) ? 0.0 : pmin / pmax;
  if (n > 0 && pmin == 0.0) throw NearSingularError("LuDecomposition: matrix is singular");
}

CVector LuDecomposition::solve(std::span<const Complex> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw DimensionError("LuDecomposition::solve: length mismatch");
  CVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= lu_(ii, j) * x[j];
    x[ii] /= lu_(ii, ii);
  }
  return x;
}

ComplexMatrix LuDecomposition::solve(const ComplexMatrix& b) const {
  if (b.rows() != lu_.rows()) throw DimensionError("LuDecomposition::solve: row mismatch");
  ComplexMatrix x(b.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const auto col = solve(b.column(j));
    for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = col[i];
  }
  return x;
}

ComplexMatrix LuDecomposition::inverse() const {
  return solve(ComplexMatrix::identity(lu_.rows()));
}

ComplexMatrix inverse(const ComplexMatrix& a) { return LuDecomposition(a).inverse(); }

std::optional<ComplexMatrix> cholesky(const ComplexMatrix& a) {
  require_square(a, "cholesky");
  const std::size_t n = a.rows();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

// ------------------------------------------------------ SpectralResolution

SpectralResolution::SpectralResolution(std::vector<double> eigenvalues,
                                       std::vector<ComplexMatrix> bases)
    : eigenvalues_(std::move(eigenvalues)), bases_(std::move(bases)) {
  if (eigenvalues_.size() != bases_.size()) {
    throw DimensionError("SpectralResolution: one basis per eigenvalue required");
  }
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    if (i == 0) dimension_ = bases_[i].rows();
    if (bases_[i].rows() != dimension_) throw DimensionError("SpectralResolution: ragged bases");
    if (i > 0 && !(eigenvalues_[i] > eigenvalues_[i - 1])) {
      throw PreconditionError("SpectralResolution: eigenvalues must be strictly ascending");
    }
  }
}

std::vector<std::size_t> SpectralResolution::multiplicities() const {
  std::vector<std::size_t> m;
  m.reserve(bases_.size());
  for (const auto& b : bases_) m.push_back(b.cols());
  return m;
}

ComplexMatrix SpectralResolution::projection(std::size_t i) const {
  const auto& b = bases_.at(i);
  return b * b.adjoint();
}

CVector SpectralResolution::project(std::size_t i, std::span<const Complex> x) const {
  const auto& b = bases_.at(i);
  if (x.size() != dimension_) throw DimensionError("project: length mismatch");
  CVector coeff(b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    Complex s = 0.0;
    for (std::size_t r = 0; r < dimension_; ++r) s += std::conj(b(r, c)) * x[r];
    coeff[c] = s;
  }
  return b * std::span<const Complex>(coeff);
}

ComplexMatrix SpectralResolution::synthesize(const std::function<Complex(double)>& f) const {
  // sum_i f(lambda_i) B_i B_i^* assembled as V diag(f) V^*.
  ComplexMatrix scaled(dimension_, dimension_);
  ComplexMatrix vectors(dimension_, dimension_);
  std::size_t col = 0;
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    const Complex fi = f(eigenvalues_[i]);
    for (std::size_t c = 0; c < bases_[i].cols(); ++c, ++col) {
      for (std::size_t r = 0; r < dimension_; ++r) {
        vectors(r, col) = bases_[i](r, c);
        scaled(r, col) = fi * bases_[i](r, c);
      }
    }
  }
  return scaled * vectors.adjoint();
}

ComplexMatrix SpectralResolution::reconstruct() const {
  return synthesize([](double x) { return Complex(x); });
}

double default_cluster_tolerance(const ComplexMatrix& a) {
  return std::max(1e-8, 1e-12 * operator_norm(a));
}

SpectralResolution resolve(const HermitianEigensystem& es, double cluster_tol) {
  const std::size_t n = es.values.size();
  std::vector<double> values;
  std::vector<ComplexMatrix> bases;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && es.values[end] - es.values[end - 1] <= cluster_tol) ++end;
    double mean = 0.0;
    for (std::size_t k = start; k < end; ++k) mean += es.values[k];
    mean /= static_cast<double>(end - start);
    ComplexMatrix b(n, end - start);
    for (std::size_t k = start; k < end; ++k)
      for (std::size_t r = 0; r < n; ++r) b(r, k - start) = es.vectors(r, k);
    values.push_back(mean);
    bases.push_back(std::move(b));
    start = end;
  }
  return {std::move(values), std::move(bases)};
}

SpectralResolution hermitian_eig(const ComplexMatrix& a, std::optional<double> cluster_tol) {
  require_square(a, "hermitian_eig");
  if (!is_hermitian(a)) {
    throw PreconditionError(
        fmt::format("hermitian_eig: matrix is not Hermitian (defect {:.3e})", hermitian_defect(a)));
  }
  const auto es = hermitian_eigensystem(a);
  double tol = 0.0;
  if (cluster_tol) {
    tol = *cluster_tol;
  } else {
    double spectral_norm = 0.0;
    for (double v : es.values) spectral_norm = std::max(spectral_norm, std::abs(v));
    tol = std::max(1e-8, 1e-12 * spectral_norm);
  }
  return resolve(es, tol);
}

// ------------------------------------------------------ InnerProductSpace

InnerProductSpace::InnerProductSpace(std::size_t dimension, Pairing pairing)
    : dimension_(dimension), pairing_(std::move(pairing)) {}

InnerProductSpace InnerProductSpace::euclidean(std::size_t dimension) {
  return {dimension, [](std::span<const Complex> x, std::span<const Complex> y) {
            return inner_product(x, y);
          }};
}

InnerProductSpace InnerProductSpace::weighted(std::vector<double> weights) {
  const std::size_t n = weights.size();
  return {n, [w = std::move(weights)](std::span<const Complex> x, std::span<const Complex> y) {
            if (x.size() != w.size() || y.size() != w.size()) {
              throw DimensionError("weighted pairing: length mismatch");
            }
            Complex s = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::conj(x[i]) * y[i];
            return s;
          }};
}

Complex InnerProductSpace::pair(std::span<const Complex> x, std::span<const Complex> y) const {
  if (x.size() != dimension_ || y.size() != dimension_) {
    throw DimensionError(fmt::format("pairing expects length {}, got {} and {}", dimension_,
                                     x.size(), y.size()));
  }
  return pairing_(x, y);
}

double InnerProductSpace::norm(std::span<const Complex> x) const {
  return std::sqrt(std::max(0.0, pair(x, x).real()));
}

std::vector<CVector> gram_schmidt(const std::vector<CVector>& vectors,
                                  const InnerProductSpace& space) {
  double largest = 0.0;
  for (const auto& v : vectors) largest = std::max(largest, space.norm(v));
  const double tau_dep = 1e-10 * largest;

  std::vector<CVector> out;
  out.reserve(vectors.size());
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    CVector w = vectors[k];
    // Two passes of modified Gram-Schmidt keep the output orthonormal to
    // working precision even for badly conditioned inputs.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : out) {
        const Complex c = space.pair(e, w);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * e[i];
      }
    }
    const double nw = space.norm(w);
    if (!(nw > tau_dep)) {
      throw DependenceError(k, fmt::format("gram_schmidt: vector {} depends on its predecessors "
                                           "(residual norm {:.3e})", k, nw));
    }
    for (auto& v : w) v /= nw;
    out.push_back(std::move(w));
  }
  return out;
}

// --------------------------------------------------------------------- json

nlohmann::json to_json(const ComplexMatrix& m) {
  std::vector<double> re;
  std::vector<double> im;
  re.reserve(m.data().size());
  im.reserve(m.data().size());
  for (const auto& v : m.data()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != rows * cols || im.size() != rows * cols) {
    throw DimensionError(fmt::format("matrix json: {}x{} needs {} entries, got re={} im={}", rows,
                                     cols, rows * cols, re.size(), im.size()));
  }
  std::vector<Complex> entries(rows * cols);
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = {re[k], im[k]};
  return {rows, cols, std::move(entries)};
}

}  // namespace oplab
