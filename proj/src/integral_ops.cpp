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

#include "oplab/integral_ops.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "oplab/errors.hpp"
#include "oplab/kernels.hpp"

namespace oplab {

IntegralOperator::IntegralOperator(QuadratureGrid grid, ComplexMatrix samples)
    : grid_(std::move(grid)), samples_(std::move(samples)) {
  if (samples_.rows() != grid_.size() || samples_.cols() != grid_.size()) {
    throw DimensionError("IntegralOperator: kernel samples do not match the grid");
  }
}

ComplexMatrix IntegralOperator::matrix() const {
  ComplexMatrix m = samples_;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= grid_.weights[j];
  return m;
}

ComplexMatrix IntegralOperator::symmetrized() const {
  const std::size_t n = size();
  std::vector<double> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(grid_.weights[i]);
  ComplexMatrix m = samples_;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) *= root[i] * root[j];
  return m;
}

CVector IntegralOperator::apply(std::span<const Complex> f) const {
  if (f.size() != size()) throw DimensionError("IntegralOperator::apply: length mismatch");
  CVector out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    Complex s = 0.0;
    const auto row = samples_.row(i);
    for (std::size_t j = 0; j < size(); ++j) s += grid_.weights[j] * row[j] * f[j];
    out[i] = s;
  }
  return out;
}

IntegralOperator nystrom(const KernelFunction& k, const QuadratureGrid& grid) {
  validate(grid);
  ComplexMatrix samples(grid.size(), grid.size());
  kernels::parallel::sample_kernel(k, grid.nodes, grid.nodes, samples);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const Complex v = samples(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw EvaluationError(fmt::format("kernel not finite at nodes ({}, {}) = ({}, {})", i, j,
                                          grid.nodes[i], grid.nodes[j]));
      }
    }
  }
  return {grid, std::move(samples)};
}

double hs_norm(const IntegralOperator& t) { return frobenius_norm(t.symmetrized()); }

double hs_norm(const ComplexMatrix& a) { return frobenius_norm(a); }

Complex trace(const IntegralOperator& t) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) s += t.grid().weights[i] * t.samples()(i, i);
  return s;
}

Complex trace(const ComplexMatrix& a) { return a.trace(); }

VolterraOperators volterra(const QuadratureGrid& grid) {
  if (grid.a != 0.0 || grid.b != 1.0) {
    throw DomainError(fmt::format("volterra: grid must cover [0, 1], got [{}, {}]", grid.a, grid.b));
  }
  auto v = nystrom([](double x, double y) { return Complex(y < x ? 1.0 : (y == x ? 0.5 : 0.0)); }, grid);
  auto vv = nystrom([](double x, double y) { return Complex(1.0 - std::max(x, y)); }, grid);
  return {std::move(v), std::move(vv)};
}

RayleighResult rayleigh_refine(const ComplexMatrix& b, std::size_t k) {
  if (!b.is_square()) throw DimensionError("rayleigh_refine: matrix must be square");
  const std::size_t n = b.rows();
  if (k > n) throw DimensionError(fmt::format("rayleigh_refine: {} values requested from dimension {}", k, n));
  if (!is_hermitian(b)) throw PreconditionError("rayleigh_refine: matrix is not Hermitian");
  const double scale = frobenius_norm(b);
  const double slack = 1e-10 * (1.0 + scale);
  {
    ComplexMatrix lifted = b;
    for (std::size_t i = 0; i < n; ++i) lifted(i, i) += slack;
    if (!cholesky(lifted)) throw PreconditionError("rayleigh_refine: matrix is not positive semidefinite");
  }

  const double eps = std::ldexp(1.0, -52);
  const double cap = 2.0 * scale + 1.0;
  const double delta = 1e-3 * (1.0 + scale);
  RayleighResult out;
  for (std::size_t j = 0; j < k; ++j) {
    // On the complement of the previous minimizers, M = P B P + cap (I - P)
    // agrees with B and is larger than any Rayleigh quotient elsewhere, so
    // its lowest eigenvector is the constrained minimizer.
    auto project = [&](CVector& x) {
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& m : out.minimizers) {
          const Complex c = inner_product(m, x);
          for (std::size_t r = 0; r < n; ++r) x[r] -= c * m[r];
        }
      }
    };
    ComplexMatrix p = ComplexMatrix::identity(n);
    for (const auto& m : out.minimizers) p -= ComplexMatrix::outer(m, m);
    ComplexMatrix mmat = p * b * p;
    ComplexMatrix q = ComplexMatrix::identity(n) - p;
    q *= cap;
    mmat += q;
    for (std::size_t i = 0; i < n; ++i) mmat(i, i) += delta;
    const LuDecomposition lu(std::move(mmat));

    CVector x(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i);
      x[i] = Complex(std::cos(0.7 * t + 0.3), 0.5 * std::sin(1.3 * t + 0.1));
    }
    project(x);
    double quotient = 0.0;
    int calm = 0;
    for (int it = 0; it < 20000 && calm < 3; ++it) {
      x = lu.solve(x);
      project(x);
      const double nx = norm(x);
      if (nx == 0.0) throw ConvergenceError("rayleigh_refine: iterate vanished");
      for (auto& v : x) v /= nx;
      const double next = inner_product(x, b * x).real();
      calm = (it > 0 && std::abs(next - quotient) <= 4.0 * eps * (1.0 + scale)) ? calm + 1 : 0;
      quotient = next;
    }
    if (!out.values.empty()) quotient = std::max(quotient, out.values.back());
    out.values.push_back(quotient);
    out.minimizers.push_back(std::move(x));
  }
  return out;
}

}  // namespace oplab
