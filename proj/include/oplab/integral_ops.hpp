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

// Nystrom discretisation of integral operators (T f)(x) = int k(x, y) f(y) dy.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "oplab/linalg.hpp"
#include "oplab/quadrature.hpp"

namespace oplab {

using KernelFunction = std::function<Complex(double, double)>;

class IntegralOperator {
 public:
  IntegralOperator() = default;
  IntegralOperator(QuadratureGrid grid, ComplexMatrix samples);

  const QuadratureGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }
  /// K_ij = k(x_i, x_j)
  const ComplexMatrix& samples() const noexcept { return samples_; }
  /// K W, acting on nodal values.
  ComplexMatrix matrix() const;
  /// W^{1/2} K W^{1/2}; Hermitian when the kernel is.
  ComplexMatrix symmetrized() const;
  /// (T f)(x_i) = sum_j w_j K_ij f_j
  CVector apply(std::span<const Complex> f) const;

 private:
  QuadratureGrid grid_;
  ComplexMatrix samples_;
};

/// Throws EvaluationError naming the offending indices if a sample is not finite.
IntegralOperator nystrom(const KernelFunction& k, const QuadratureGrid& grid);

/// sqrt(sum_ij w_i w_j |K_ij|^2)
double hs_norm(const IntegralOperator& t);
/// Frobenius norm.
double hs_norm(const ComplexMatrix& a);

/// sum_i w_i K_ii
Complex trace(const IntegralOperator& t);
Complex trace(const ComplexMatrix& a);

struct VolterraOperators {
  /// Kernel 1 for y < x, 1/2 on the diagonal, 0 above.
  IntegralOperator v;
  /// Kernel 1 - max(x, y).
  IntegralOperator vstar_v;
};

/// Requires grid.a = 0, grid.b = 1.
VolterraOperators volterra(const QuadratureGrid& grid);

struct RayleighResult {
  std::vector<double> values;
  /// Unit minimizers, mutually orthogonal.
  std::vector<CVector> minimizers;
};

/// Successive minima of <x, B x> / |x|^2 over the orthogonal complement of
/// the previous minimizers. B must be Hermitian and positive semidefinite.
RayleighResult rayleigh_refine(const ComplexMatrix& b, std::size_t k);

}  // namespace oplab
