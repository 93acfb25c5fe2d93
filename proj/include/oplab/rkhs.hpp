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

// Reproducing kernels. Convention: k(x, y) = k_y(x) = <k_x, k_y>, so Gram
// matrices are [k(x_i, x_j)] and f = sum_j a_j k_{x_j} has f(x) = sum_j a_j k(x, x_j).

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oplab/linalg.hpp"

namespace oplab {

/// 1 / (1 - conj(z) w), the Hardy kernel function k_z evaluated at w.
Complex hardy_kernel(Complex z, Complex w);
/// (1 - |z|^2 |w|^2) / |1 - conj(w) z|^2
double harmonic_hardy_kernel(Complex z, Complex w);
/// sum_n (conj(w) z)^n / (n + 1) = log(1 / (1 - conj(w) z)) / (conj(w) z); 1 at conj(w) z = 0.
Complex dirichlet_kernel(Complex z, Complex w);

class Kernel {
 public:
  enum class Domain { Disc, Interval, FiniteSet };
  using Evaluator = std::function<Complex(Complex, Complex)>;

  Kernel(std::string name, Domain domain, Evaluator k, double lo = 0.0, double hi = 0.0);

  static Kernel hardy();
  static Kernel harmonic_hardy();
  static Kernel dirichlet();
  /// Kernel on the finite set {0, ..., n-1} given by a Gram matrix; points
  /// are passed as their (real) index.
  static Kernel from_gram(std::string name, ComplexMatrix g);

  const std::string& name() const noexcept { return name_; }
  Domain domain() const noexcept { return domain_; }
  /// Throws DomainError outside the kernel's domain.
  void check_point(Complex x) const;
  Complex operator()(Complex x, Complex y) const;

 private:
  std::string name_;
  Domain domain_;
  Evaluator k_;
  double lo_;
  double hi_;
};

/// hardy, harmonic-hardy, dirichlet
std::vector<std::string> kernel_names();
Kernel kernel_by_name(std::string_view name);

/// [k(x_i, x_j)], assembled in parallel over rows.
ComplexMatrix gram(const Kernel& k, std::span<const Complex> points);

/// f = sum_i a_i k_{x_i}
struct SpanElement {
  std::vector<Complex> points;
  std::vector<Complex> coefficients;
};

/// f(x) = sum_i a_i k(x, x_i)
Complex reproduce(const Kernel& k, const SpanElement& f, Complex x);
/// <f, g> = sum_ij conj(a_i) b_j k(x_i, y_j)
Complex pairing(const Kernel& k, const SpanElement& f, const SpanElement& g);
double norm_squared(const Kernel& k, const SpanElement& f);

struct MultiplierReport {
  /// Truncation degree N.
  std::size_t degree = 0;
  /// Coefficients of b recovered from its values on N + 1 roots of unity.
  std::vector<Complex> b_coefficients;
  /// | M_b^* k_x - conj(b(x)) k_x | per probe point, truncated kernels.
  std::vector<double> residuals;
  double max_residual = 0.0;
  /// Operator norm of the truncated multiplication operator.
  double multiplier_norm = 0.0;
  double max_abs_b = 0.0;
  /// multiplier_norm >= max |b(x)| - max_residual
  bool norm_bound_holds = false;
};

/// Works in the orthonormal monomial basis e_n = sqrt(c_n) z^n, n <= N, of
/// the Hardy (c_n = 1) or Dirichlet (c_n = 1 / (n + 1)) space. b must be a
/// polynomial of degree <= N / 2.
MultiplierReport multiplier_adjoint_check(const std::function<Complex(Complex)>& b, const Kernel& k,
                                          std::span<const Complex> points, std::size_t degree);
/// Same, with b given by its Taylor coefficients b_0, b_1, ... (no recovery
/// roundoff; entries above N / 2 must vanish).
MultiplierReport multiplier_adjoint_check(std::span<const Complex> b_coefficients, const Kernel& k,
                                          std::span<const Complex> points, std::size_t degree);

inline constexpr std::size_t kMaxSeminormDegree = 32;

/// [f] = sum_n n |a_n|^2 for f = sum_n a_n z^n.
double dirichlet_seminorm(std::span<const Complex> coefficients);

/// Analytic function on the disc with its derivative.
struct DiscFunction {
  std::function<Complex(Complex)> value;
  std::function<Complex(Complex)> derivative;
};

DiscFunction polynomial_function(std::vector<Complex> coefficients);

/// (1 / pi) int_D |f'|^2 dA on a polar grid (Gauss-Legendre in r, uniform in theta).
double dirichlet_seminorm_quadrature(const DiscFunction& f, std::size_t radial = 64, std::size_t angular = 256);

/// f o phi with phi(z) = v (a - z) / (1 - conj(a) z), |a| < 1, |v| = 1.
DiscFunction compose_mobius(std::span<const Complex> coefficients, Complex a, Complex v);

/// Coefficients of f(z^n).
std::vector<Complex> compose_power(std::span<const Complex> coefficients, std::size_t n);

}  // namespace oplab
