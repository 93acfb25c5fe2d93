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

// Regular Sturm-Liouville problems -y'' + q y = lambda y on [a, b] with
// separated boundary conditions, solved through the Green operator.

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oplab/config.hpp"
#include "oplab/integral_ops.hpp"

namespace oplab {

/// c0 y + c1 y' = 0 at an endpoint; (c0, c1) != (0, 0).
struct BoundaryCondition {
  double c0 = 1.0;
  double c1 = 0.0;

  static BoundaryCondition dirichlet() { return {1.0, 0.0}; }
  static BoundaryCondition neumann() { return {0.0, 1.0}; }
};

struct SturmLiouvilleProblem {
  double a = 0.0;
  double b = 1.0;
  std::function<double(double)> q = [](double) { return 0.0; };
  BoundaryCondition left;
  BoundaryCondition right;

  /// Throws DomainError on an empty interval or a degenerate boundary pair.
  void validate() const;
  /// The same problem with potential q - mu.
  SturmLiouvilleProblem shifted(double mu) const;
};

inline constexpr std::size_t kOdeSteps = 4096;

/// Solutions of -y'' + q y = 0: v meets the left condition, u the right one.
/// Stored on the integration mesh and interpolated by cubic Hermite.
class HomogeneousSolutions {
 public:
  HomogeneousSolutions(double a, double h, std::vector<double> u, std::vector<double> du,
                       std::vector<double> v, std::vector<double> dv);

  double u(double x) const;
  double du(double x) const;
  double v(double x) const;
  double dv(double x) const;
  /// u v' - u' v at the left end.
  double wronskian() const noexcept { return w_; }
  /// max - min of the Wronskian over the mesh.
  double wronskian_drift() const noexcept { return drift_; }
  double max_abs_u() const;
  double max_abs_v() const;

 private:
  double eval(const std::vector<double>& y, const std::vector<double>& dy, double x, bool derivative) const;

  double a_;
  double h_;
  std::vector<double> u_, du_, v_, dv_;
  double w_ = 0.0;
  double drift_ = 0.0;
};

/// Fourth-order Runge-Kutta with `steps` equal steps. Throws
/// NonInjectiveError when |W| <= 1e-6 (1 + max|u| max|v|).
HomogeneousSolutions sl_homogeneous_solutions(const SturmLiouvilleProblem& p, std::size_t steps = kOdeSteps);

/// G(x, t) = u(x) v(t) / W for t <= x and u(t) v(x) / W for x <= t.
std::function<double(double, double)> sl_green(const HomogeneousSolutions& s);

/// First mu in 0, 1, -1, 2, -2, ... (64 rungs) for which the shifted problem
/// is injective. Throws ShiftNotFoundError.
double sl_shift(const SturmLiouvilleProblem& p);

struct SturmLiouvilleMode {
  double eigenvalue = 0.0;
  /// Relative integral-equation residual on a grid of twice the size.
  double residual = 0.0;
  /// Samples at the quadrature nodes, normalized in the quadrature pairing.
  std::vector<double> samples;
};

struct SturmLiouvilleSpectrum {
  double shift = 0.0;
  QuadratureGrid grid;
  std::vector<SturmLiouvilleMode> modes;
  /// Largest relative change of the reported eigenvalues against a solve
  /// with half the nodes.
  double refinement_drift = 0.0;
  /// Set when refinement_drift exceeds 1%.
  std::optional<std::string> warning;

  nlohmann::json to_json() const;
  /// Header `k,lambda,residual`.
  void write_csv(std::ostream& out) const;
};

/// Eigenpairs ordered by |lambda|; n_nodes must be a positive multiple of 8.
SturmLiouvilleSpectrum sl_eigensolve(const SturmLiouvilleProblem& p, std::size_t n_nodes, std::size_t k_wanted);

/// Keys: a, b, q (zero | one | minus_one | poly), q_coeffs (c0,c1,... for
/// q(x) = sum c_k x^k), alpha0, alpha1, beta0, beta1.
SturmLiouvilleProblem sl_problem_from_config(const Config& c);

}  // namespace oplab
