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

// Functional calculus for Hermitian matrices through their spectral
// resolution A = sum_i lambda_i Pi_i.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "oplab/linalg.hpp"
#include "oplab/measures.hpp"

namespace oplab {

/// Finite union of intervals (open, closed or half-open, possibly unbounded)
/// and points. Endpoint membership uses tolerance 1e-12 (1 + |lambda|).
class BorelSet {
 public:
  struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;
  };

  static BorelSet empty() { return {}; }
  static BorelSet real_line();
  static BorelSet point(double x);
  static BorelSet interval(double lo, double hi, bool lo_closed = true, bool hi_closed = true);
  static BorelSet at_most(double x) {
    return interval(-std::numeric_limits<double>::infinity(), x, false, true);
  }

  BorelSet operator|(const BorelSet& other) const;
  bool contains(double lambda) const;
  const std::vector<Interval>& pieces() const noexcept { return pieces_; }

 private:
  std::vector<Interval> pieces_;
};

/// Pi(E) = sum of Pi_i over lambda_i in E.
ComplexMatrix pvm(const SpectralResolution& res, const BorelSet& e);

/// m(A) = sum_i m(lambda_i) Pi_i. Throws EvaluationError if m is not finite
/// at an eigenvalue.
ComplexMatrix measurable_calculus(const SpectralResolution& res, const std::function<Complex(double)>& m);

/// mu_{x,y}: one atom per distinct eigenvalue, mass <x, Pi_i y>.
struct SpectralMeasurePair {
  std::vector<double> points;
  std::vector<Complex> masses;

  Complex total_mass() const;
  /// sum_i m(lambda_i) mass_i
  Complex integrate(const std::function<Complex(double)>& m) const;
  FiniteMeasure to_measure() const;
  nlohmann::json to_json() const;
};

SpectralMeasurePair spectral_measure(const SpectralResolution& res, std::span<const Complex> x,
                                     std::span<const Complex> y);

/// R(z) = (A - z)^{-1} for Hermitian A. Throws NearSingularError when z lies
/// within tol of the spectrum; the default tol is 1e-12 (1 + ||A||).
ComplexMatrix resolvent(const ComplexMatrix& a, Complex z, std::optional<double> tol = std::nullopt);

struct NeumannResult {
  bool converged = false;
  std::size_t terms = 0;
  /// Norm of the last term added.
  double last_term = 0.0;
  /// Partial sum of A^n / z^{n+1}, i.e. (z - A)^{-1} = -R(z) on convergence.
  ComplexMatrix value;
};

/// Stops once a term has Frobenius norm <= tol; reports divergence instead
/// of throwing when kmax terms do not get there.
NeumannResult neumann_resolvent(const ComplexMatrix& a, Complex z, std::size_t kmax = 10000,
                                double tol = 1e-12);

/// ||A^{2^k}||^{1/2^k} for k = 0..kmax, computed by repeated squaring of
/// normalized powers.
std::vector<double> spectral_radius_gelfand(const ComplexMatrix& a, std::size_t kmax);

/// Hausdorff distance between two finite subsets of the line.
double hausdorff_distance(std::span<const double> a, std::span<const double> b);
/// Throws PreconditionError unless both are Hermitian.
double hausdorff_distance_spectra(const ComplexMatrix& a, const ComplexMatrix& b);

/// (x - i) / (x + i)
Complex cayley_map(double x);
/// (A - i)(A + i)^{-1}
ComplexMatrix cayley(const ComplexMatrix& a);

/// e^{itA}
ComplexMatrix evolve(const SpectralResolution& res, double t);
ComplexMatrix evolve(const ComplexMatrix& a, double t);

struct UncertaintyRecord {
  /// (1/4)|<[A0, B0]>|^2 with A0 = A - <A>
  double lhs = 0.0;
  /// <A0^2><B0^2>
  double rhs = 0.0;
  /// |<{A0, B0}>/2|^2 + |<[A0, B0]>/2i|^2
  double robertson_lhs = 0.0;
};

/// Throws PreconditionError if | ||h|| - 1 | > 1e-10.
UncertaintyRecord uncertainty(const ComplexMatrix& a, const ComplexMatrix& b, std::span<const Complex> h);

struct JointDiagonalization {
  /// Columns are common eigenvectors.
  ComplexMatrix basis;
  std::vector<double> a_values;
  std::vector<double> b_values;
};

struct Compatibility {
  double commutator_norm = 0.0;
  /// Present iff the commutator norm is within tolerance.
  std::optional<JointDiagonalization> joint;

  bool compatible() const noexcept { return joint.has_value(); }
};

/// Refines each eigenspace of A by B. Default tolerance 1e-10 (1 + ||A||)(1 + ||B||).
Compatibility commuting_diagonalization(const ComplexMatrix& a, const ComplexMatrix& b,
                                        std::optional<double> tol = std::nullopt);

/// Eigenvalues of a normal matrix, via a joint eigenbasis of its Hermitian
/// and skew-Hermitian parts.
std::vector<Complex> normal_eigenvalues(const ComplexMatrix& u);

nlohmann::json to_json(const SpectralResolution& res);

}  // namespace oplab
