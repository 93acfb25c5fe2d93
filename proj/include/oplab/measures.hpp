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

// Finite Borel measures on the real line: point masses plus an optional
// density sampled on a uniform grid.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "oplab/linalg.hpp"

namespace oplab {

inline constexpr double kNegativeTolerance = 1e-9;

/// Cell centres x_i = x0 + i * step, i < count. Cell i is [x_i - step/2, x_i + step/2].
struct UniformGrid {
  double x0 = 0.0;
  double step = 1.0;
  std::size_t count = 0;

  double x(std::size_t i) const noexcept { return x0 + step * static_cast<double>(i); }
  double lo() const noexcept { return x0 - 0.5 * step; }
  double hi() const noexcept { return x0 + step * (static_cast<double>(count) - 0.5); }
  /// `count` cells covering [lo, hi].
  static UniformGrid covering(double lo, double hi, std::size_t count);
};

struct Atom {
  double x = 0.0;
  Complex mass = 0.0;
};

/// Density values at the grid cell centres; integrals use the midpoint rule.
struct Density {
  UniformGrid grid;
  std::vector<Complex> values;
};

class FiniteMeasure {
 public:
  FiniteMeasure() = default;
  FiniteMeasure(std::vector<Atom> atoms, std::optional<Density> density = std::nullopt);

  static FiniteMeasure dirac(double x, Complex mass = 1.0);
  /// Density sampled pointwise from f.
  static FiniteMeasure from_density(const std::function<Complex(double)>& f, const UniformGrid& grid);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::optional<Density>& density() const noexcept { return density_; }

  /// int f dmu
  Complex integrate(const std::function<Complex(double)>& f) const;
  Complex total_mass() const;
  double total_variation() const;
  /// Atom masses >= 0 and density >= -tol (imaginary parts within tol of 0).
  bool is_positive(double tol = kNegativeTolerance) const;

  /// Densities must share a grid; atoms at the same point are merged.
  FiniteMeasure operator+(const FiniteMeasure& other) const;
  FiniteMeasure operator*(Complex s) const;

  nlohmann::json to_json() const;
  static FiniteMeasure from_json(const nlohmann::json& j);

 private:
  std::vector<Atom> atoms_;
  std::optional<Density> density_;
};

/// mu^(omega) = int e^{-i x omega} dmu(x)
Complex measure_fourier(const FiniteMeasure& mu, double omega);
CVector measure_fourier(const FiniteMeasure& mu, std::span<const double> omegas);

enum class Smoothing {
  /// Exact average of P_y[mu] over each cell; window mass is exact.
  CellAverage,
  /// P_y[mu] at the cell centres.
  PointSample,
};

/// Density of P_y[mu](x) = (1/pi) int y / ((x - u)^2 + y^2) dmu(u) on `grid`.
FiniteMeasure poisson_smooth(const FiniteMeasure& mu, double y, const UniformGrid& grid,
                             Smoothing mode = Smoothing::CellAverage);

/// Evaluation window for Herglotz recovery; step 0 means eps / 10.
struct RecoveryWindow {
  double lo = -1.0;
  double hi = 1.0;
  double step = 0.0;
};

/// The density slice u -> U(u + i eps) on the window.
/// Throws NotPositiveHarmonicError on samples below -kNegativeTolerance.
FiniteMeasure herglotz_recover(const std::function<double(Complex)>& u, double eps,
                               const RecoveryWindow& window);

/// Local maxima above 10x the median density. Each peak collects the density
/// mass between the midpoints to its neighbouring peaks.
std::vector<Atom> extract_atoms(const FiniteMeasure& recovered);

struct DefinitenessVerdict {
  bool positive_definite = false;
  double min_eigenvalue = 0.0;
};

/// Minimum eigenvalue of [f(x_k - x_j)]. Throws StructuralError when
/// f(-x) = conj(f(x)) fails by more than tol on the probed differences.
DefinitenessVerdict positive_definite_test(const std::function<Complex(double)>& f,
                                           std::span<const double> points, double tol = 1e-10);

}  // namespace oplab
