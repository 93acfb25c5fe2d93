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

// Fourier series, the unitary DFT and Poisson integrals on the disc and the
// upper half-plane.
//
// Conventions: c(n) = int_{-pi}^{pi} phi(t) e^{-int} dt, so that
// phi = (1/2pi) sum c(n) e^{int}; (F_N x)_m = N^{-1/2} sum_n e^{2 pi i mn/N} x_n.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "oplab/linalg.hpp"

namespace oplab {

/// Samples on a uniform grid t_j = t0 + j * step. A circle grid covers
/// [-pi, pi) with step 2pi/M; a line grid is a finite window of the real axis.
class SampledBoundaryFunction {
 public:
  enum class Domain { Circle, Line };

  static SampledBoundaryFunction circle(const std::function<Complex(double)>& f, std::size_t m);
  static SampledBoundaryFunction line(const std::function<Complex(double)>& f, double t0,
                                      double step, std::size_t count);
  /// Checks that `ts` is strictly increasing with a constant step.
  static SampledBoundaryFunction from_samples(Domain domain, std::span<const double> ts,
                                              std::vector<Complex> values);

  Domain domain() const noexcept { return domain_; }
  double t0() const noexcept { return t0_; }
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return values_.size(); }
  double t(std::size_t j) const noexcept { return t0_ + step_ * static_cast<double>(j); }
  const std::vector<Complex>& values() const noexcept { return values_; }

  /// Linear interpolation; periodic on the circle, constant extension on the line.
  Complex operator()(double t) const;

 private:
  SampledBoundaryFunction(Domain d, double t0, double step, std::vector<Complex> v);

  Domain domain_ = Domain::Circle;
  double t0_ = 0.0;
  double step_ = 0.0;
  std::vector<Complex> values_;
};

/// Reads a CSV with header `t,re,im`.
SampledBoundaryFunction load_boundary_csv(const std::filesystem::path& path,
                                          SampledBoundaryFunction::Domain domain);

class FourierSeries {
 public:
  FourierSeries() = default;
  FourierSeries(int degree, std::vector<Complex> coefficients);

  int degree() const noexcept { return degree_; }
  Complex operator[](int n) const;
  const std::vector<Complex>& coefficients() const noexcept { return coefficients_; }

  /// (1/2pi) sum c(n) e^{int}
  Complex evaluate(double t) const;
  /// (1/2pi) sum |c(n)|^2
  double l2_norm_squared() const;

  nlohmann::json to_json() const;
  static FourierSeries from_json(const nlohmann::json& j);

 private:
  int degree_ = 0;
  std::vector<Complex> coefficients_;
};

/// Trapezoid rule on the periodic grid. Throws AliasingError unless N <= M/2 - 1.
FourierSeries fourier_coefficients(const SampledBoundaryFunction& f, int degree);

CVector dft(std::span<const Complex> x);
CVector inverse_dft(std::span<const Complex> x);

inline constexpr double kTailMass = 1e-6;

struct HalfPlaneOptions {
  /// Kernel mass left outside the truncated window.
  double tail = kTailMass;
  /// Gauss-Legendre panels over the truncated angle range.
  std::size_t panels = 512;
  /// When positive, panels are refined so no panel spans more than
  /// 8 * max_step along the boundary. Use for oscillatory data.
  double max_step = 0.0;
};

/// (1/pi) int y / ((x - t)^2 + y^2) f(t) dt, computed after t = x + y tan(theta).
Complex poisson_halfplane(const std::function<Complex(double)>& f, double x, double y,
                          const HalfPlaneOptions& options = {});
Complex poisson_halfplane(const SampledBoundaryFunction& f, double x, double y,
                          const HalfPlaneOptions& options = {});
/// Evaluates at every point z = x + iy (y > 0), in parallel.
CVector poisson_halfplane(const std::function<Complex(double)>& f, std::span<const Complex> points,
                          const HalfPlaneOptions& options = {});

/// P_y(x) = (1/pi) y / (x^2 + y^2)
double poisson_kernel_halfplane(double x, double y);

/// (1/2pi)(1 - rho^2) / |e^{it} - rho e^{is}|^2
double poisson_kernel_disc(double rho, double s, double t);

/// Poisson integral of circle data at rho e^{is}, 0 <= rho < 1.
Complex poisson_disc(const SampledBoundaryFunction& phi, double rho, double s);

/// Differentiation on twisted-periodic functions, diagonal in the modes
/// e^{i(lambda + n)t}, n = -N..N.
SpectralResolution momentum_model(double twist, int modes);

}  // namespace oplab
