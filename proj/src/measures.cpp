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

#include "oplab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "oplab/errors.hpp"
#include "oplab/kernels.hpp"

namespace oplab {

namespace {

constexpr double kPi = std::numbers::pi;

bool same_grid(const UniformGrid& a, const UniformGrid& b) {
  return a.count == b.count && a.x0 == b.x0 && a.step == b.step;
}

void check_grid(const UniformGrid& g) {
  if (g.count == 0) throw DimensionError("measure grid has no cells");
  if (!(g.step > 0.0) || !std::isfinite(g.x0)) throw DomainError("measure grid step must be positive");
}

std::vector<double> centres(const UniformGrid& g) {
  std::vector<double> xs(g.count);
  for (std::size_t i = 0; i < g.count; ++i) xs[i] = g.x(i);
  return xs;
}

}  // namespace

UniformGrid UniformGrid::covering(double lo, double hi, std::size_t count) {
  if (!(hi > lo) || count == 0) throw DomainError(fmt::format("cannot cover [{}, {}] with {} cells", lo, hi, count));
  const double step = (hi - lo) / static_cast<double>(count);
  return {lo + 0.5 * step, step, count};
}

FiniteMeasure::FiniteMeasure(std::vector<Atom> atoms, std::optional<Density> density)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.x) || !std::isfinite(a.mass.real()) || !std::isfinite(a.mass.imag())) {
      throw DomainError("measure atom is not finite");
    }
  }
  if (density_) {
    check_grid(density_->grid);
    if (density_->values.size() != density_->grid.count) throw DimensionError("density values do not match grid");
  }
}

FiniteMeasure FiniteMeasure::dirac(double x, Complex mass) { return FiniteMeasure({Atom{x, mass}}); }

FiniteMeasure FiniteMeasure::from_density(const std::function<Complex(double)>& f, const UniformGrid& grid) {
  check_grid(grid);
  const auto xs = centres(grid);
  std::vector<Complex> v(grid.count);
  kernels::parallel::evaluate(f, xs, v);
  return FiniteMeasure({}, Density{grid, std::move(v)});
}

Complex FiniteMeasure::integrate(const std::function<Complex(double)>& f) const {
  Complex s = 0.0;
  for (const auto& a : atoms_) s += a.mass * f(a.x);
  if (density_) {
    Complex d = 0.0;
    for (std::size_t i = 0; i < density_->grid.count; ++i) d += density_->values[i] * f(density_->grid.x(i));
    s += d * density_->grid.step;
  }
  return s;
}

Complex FiniteMeasure::total_mass() const {
  return integrate([](double) { return Complex(1.0); });
}

double FiniteMeasure::total_variation() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += std::abs(a.mass);
  if (density_) {
    double d = 0.0;
    for (const auto& v : density_->values) d += std::abs(v);
    s += d * density_->grid.step;
  }
  return s;
}

bool FiniteMeasure::is_positive(double tol) const {
  for (const auto& a : atoms_) {
    if (a.mass.real() < 0.0 || std::abs(a.mass.imag()) > tol) return false;
  }
  if (density_) {
    for (const auto& v : density_->values) {
      if (v.real() < -tol || std::abs(v.imag()) > tol) return false;
    }
  }
  return true;
}

FiniteMeasure FiniteMeasure::operator+(const FiniteMeasure& other) const {
  std::vector<Atom> atoms = atoms_;
  for (const auto& a : other.atoms_) {
    auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Atom& b) { return b.x == a.x; });
    if (it != atoms.end()) {
      it->mass += a.mass;
    } else {
      atoms.push_back(a);
    }
  }
  std::optional<Density> density = density_;
  if (other.density_) {
    if (!density) {
      density = other.density_;
    } else {
      if (!same_grid(density->grid, other.density_->grid)) throw DimensionError("adding densities on different grids");
      for (std::size_t i = 0; i < density->values.size(); ++i) density->values[i] += other.density_->values[i];
    }
  }
  return {std::move(atoms), std::move(density)};
}

FiniteMeasure FiniteMeasure::operator*(Complex s) const {
  FiniteMeasure out = *this;
  for (auto& a : out.atoms_) a.mass *= s;
  if (out.density_) {
    for (auto& v : out.density_->values) v *= s;
  }
  return out;
}

nlohmann::json FiniteMeasure::to_json() const {
  nlohmann::json j;
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : atoms_) j["atoms"].push_back({{"x", a.x}, {"re", a.mass.real()}, {"im", a.mass.imag()}});
  if (density_) {
    std::vector<double> re, im;
    re.reserve(density_->values.size());
    im.reserve(density_->values.size());
    for (const auto& v : density_->values) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    j["density"] = {{"grid0", density_->grid.x0}, {"step", density_->grid.step}, {"re", re}, {"im", im}};
  } else {
    j["density"] = nullptr;
  }
  return j;
}

FiniteMeasure FiniteMeasure::from_json(const nlohmann::json& j) {
  std::vector<Atom> atoms;
  for (const auto& a : j.at("atoms")) {
    atoms.push_back({a.at("x").get<double>(), {a.at("re").get<double>(), a.at("im").get<double>()}});
  }
  std::optional<Density> density;
  if (j.contains("density") && !j["density"].is_null()) {
    const auto& d = j["density"];
    const auto re = d.at("re").get<std::vector<double>>();
    const auto im = d.at("im").get<std::vector<double>>();
    if (re.size() != im.size()) throw DimensionError("measure json: re and im lengths differ");
    std::vector<Complex> v(re.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = {re[i], im[i]};
    density = Density{{d.at("grid0").get<double>(), d.at("step").get<double>(), v.size()}, std::move(v)};
  }
  return {std::move(atoms), std::move(density)};
}

Complex measure_fourier(const FiniteMeasure& mu, double omega) {
  return mu.integrate([omega](double x) { return std::polar(1.0, -x * omega); });
}

CVector measure_fourier(const FiniteMeasure& mu, std::span<const double> omegas) {
  CVector out(omegas.size());
  kernels::parallel::evaluate([&mu](double w) { return measure_fourier(mu, w); }, omegas, out);
  return out;
}

FiniteMeasure poisson_smooth(const FiniteMeasure& mu, double y, const UniformGrid& grid, Smoothing mode) {
  if (!(y > 0.0)) throw DomainError(fmt::format("poisson_smooth: y = {} must be positive", y));
  check_grid(grid);

  // The input is a list of weighted nodes: atoms, then density cells.
  std::vector<double> nodes;
  std::vector<Complex> weights;
  for (const auto& a : mu.atoms()) {
    nodes.push_back(a.x);
    weights.push_back(a.mass);
  }
  if (const auto& d = mu.density()) {
    for (std::size_t i = 0; i < d->grid.count; ++i) {
      nodes.push_back(d->grid.x(i));
      weights.push_back(d->values[i] * d->grid.step);
    }
  }

  const double h = grid.step;
  kernels::PointKernel g;
  if (mode == Smoothing::CellAverage) {
    g = [y, h](double x, double u) {
      const double a = (x - 0.5 * h - u) / y;
      const double b = (x + 0.5 * h - u) / y;
      // atan(b) - atan(a) without cancellation for same-sign arguments.
      const double diff = (a * b > -1.0) ? std::atan((b - a) / (1.0 + a * b))
                                         : std::atan(b) - std::atan(a);
      return Complex(diff / (kPi * h));
    };
  } else {
    g = [y](double x, double u) {
      const double dx = x - u;
      return Complex(y / (kPi * (dx * dx + y * y)));
    };
  }
  const auto xs = centres(grid);
  std::vector<Complex> values(grid.count);
  kernels::parallel::weighted_sums(g, xs, nodes, weights, values);
  return FiniteMeasure({}, Density{grid, std::move(values)});
}

FiniteMeasure herglotz_recover(const std::function<double(Complex)>& u, double eps, const RecoveryWindow& window) {
  if (!(eps > 0.0)) throw DomainError(fmt::format("herglotz_recover: eps = {} must be positive", eps));
  if (!(window.hi > window.lo)) throw DomainError("herglotz_recover: empty window");
  const double step = window.step > 0.0 ? window.step : 0.1 * eps;
  const auto count = static_cast<std::size_t>(std::ceil((window.hi - window.lo) / step));
  const auto grid = UniformGrid::covering(window.lo, window.hi, std::max<std::size_t>(count, 1));
  const auto xs = centres(grid);
  std::vector<Complex> values(grid.count);
  kernels::parallel::evaluate([&](double x) { return Complex(u(Complex(x, eps))); }, xs, values);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i].real();
    if (!std::isfinite(v)) throw EvaluationError(fmt::format("harmonic function not finite at {} + {}i", xs[i], eps));
    if (v < -kNegativeTolerance) {
      throw NotPositiveHarmonicError(fmt::format("U({} + {}i) = {} is negative", xs[i], eps, v));
    }
  }
  return FiniteMeasure({}, Density{grid, std::move(values)});
}

std::vector<Atom> extract_atoms(const FiniteMeasure& recovered) {
  const auto& d = recovered.density();
  if (!d) return {};
  const auto& v = d->values;
  const std::size_t n = v.size();
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = v[i].real();
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n / 2), sorted.end());
  const double threshold = 10.0 * std::max(sorted[n / 2], 0.0);

  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = v[i].real();
    const double left = i > 0 ? v[i - 1].real() : -1.0;
    const double right = i + 1 < n ? v[i + 1].real() : -1.0;
    if (c > threshold && c > left && c >= right) peaks.push_back(i);
  }

  std::vector<Atom> atoms;
  atoms.reserve(peaks.size());
  for (std::size_t k = 0; k < peaks.size(); ++k) {
    const std::size_t begin = k == 0 ? 0 : (peaks[k - 1] + peaks[k] + 1) / 2;
    const std::size_t end = k + 1 == peaks.size() ? n : (peaks[k] + peaks[k + 1] + 1) / 2;
    Complex mass = 0.0;
    for (std::size_t i = begin; i < end; ++i) mass += v[i];
    atoms.push_back({d->grid.x(peaks[k]), mass * d->grid.step});
  }
  return atoms;
}

DefinitenessVerdict positive_definite_test(const std::function<Complex(double)>& f, std::span<const double> points,
                                           double tol) {
  const std::size_t n = points.size();
  if (n == 0) throw DimensionError("positive_definite_test: no points");
  ComplexMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) m(k, j) = f(points[k] - points[j]);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k; j < n; ++j) {
      if (std::abs(m(k, j) - std::conj(m(j, k))) > tol) {
        throw StructuralError(fmt::format("f(-x) != conj(f(x)) at x = {}", points[k] - points[j]));
      }
    }
  }
  const auto es = hermitian_eigensystem(m);
  const double min_eig = es.values.front();
  return {min_eig >= -tol, min_eig};
}

}  // namespace oplab
