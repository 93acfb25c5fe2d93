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

#include "oplab/rkhs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "oplab/errors.hpp"
#include "oplab/harmonic.hpp"
#include "oplab/kernels.hpp"
#include "oplab/quadrature.hpp"

namespace oplab {

namespace {

void require_disc(Complex z, const char* where) {
  if (!(std::abs(z) < 1.0)) throw DomainError(fmt::format("{}: |{}{:+}i| >= 1", where, z.real(), z.imag()));
}

Complex horner(std::span<const Complex> c, Complex z) {
  Complex s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * z + c[k];
  return s;
}

std::vector<Complex> derivative_coefficients(std::span<const Complex> c) {
  std::vector<Complex> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  return d;
}

}  // namespace

Complex hardy_kernel(Complex z, Complex w) {
  require_disc(z, "hardy_kernel");
  require_disc(w, "hardy_kernel");
  return 1.0 / (1.0 - std::conj(z) * w);
}

double harmonic_hardy_kernel(Complex z, Complex w) {
  require_disc(z, "harmonic_hardy_kernel");
  require_disc(w, "harmonic_hardy_kernel");
  return (1.0 - std::norm(z) * std::norm(w)) / std::norm(1.0 - std::conj(w) * z);
}

Complex dirichlet_kernel(Complex z, Complex w) {
  require_disc(z, "dirichlet_kernel");
  require_disc(w, "dirichlet_kernel");
  const Complex u = std::conj(w) * z;
  if (std::abs(u) < 1e-2) {
    Complex s = 0.0;
    for (int n = 12; n >= 0; --n) s = s * u + 1.0 / static_cast<double>(n + 1);
    return s;
  }
  return -std::log(1.0 - u) / u;
}

Kernel::Kernel(std::string name, Domain domain, Evaluator k, double lo, double hi)
    : name_(std::move(name)), domain_(domain), k_(std::move(k)), lo_(lo), hi_(hi) {}

Kernel Kernel::hardy() {
  return {"hardy", Domain::Disc, [](Complex x, Complex y) { return hardy_kernel(y, x); }};
}

Kernel Kernel::harmonic_hardy() {
  return {"harmonic-hardy", Domain::Disc, [](Complex x, Complex y) { return Complex(harmonic_hardy_kernel(x, y)); }};
}

Kernel Kernel::dirichlet() {
  return {"dirichlet", Domain::Disc, [](Complex x, Complex y) { return dirichlet_kernel(x, y); }};
}

Kernel Kernel::from_gram(std::string name, ComplexMatrix g) {
  if (!g.is_square()) throw DimensionError("from_gram: matrix must be square");
  const double n = static_cast<double>(g.rows());
  return {std::move(name), Domain::FiniteSet,
          [g = std::move(g)](Complex x, Complex y) {
            return g(static_cast<std::size_t>(x.real()), static_cast<std::size_t>(y.real()));
          },
          0.0, n};
}

void Kernel::check_point(Complex x) const {
  switch (domain_) {
    case Domain::Disc:
      require_disc(x, name_.c_str());
      break;
    case Domain::Interval:
      if (x.imag() != 0.0 || x.real() < lo_ || x.real() > hi_) {
        throw DomainError(fmt::format("{}: point outside [{}, {}]", name_, lo_, hi_));
      }
      break;
    case Domain::FiniteSet:
      if (x.imag() != 0.0 || x.real() < 0.0 || x.real() >= hi_ || x.real() != std::floor(x.real())) {
        throw DomainError(fmt::format("{}: point is not an index below {}", name_, hi_));
      }
      break;
  }
}

Complex Kernel::operator()(Complex x, Complex y) const {
  check_point(x);
  check_point(y);
  return k_(x, y);
}

std::vector<std::string> kernel_names() { return {"hardy", "harmonic-hardy", "dirichlet"}; }

Kernel kernel_by_name(std::string_view name) {
  if (name == "hardy") return Kernel::hardy();
  if (name == "harmonic-hardy") return Kernel::harmonic_hardy();
  if (name == "dirichlet") return Kernel::dirichlet();
  throw UsageError(fmt::format("unknown kernel '{}'", name));
}

ComplexMatrix gram(const Kernel& k, std::span<const Complex> points) {
  for (const auto& p : points) k.check_point(p);
  ComplexMatrix g(points.size(), points.size());
  kernels::parallel::sample_kernel(kernels::ComplexPointKernel([&k](Complex x, Complex y) { return k(x, y); }),
                                   points, points, g);
  return g;
}

Complex reproduce(const Kernel& k, const SpanElement& f, Complex x) {
  if (f.points.size() != f.coefficients.size()) throw DimensionError("span element: points and coefficients differ");
  Complex s = 0.0;
  for (std::size_t i = 0; i < f.points.size(); ++i) s += f.coefficients[i] * k(x, f.points[i]);
  return s;
}

Complex pairing(const Kernel& k, const SpanElement& f, const SpanElement& g) {
  if (f.points.size() != f.coefficients.size() || g.points.size() != g.coefficients.size()) {
    throw DimensionError("span element: points and coefficients differ");
  }
  Complex s = 0.0;
  for (std::size_t i = 0; i < f.points.size(); ++i)
    for (std::size_t j = 0; j < g.points.size(); ++j)
      s += std::conj(f.coefficients[i]) * g.coefficients[j] * k(f.points[i], g.points[j]);
  return s;
}

double norm_squared(const Kernel& k, const SpanElement& f) { return pairing(k, f, f).real(); }

namespace {

std::function<double(std::size_t)> monomial_weight(const Kernel& k) {
  if (k.name() == "hardy") return [](std::size_t) { return 1.0; };
  if (k.name() == "dirichlet") return [](std::size_t n) { return 1.0 / static_cast<double>(n + 1); };
  throw PreconditionError(fmt::format("multiplier_adjoint_check: no monomial model for kernel '{}'", k.name()));
}

}  // namespace

MultiplierReport multiplier_adjoint_check(const std::function<Complex(Complex)>& b, const Kernel& k,
                                          std::span<const Complex> points, std::size_t degree) {
  monomial_weight(k);
  if (degree == 0) throw DomainError("multiplier_adjoint_check: degree must be positive");
  const std::size_t n = degree + 1;

  // Coefficients from samples on the (N+1)-th roots of unity; exact for degree <= N.
  CVector samples(n);
  for (std::size_t j = 0; j < n; ++j) {
    samples[j] = b(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n)));
  }
  // inverse_dft uses e^{-2 pi i mn/N} / sqrt(N).
  CVector coeffs = inverse_dft(samples);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  double cmax = 0.0;
  for (auto& c : coeffs) {
    c *= scale;
    cmax = std::max(cmax, std::abs(c));
  }
  for (std::size_t m = degree / 2 + 1; m < n; ++m) {
    if (std::abs(coeffs[m]) > 1e-10 * std::max(cmax, 1.0)) {
      throw PreconditionError(fmt::format("multiplier_adjoint_check: b has degree above N/2 = {}", degree / 2));
    }
  }
  coeffs.resize(degree / 2 + 1);
  return multiplier_adjoint_check(coeffs, k, points, degree);
}

MultiplierReport multiplier_adjoint_check(std::span<const Complex> b_coefficients, const Kernel& k,
                                          std::span<const Complex> points, std::size_t degree) {
  const auto weight = monomial_weight(k);
  if (degree == 0) throw DomainError("multiplier_adjoint_check: degree must be positive");
  const std::size_t n = degree + 1;
  CVector coeffs(n, 0.0);
  for (std::size_t m = 0; m < b_coefficients.size(); ++m) {
    if (m > degree / 2) {
      if (b_coefficients[m] != 0.0) {
        throw PreconditionError(fmt::format("multiplier_adjoint_check: b has degree above N/2 = {}", degree / 2));
      }
      continue;
    }
    coeffs[m] = b_coefficients[m];
  }

  ComplexMatrix mb(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c <= r; ++c) mb(r, c) = coeffs[r - c] * std::sqrt(weight(c) / weight(r));
  const ComplexMatrix adj = mb.adjoint();

  MultiplierReport rep;
  rep.degree = degree;
  rep.b_coefficients.assign(coeffs.begin(), coeffs.end());
  for (const auto& x : points) {
    k.check_point(x);
    CVector kx(n);
    Complex power = 1.0;
    for (std::size_t m = 0; m < n; ++m) {
      kx[m] = std::sqrt(weight(m)) * power;
      power *= std::conj(x);
    }
    const Complex bx = horner(rep.b_coefficients, x);
    const CVector lhs = adj * std::span<const Complex>(kx);
    double r = 0.0;
    for (std::size_t m = 0; m < n; ++m) r += std::norm(lhs[m] - std::conj(bx) * kx[m]);
    rep.residuals.push_back(std::sqrt(r));
    rep.max_residual = std::max(rep.max_residual, rep.residuals.back());
    rep.max_abs_b = std::max(rep.max_abs_b, std::abs(bx));
  }
  rep.multiplier_norm = operator_norm(mb);
  rep.norm_bound_holds = rep.multiplier_norm >= rep.max_abs_b - rep.max_residual;
  return rep;
}

double dirichlet_seminorm(std::span<const Complex> coefficients) {
  double s = 0.0;
  for (std::size_t k = 1; k < coefficients.size(); ++k) s += static_cast<double>(k) * std::norm(coefficients[k]);
  return s;
}

DiscFunction polynomial_function(std::vector<Complex> coefficients) {
  auto d = derivative_coefficients(coefficients);
  return {[c = std::move(coefficients)](Complex z) { return horner(c, z); },
          [d = std::move(d)](Complex z) { return horner(d, z); }};
}

double dirichlet_seminorm_quadrature(const DiscFunction& f, std::size_t radial, std::size_t angular) {
  if (radial == 0 || angular == 0) throw DomainError("dirichlet_seminorm_quadrature: empty grid");
  const auto r = composite_gauss_legendre(0.0, 1.0, 1, radial);
  const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(angular);
  std::vector<double> rows(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    double ring = 0.0;
    for (std::size_t j = 0; j < angular; ++j) {
      ring += std::norm(f.derivative(std::polar(r.nodes[i], dtheta * static_cast<double>(j))));
    }
    rows[i] = r.weights[i] * r.nodes[i] * ring * dtheta;
  }
  double s = 0.0;
  for (double v : rows) s += v;
  return s / std::numbers::pi;
}

DiscFunction compose_mobius(std::span<const Complex> coefficients, Complex a, Complex v) {
  if (!(std::abs(a) < 1.0)) throw DomainError(fmt::format("compose_mobius: |a| = {} must be below 1", std::abs(a)));
  if (std::abs(std::abs(v) - 1.0) > 1e-12) throw DomainError("compose_mobius: |v| must be 1");
  if (coefficients.size() > kMaxSeminormDegree + 1) {
    throw DomainError(fmt::format("compose_mobius: degree above {}", kMaxSeminormDegree));
  }
  auto f = polynomial_function({coefficients.begin(), coefficients.end()});
  auto phi = [a, v](Complex z) { return v * (a - z) / (1.0 - std::conj(a) * z); };
  // phi'(z) = v (|a|^2 - 1) / (1 - conj(a) z)^2
  auto dphi = [a, v](Complex z) {
    const Complex d = 1.0 - std::conj(a) * z;
    return v * (std::norm(a) - 1.0) / (d * d);
  };
  return {[f, phi](Complex z) { return f.value(phi(z)); },
          [f, phi, dphi](Complex z) { return f.derivative(phi(z)) * dphi(z); }};
}

std::vector<Complex> compose_power(std::span<const Complex> coefficients, std::size_t n) {
  if (n == 0) throw DomainError("compose_power: exponent must be positive");
  if (coefficients.empty()) return {};
  std::vector<Complex> out((coefficients.size() - 1) * n + 1, 0.0);
  for (std::size_t k = 0; k < coefficients.size(); ++k) out[k * n] = coefficients[k];
  return out;
}

}  // namespace oplab
