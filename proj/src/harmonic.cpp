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

#include "oplab/harmonic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "oplab/errors.hpp"
#include "oplab/kernels.hpp"
#include "oplab/quadrature.hpp"

namespace oplab {

namespace {

constexpr double kPi = std::numbers::pi;

Complex checked(Complex v, double t) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw EvaluationError(fmt::format("boundary function is not finite at t = {}", t));
  }
  return v;
}

// e^{2 pi i k / n} with k reduced mod n first, so large products stay exact.
Complex unit_root(std::size_t k, std::size_t n) {
  const double angle = 2.0 * kPi * static_cast<double>(k % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

CVector dft_with_sign(std::span<const Complex> x, bool conjugate) {
  const std::size_t n = x.size();
  if (n == 0) throw DimensionError("dft: empty input");
  CVector out(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  kernels::parallel::map_indexed(
      [&](std::size_t m) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const Complex w = unit_root(m * j, n);
          s += (conjugate ? std::conj(w) : w) * x[j];
        }
        return s * scale;
      },
      out);
  return out;
}

double parse_double(std::string_view s, std::size_t line) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError(fmt::format("boundary csv line {}: cannot parse '{}'", line, s));
  }
  return v;
}

// Panel edges on [-theta_max, theta_max]. With max_step > 0 the images
// y tan(theta) of consecutive edges are at most 8 * max_step apart.
std::vector<double> angle_edges(double y, double theta_max, const HalfPlaneOptions& opt) {
  const double uniform = 2.0 * theta_max / static_cast<double>(opt.panels);
  std::vector<double> half{0.0};
  if (opt.max_step > 0.0) {
    const double dt = 8.0 * opt.max_step / y;
    while (half.back() < theta_max) {
      const double th = half.back();
      const double graded = std::atan(std::tan(th) + dt) - th;
      half.push_back(std::min(theta_max, th + std::min(uniform, graded)));
    }
  } else {
    const std::size_t k = (opt.panels + 1) / 2;
    for (std::size_t i = 1; i <= k; ++i) half.push_back(theta_max * static_cast<double>(i) / static_cast<double>(k));
  }
  std::vector<double> edges;
  edges.reserve(2 * half.size() - 1);
  for (std::size_t i = half.size(); i-- > 1;) edges.push_back(-half[i]);
  edges.insert(edges.end(), half.begin(), half.end());
  return edges;
}

}  // namespace

SampledBoundaryFunction::SampledBoundaryFunction(Domain d, double t0, double step, std::vector<Complex> v)
    : domain_(d), t0_(t0), step_(step), values_(std::move(v)) {
  if (values_.empty()) throw DimensionError("boundary function: no samples");
  if (!(step_ > 0.0)) throw DomainError("boundary function: step must be positive");
}

SampledBoundaryFunction SampledBoundaryFunction::circle(const std::function<Complex(double)>& f, std::size_t m) {
  if (m == 0) throw DimensionError("boundary function: no samples");
  const double step = 2.0 * kPi / static_cast<double>(m);
  std::vector<double> ts(m);
  for (std::size_t j = 0; j < m; ++j) ts[j] = -kPi + step * static_cast<double>(j);
  std::vector<Complex> v(m);
  kernels::parallel::evaluate(f, ts, v);
  for (std::size_t j = 0; j < m; ++j) checked(v[j], ts[j]);
  return {Domain::Circle, -kPi, step, std::move(v)};
}

SampledBoundaryFunction SampledBoundaryFunction::line(const std::function<Complex(double)>& f, double t0,
                                                      double step, std::size_t count) {
  if (count == 0) throw DimensionError("boundary function: no samples");
  std::vector<double> ts(count);
  for (std::size_t j = 0; j < count; ++j) ts[j] = t0 + step * static_cast<double>(j);
  std::vector<Complex> v(count);
  kernels::parallel::evaluate(f, ts, v);
  for (std::size_t j = 0; j < count; ++j) checked(v[j], ts[j]);
  return {Domain::Line, t0, step, std::move(v)};
}

SampledBoundaryFunction SampledBoundaryFunction::from_samples(Domain domain, std::span<const double> ts,
                                                              std::vector<Complex> values) {
  if (ts.size() != values.size()) throw DimensionError("boundary function: t and value counts differ");
  if (ts.empty()) throw DimensionError("boundary function: no samples");
  if (ts.size() == 1) {
    if (domain == Domain::Circle) throw DomainError("boundary function: one sample cannot cover the circle");
    return {domain, ts[0], 1.0, std::move(values)};
  }
  const double step = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
  for (std::size_t j = 1; j < ts.size(); ++j) {
    if (!(ts[j] > ts[j - 1])) throw DomainError(fmt::format("boundary grid not increasing at index {}", j));
    const double expected = ts.front() + step * static_cast<double>(j);
    if (std::abs(ts[j] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw DomainError(fmt::format("boundary grid step not constant at index {}", j));
    }
  }
  if (domain == Domain::Circle) {
    const double period = step * static_cast<double>(ts.size());
    if (std::abs(period - 2.0 * kPi) > 1e-9) {
      throw DomainError(fmt::format("circle grid spans {} instead of one period", period));
    }
  }
  return {domain, ts.front(), step, std::move(values)};
}

Complex SampledBoundaryFunction::operator()(double t) const {
  const std::size_t n = values_.size();
  double u = (t - t0_) / step_;
  if (domain_ == Domain::Circle) {
    const double nn = static_cast<double>(n);
    u = std::fmod(u, nn);
    if (u < 0.0) u += nn;
    const auto j = std::min(static_cast<std::size_t>(u), n - 1);
    const double frac = u - static_cast<double>(j);
    return (1.0 - frac) * values_[j] + frac * values_[(j + 1) % n];
  }
  if (u <= 0.0) return values_.front();
  if (u >= static_cast<double>(n - 1)) return values_.back();
  const auto j = static_cast<std::size_t>(u);
  const double frac = u - static_cast<double>(j);
  return (1.0 - frac) * values_[j] + frac * values_[j + 1];
}

SampledBoundaryFunction load_boundary_csv(const std::filesystem::path& path,
                                          SampledBoundaryFunction::Domain domain) {
  std::ifstream in(path);
  if (!in) throw DomainError(fmt::format("cannot open boundary csv {}", path.string()));
  std::vector<double> ts;
  std::vector<Complex> vs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (lineno == 1 && line.rfind("t,", 0) == 0) continue;
    std::string_view sv(line);
    const auto c1 = sv.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : sv.find(',', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw DomainError(fmt::format("boundary csv line {}: expected t,re,im", lineno));
    }
    ts.push_back(parse_double(sv.substr(0, c1), lineno));
    const double re = parse_double(sv.substr(c1 + 1, c2 - c1 - 1), lineno);
    const double im = parse_double(sv.substr(c2 + 1), lineno);
    vs.emplace_back(re, im);
  }
  return SampledBoundaryFunction::from_samples(domain, ts, std::move(vs));
}

FourierSeries::FourierSeries(int degree, std::vector<Complex> coefficients)
    : degree_(degree), coefficients_(std::move(coefficients)) {
  if (degree < 0 || coefficients_.size() != static_cast<std::size_t>(2 * degree + 1)) {
    throw DimensionError("fourier series: need 2N + 1 coefficients");
  }
}

Complex FourierSeries::operator[](int n) const {
  if (n < -degree_ || n > degree_) return 0.0;
  return coefficients_[static_cast<std::size_t>(n + degree_)];
}

Complex FourierSeries::evaluate(double t) const {
  Complex s = 0.0;
  for (int n = -degree_; n <= degree_; ++n) {
    s += (*this)[n] * std::polar(1.0, static_cast<double>(n) * t);
  }
  return s / (2.0 * kPi);
}

double FourierSeries::l2_norm_squared() const {
  double s = 0.0;
  for (const auto& c : coefficients_) s += std::norm(c);
  return s / (2.0 * kPi);
}

nlohmann::json FourierSeries::to_json() const {
  auto arr = nlohmann::json::array();
  for (int n = -degree_; n <= degree_; ++n) {
    const Complex c = (*this)[n];
    arr.push_back({{"n", n}, {"re", c.real()}, {"im", c.imag()}});
  }
  return arr;
}

FourierSeries FourierSeries::from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() % 2 == 0) throw DimensionError("fourier series json: need 2N + 1 entries");
  const int degree = static_cast<int>(j.size() / 2);
  std::vector<Complex> c(j.size());
  for (const auto& e : j) {
    const int n = e.at("n").get<int>();
    if (n < -degree || n > degree) throw DimensionError(fmt::format("fourier series json: index {} out of range", n));
    c[static_cast<std::size_t>(n + degree)] = {e.at("re").get<double>(), e.at("im").get<double>()};
  }
  return {degree, std::move(c)};
}

FourierSeries fourier_coefficients(const SampledBoundaryFunction& f, int degree) {
  if (f.domain() != SampledBoundaryFunction::Domain::Circle) {
    throw DomainError("fourier_coefficients: samples must cover one period of the circle");
  }
  const std::size_t m = f.size();
  if (degree < 0 || 2 * static_cast<std::size_t>(degree) + 2 > m) {
    throw AliasingError(fmt::format("fourier_coefficients: degree {} exceeds aliasing limit {} for {} samples",
                                    degree, static_cast<long>(m / 2) - 1, m));
  }
  std::vector<Complex> c(2 * static_cast<std::size_t>(degree) + 1);
  const double h = f.step();
  const auto& v = f.values();
  kernels::parallel::map_indexed(
      [&](std::size_t idx) {
        const long n = static_cast<long>(idx) - degree;
        Complex s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += v[j] * std::polar(1.0, -static_cast<double>(n) * f.t(j));
        return s * h;
      },
      c);
  return {degree, std::move(c)};
}

CVector dft(std::span<const Complex> x) { return dft_with_sign(x, false); }
CVector inverse_dft(std::span<const Complex> x) { return dft_with_sign(x, true); }

double poisson_kernel_halfplane(double x, double y) { return y / (kPi * (x * x + y * y)); }

Complex poisson_halfplane(const std::function<Complex(double)>& f, double x, double y,
                          const HalfPlaneOptions& options) {
  if (!(y > 0.0)) throw DomainError(fmt::format("poisson_halfplane: y = {} must be positive", y));
  if (!(options.tail > 0.0 && options.tail < 1.0)) throw DomainError("poisson_halfplane: tail must lie in (0, 1)");
  if (options.panels == 0) throw DomainError("poisson_halfplane: need at least one panel");
  // Kernel mass outside |theta| <= theta_max is 1 - 2 theta_max / pi.
  const double theta_max = 0.5 * kPi * (1.0 - 0.5 * options.tail);
  const auto edges = angle_edges(y, theta_max, options);
  static const QuadratureGrid rule = gauss_legendre(8);
  Complex sum = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double mid = 0.5 * (edges[p] + edges[p + 1]);
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    Complex panel = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double t = x + y * std::tan(mid + half * rule.nodes[k]);
      panel += rule.weights[k] * checked(f(t), t);
    }
    sum += half * panel;
  }
  return sum / kPi;
}

Complex poisson_halfplane(const SampledBoundaryFunction& f, double x, double y, const HalfPlaneOptions& options) {
  return poisson_halfplane([&f](double t) { return f(t); }, x, y, options);
}

CVector poisson_halfplane(const std::function<Complex(double)>& f, std::span<const Complex> points,
                          const HalfPlaneOptions& options) {
  for (const auto& z : points) {
    if (!(z.imag() > 0.0)) throw DomainError(fmt::format("poisson_halfplane: y = {} must be positive", z.imag()));
  }
  CVector out(points.size());
  kernels::parallel::map_indexed(
      [&](std::size_t i) { return poisson_halfplane(f, points[i].real(), points[i].imag(), options); }, out);
  return out;
}

double poisson_kernel_disc(double rho, double s, double t) {
  const double d = 1.0 - 2.0 * rho * std::cos(t - s) + rho * rho;
  return (1.0 - rho * rho) / (2.0 * kPi * d);
}

Complex poisson_disc(const SampledBoundaryFunction& phi, double rho, double s) {
  if (phi.domain() != SampledBoundaryFunction::Domain::Circle) {
    throw DomainError("poisson_disc: boundary data must live on the circle");
  }
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError(fmt::format("poisson_disc: rho = {} outside [0, 1)", rho));
  Complex sum = 0.0;
  const auto& v = phi.values();
  for (std::size_t j = 0; j < v.size(); ++j) sum += poisson_kernel_disc(rho, s, phi.t(j)) * v[j];
  return sum * phi.step();
}

SpectralResolution momentum_model(double twist, int modes) {
  if (modes < 0) throw DomainError("momentum_model: mode count must be nonnegative");
  const auto n = static_cast<std::size_t>(2 * modes + 1);
  std::vector<double> values(n);
  std::vector<ComplexMatrix> bases;
  bases.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = twist + static_cast<double>(static_cast<long>(i) - modes);
    ComplexMatrix e(n, 1);
    e(i, 0) = 1.0;
    bases.push_back(std::move(e));
  }
  return {std::move(values), std::move(bases)};
}

}  // namespace oplab
