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

#include "oplab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "oplab/errors.hpp"

namespace oplab {

namespace {

double set_tolerance(double lambda) { return 1e-12 * (1.0 + std::abs(lambda)); }

void require_hermitian(const ComplexMatrix& a, const char* where) {
  if (!a.is_square()) throw DimensionError(fmt::format("{}: matrix must be square", where));
  if (!is_hermitian(a)) {
    throw PreconditionError(fmt::format("{}: matrix is not Hermitian (defect {:.3e})", where, hermitian_defect(a)));
  }
}

ComplexMatrix shifted(const ComplexMatrix& a, Complex z) {
  ComplexMatrix m = a;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= z;
  return m;
}

// Eigenvectors of B compressed to the range of Q, mapped back.
void refine(const ComplexMatrix& q, const ComplexMatrix& b, double a_value, std::size_t& col,
            JointDiagonalization& out) {
  const ComplexMatrix c = q.adjoint() * (b * q);
  const auto es = hermitian_eigensystem(c);
  const ComplexMatrix v = q * es.vectors;
  for (std::size_t k = 0; k < v.cols(); ++k, ++col) {
    for (std::size_t r = 0; r < v.rows(); ++r) out.basis(r, col) = v(r, k);
    out.a_values.push_back(a_value);
    out.b_values.push_back(es.values[k]);
  }
}

}  // namespace

BorelSet BorelSet::real_line() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return interval(-inf, inf, false, false);
}

BorelSet BorelSet::point(double x) { return interval(x, x, true, true); }

BorelSet BorelSet::interval(double lo, double hi, bool lo_closed, bool hi_closed) {
  if (std::isnan(lo) || std::isnan(hi)) throw DomainError("BorelSet: NaN endpoint");
  BorelSet s;
  if (lo <= hi) s.pieces_.push_back({lo, hi, lo_closed, hi_closed});
  return s;
}

BorelSet BorelSet::operator|(const BorelSet& other) const {
  BorelSet s = *this;
  s.pieces_.insert(s.pieces_.end(), other.pieces_.begin(), other.pieces_.end());
  return s;
}

bool BorelSet::contains(double lambda) const {
  const double tol = set_tolerance(lambda);
  for (const auto& p : pieces_) {
    const bool above = p.lo_closed ? lambda >= p.lo - tol : lambda > p.lo + tol;
    const bool below = p.hi_closed ? lambda <= p.hi + tol : lambda < p.hi - tol;
    if (above && below) return true;
  }
  return false;
}

ComplexMatrix pvm(const SpectralResolution& res, const BorelSet& e) {
  return res.synthesize([&e](double l) { return Complex(e.contains(l) ? 1.0 : 0.0); });
}

ComplexMatrix measurable_calculus(const SpectralResolution& res, const std::function<Complex(double)>& m) {
  for (double l : res.eigenvalues()) {
    const Complex v = m(l);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw EvaluationError(fmt::format("measurable_calculus: function undefined at eigenvalue {}", l));
    }
  }
  return res.synthesize(m);
}

Complex SpectralMeasurePair::total_mass() const {
  Complex s = 0.0;
  for (const auto& m : masses) s += m;
  return s;
}

Complex SpectralMeasurePair::integrate(const std::function<Complex(double)>& m) const {
  Complex s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) s += m(points[i]) * masses[i];
  return s;
}

FiniteMeasure SpectralMeasurePair::to_measure() const {
  std::vector<Atom> atoms(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) atoms[i] = {points[i], masses[i]};
  return FiniteMeasure(std::move(atoms));
}

nlohmann::json SpectralMeasurePair::to_json() const { return to_measure().to_json(); }

SpectralMeasurePair spectral_measure(const SpectralResolution& res, std::span<const Complex> x,
                                     std::span<const Complex> y) {
  if (x.size() != res.dimension() || y.size() != res.dimension()) {
    throw DimensionError("spectral_measure: vector length does not match the resolution");
  }
  SpectralMeasurePair out;
  out.points = res.eigenvalues();
  out.masses.resize(res.size());
  for (std::size_t i = 0; i < res.size(); ++i) {
    // <x, B B^* y> = <B^* x, B^* y>
    out.masses[i] = inner_product(res.project(i, x), res.project(i, y));
  }
  return out;
}

ComplexMatrix resolvent(const ComplexMatrix& a, Complex z, std::optional<double> tol) {
  require_hermitian(a, "resolvent");
  const double t = tol.value_or(1e-12 * (1.0 + operator_norm(a)));
  // For Hermitian A the distance to the spectrum is at least |Im z|.
  if (std::abs(z.imag()) <= t) {
    const auto es = hermitian_eigensystem(a);
    double dist = std::numeric_limits<double>::infinity();
    for (double l : es.values) dist = std::min(dist, std::abs(Complex(l) - z));
    if (dist <= t) {
      throw NearSingularError(fmt::format("resolvent: z = {}{:+}i is within {:.3e} of the spectrum", z.real(),
                                          z.imag(), dist));
    }
  }
  return LuDecomposition(shifted(a, z)).inverse();
}

NeumannResult neumann_resolvent(const ComplexMatrix& a, Complex z, std::size_t kmax, double tol) {
  if (!a.is_square()) throw DimensionError("neumann_resolvent: matrix must be square");
  if (z == Complex(0.0)) return {false, 0, std::numeric_limits<double>::infinity(), {}};
  const std::size_t n = a.rows();
  NeumannResult out;
  ComplexMatrix term = ComplexMatrix::identity(n);
  term *= 1.0 / z;
  out.value = term;
  out.terms = 1;
  out.last_term = frobenius_norm(term);
  while (out.terms < kmax) {
    if (out.last_term <= tol) {
      out.converged = true;
      return out;
    }
    term = term * a;
    term *= 1.0 / z;
    out.value += term;
    ++out.terms;
    out.last_term = frobenius_norm(term);
    if (!std::isfinite(out.last_term) || out.last_term > 1e300) break;
  }
  out.converged = out.last_term <= tol;
  return out;
}

std::vector<double> spectral_radius_gelfand(const ComplexMatrix& a, std::size_t kmax) {
  if (!a.is_square()) throw DimensionError("spectral_radius_gelfand: matrix must be square");
  std::vector<double> seq;
  seq.reserve(kmax + 1);
  double c = operator_norm(a);
  if (c == 0.0) return std::vector<double>(kmax + 1, 0.0);
  ComplexMatrix b = a;
  b *= 1.0 / c;
  // log ||A^{2^k}|| = log_norm; b holds A^{2^k} / ||A^{2^k}||.
  double log_norm = std::log(c);
  seq.push_back(c);
  double scale = 1.0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    b = b * b;
    scale *= 2.0;
    c = operator_norm(b);
    if (c == 0.0) {
      seq.resize(kmax + 1, 0.0);
      return seq;
    }
    b *= 1.0 / c;
    log_norm = 2.0 * log_norm + std::log(c);
    seq.push_back(std::exp(log_norm / scale));
  }
  return seq;
}

double hausdorff_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DimensionError("hausdorff_distance: empty set");
  auto directed = [](std::span<const double> from, std::span<const double> to) {
    double worst = 0.0;
    for (double x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (double y : to) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double hausdorff_distance_spectra(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_hermitian(a, "hausdorff_distance_spectra");
  require_hermitian(b, "hausdorff_distance_spectra");
  const auto ea = hermitian_eigensystem(a);
  const auto eb = hermitian_eigensystem(b);
  return hausdorff_distance(ea.values, eb.values);
}

Complex cayley_map(double x) { return Complex(x, -1.0) / Complex(x, 1.0); }

ComplexMatrix cayley(const ComplexMatrix& a) {
  require_hermitian(a, "cayley");
  const Complex i(0.0, 1.0);
  return shifted(a, i) * LuDecomposition(shifted(a, -i)).inverse();
}

ComplexMatrix evolve(const SpectralResolution& res, double t) {
  return res.synthesize([t](double l) { return std::polar(1.0, l * t); });
}

ComplexMatrix evolve(const ComplexMatrix& a, double t) { return evolve(hermitian_eig(a), t); }

UncertaintyRecord uncertainty(const ComplexMatrix& a, const ComplexMatrix& b, std::span<const Complex> h) {
  require_hermitian(a, "uncertainty");
  require_hermitian(b, "uncertainty");
  if (a.rows() != h.size() || b.rows() != h.size()) throw DimensionError("uncertainty: dimension mismatch");
  if (std::abs(norm(h) - 1.0) > 1e-10) {
    throw PreconditionError(fmt::format("uncertainty: state has norm {}", norm(h)));
  }
  const double mean_a = inner_product(h, a * h).real();
  const double mean_b = inner_product(h, b * h).real();
  const ComplexMatrix a0 = shifted(a, mean_a);
  const ComplexMatrix b0 = shifted(b, mean_b);
  const Complex comm = inner_product(h, commutator(a0, b0) * h);
  const Complex anti = inner_product(h, anticommutator(a0, b0) * h);
  const double var_a = inner_product(h, (a0 * a0) * h).real();
  const double var_b = inner_product(h, (b0 * b0) * h).real();
  UncertaintyRecord r;
  r.lhs = 0.25 * std::norm(comm);
  r.rhs = var_a * var_b;
  r.robertson_lhs = std::norm(0.5 * anti) + std::norm(comm / Complex(0.0, 2.0));
  return r;
}

Compatibility commuting_diagonalization(const ComplexMatrix& a, const ComplexMatrix& b, std::optional<double> tol) {
  require_hermitian(a, "commuting_diagonalization");
  require_hermitian(b, "commuting_diagonalization");
  if (a.rows() != b.rows()) throw DimensionError("commuting_diagonalization: dimension mismatch");
  Compatibility out;
  out.commutator_norm = operator_norm(commutator(a, b));
  const double t = tol.value_or(1e-10 * (1.0 + operator_norm(a)) * (1.0 + operator_norm(b)));
  if (out.commutator_norm > t) return out;

  const auto res = hermitian_eig(a);
  const std::size_t n = a.rows();
  JointDiagonalization joint{ComplexMatrix(n, n), {}, {}};
  std::size_t col = 0;
  for (std::size_t i = 0; i < res.size(); ++i) refine(res.basis(i), b, res.eigenvalues()[i], col, joint);
  out.joint = std::move(joint);
  return out;
}

std::vector<Complex> normal_eigenvalues(const ComplexMatrix& u) {
  if (!u.is_square()) throw DimensionError("normal_eigenvalues: matrix must be square");
  const ComplexMatrix ua = u.adjoint();
  const double scale = 1.0 + operator_norm(u);
  if (max_abs_diff(u * ua, ua * u) > 1e-10 * scale * scale) {
    throw PreconditionError("normal_eigenvalues: matrix is not normal");
  }
  ComplexMatrix h = 0.5 * (u + ua);
  ComplexMatrix k = Complex(0.0, -0.5) * (u - ua);
  // Exact symmetrisation so the Hermitian checks see rounding-free input.
  h = 0.5 * (h + h.adjoint());
  k = 0.5 * (k + k.adjoint());
  const auto c = commuting_diagonalization(h, k, 1e-8 * scale * scale);
  if (!c.joint) throw PreconditionError("normal_eigenvalues: Hermitian parts do not commute");
  const auto& v = c.joint->basis;
  std::vector<Complex> values(v.cols());
  for (std::size_t j = 0; j < v.cols(); ++j) {
    const CVector x = v.column(j);
    values[j] = inner_product(x, u * x);
  }
  return values;
}

nlohmann::json to_json(const SpectralResolution& res) {
  nlohmann::json j;
  j["dimension"] = res.dimension();
  j["eigenvalues"] = res.eigenvalues();
  j["multiplicities"] = res.multiplicities();
  auto bases = nlohmann::json::array();
  for (std::size_t i = 0; i < res.size(); ++i) bases.push_back(to_json(res.basis(i)));
  j["bases"] = bases;
  return j;
}

}  // namespace oplab
