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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <fmt/format.h>

#include "oplab/errors.hpp"
#include "oplab/linalg.hpp"

namespace oplab {

namespace {

// Implicit QL on a real symmetric tridiagonal matrix (EISPACK tql2).
// d: diagonal, e: sub-diagonal with e[i] coupling i and i+1 (e[n-1] unused).
// z: n x n column-major, updated in place with the accumulated rotations.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z,
                    std::size_t n) {
  if (n == 0) return;
  e[n - 1] = 0.0;
  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 60) throw ConvergenceError("hermitian_eigensystem: QL iteration stalled");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          double* zi = z.data() + ii * n;
          double* zi1 = z.data() + (ii + 1) * n;
          for (std::size_t k = 0; k < n; ++k) {
            h = zi1[k];
            zi1[k] = s * zi[k] + c * h;
            zi[k] = c * zi[k] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

HermitianEigensystem sorted(std::vector<double> values, ComplexMatrix vectors) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  HermitianEigensystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = values[order[c]];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = vectors(r, order[c]);
  }
  return out;
}

}  // namespace

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& input) {
  if (!input.is_square()) throw DimensionError("hermitian_eigensystem: matrix must be square");
  const std::size_t n = input.rows();
  if (n == 0) return {};

  // Work on the Hermitian part so tiny asymmetries cannot leak into the
  // reflections.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));

  ComplexMatrix q = ComplexMatrix::identity(n);
  CVector v(n), p(n), w(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(a(i, k));
    if (tail == 0.0) continue;
    const Complex x0 = a(k + 1, k);
    const double xnorm = std::sqrt(tail + std::norm(x0));
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    const Complex alpha = -phase * xnorm;

    for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
    v[0] -= alpha;
    double vn = 0.0;
    for (std::size_t i = 0; i < m; ++i) vn += std::norm(v[i]);
    vn = std::sqrt(vn);
    for (std::size_t i = 0; i < m; ++i) v[i] /= vn;

    // B <- H B H with H = I - 2 v v^*, written as B - 2 (v w^* + w v^*).
    double kappa = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      Complex s = 0.0;
      const auto row = a.row(k + 1 + i);
      for (std::size_t j = 0; j < m; ++j) s += row[k + 1 + j] * v[j];
      p[i] = s;
      kappa += (std::conj(v[i]) * s).real();
    }
    for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - kappa * v[i];
    for (std::size_t i = 0; i < m; ++i) {
      auto row = a.row(k + 1 + i);
      const Complex vi = v[i];
      const Complex wi = w[i];
      for (std::size_t j = 0; j < m; ++j) {
        row[k + 1 + j] -= 2.0 * (vi * std::conj(w[j]) + wi * std::conj(v[j]));
      }
    }
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);
    for (std::size_t i = k + 2; i < n; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }

    // Q <- Q H on columns k+1..n-1.
    for (std::size_t r = 0; r < n; ++r) {
      auto row = q.row(r);
      Complex s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += row[k + 1 + j] * v[j];
      s *= 2.0;
      for (std::size_t j = 0; j < m; ++j) row[k + 1 + j] -= s * std::conj(v[j]);
    }
  }

  // Rotate the complex sub-diagonal onto the positive reals.
  std::vector<double> d(n), e(n, 0.0);
  CVector phases(n, Complex(1.0));
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Complex sub = a(i + 1, i);
    const double mag = std::abs(sub);
    e[i] = mag;
    phases[i + 1] = mag > 0.0 ? phases[i] * (sub / mag) : phases[i];
  }

  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
  tridiagonal_ql(d, e, z, n);

  ComplexMatrix qd(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) qd(r, c) = q(r, c) * phases[c];
  ComplexMatrix vectors(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto qrow = qd.row(r);
    auto out = vectors.row(r);
    for (std::size_t c = 0; c < n; ++c) {
      const double* zc = z.data() + c * n;
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += qrow[k] * zc[k];
      out[c] = s;
    }
  }
  return sorted(std::move(d), std::move(vectors));
}

HermitianEigensystem jacobi_eigensystem(const ComplexMatrix& input, double tol, int max_sweeps) {
  if (!input.is_square()) throw DimensionError("jacobi_eigensystem: matrix must be square");
  const std::size_t n = input.rows();
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(frobenius_norm(a), std::numeric_limits<double>::min());

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= tol * scale) {
      std::vector<double> values(n);
      for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
      return sorted(std::move(values), std::move(v));
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex eiphi = apq / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex u_qp = -s * std::conj(eiphi);
        const Complex u_qq = c * std::conj(eiphi);
        // A <- A U (columns p, q)
        for (std::size_t r = 0; r < n; ++r) {
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = c * arp + u_qp * arq;
          a(r, q) = s * arp + u_qq * arq;
        }
        // A <- U^* A (rows p, q)
        for (std::size_t col = 0; col < n; ++col) {
          const Complex apc = a(p, col);
          const Complex aqc = a(q, col);
          a(p, col) = c * apc + std::conj(u_qp) * aqc;
          a(q, col) = s * apc + std::conj(u_qq) * aqc;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          const Complex vrp = v(r, p);
          const Complex vrq = v(r, q);
          v(r, p) = c * vrp + u_qp * vrq;
          v(r, q) = s * vrp + u_qq * vrq;
        }
      }
    }
  }
  throw ConvergenceError(fmt::format("jacobi_eigensystem: no convergence in {} sweeps", max_sweeps));
}

}  // namespace oplab
