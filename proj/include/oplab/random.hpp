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

// Portable deterministic randomness: SplitMix64 with its own uniform and
// normal transforms, so streams agree across standard libraries.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

#include "oplab/linalg.hpp"

namespace oplab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Independent substream keyed by a label (FNV-1a of the label mixed into the seed).
  Rng split(std::string_view label) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    Rng child(state_ ^ h);
    child.next();
    return child;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal (Box-Muller).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    while (u == 0.0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * std::numbers::pi * v);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * v);
  }

  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  /// Uniform in the disc of the given radius.
  Complex in_disc(double radius) {
    const double r = radius * std::sqrt(uniform());
    return std::polar(r, 2.0 * std::numbers::pi * uniform());
  }

  CVector unit_vector(std::size_t n) {
    CVector x(n);
    for (auto& v : x) v = complex_normal();
    const double nx = norm(x);
    for (auto& v : x) v /= nx;
    return x;
  }

  ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (auto& v : m.data()) v = complex_normal();
    return m;
  }

  /// (G + G^*) / 2 with Gaussian G.
  ComplexMatrix hermitian(std::size_t n) {
    const ComplexMatrix g = gaussian_matrix(n, n);
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
  }

  /// Unitary factor of a Gaussian matrix by Gram-Schmidt.
  ComplexMatrix unitary(std::size_t n) {
    std::vector<CVector> cols;
    for (std::size_t j = 0; j < n; ++j) {
      CVector v(n);
      for (auto& x : v) x = complex_normal();
      cols.push_back(std::move(v));
    }
    const auto q = gram_schmidt(cols, InnerProductSpace::euclidean(n));
    ComplexMatrix u(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) u(i, j) = q[j][i];
    return u;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace oplab
