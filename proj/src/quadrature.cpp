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

#include "oplab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "oplab/errors.hpp"

namespace oplab {

QuadratureGrid gauss_legendre(std::size_t order) {
  if (order == 0) throw DomainError("gauss_legendre: order must be positive");
  QuadratureGrid g{-1.0, 1.0, std::vector<double>(order), std::vector<double>(order)};
  const std::size_t half = (order + 1) / 2;
  const double n = static_cast<double>(order);
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= order; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[i] = -x;
    g.nodes[order - 1 - i] = x;
    g.weights[i] = w;
    g.weights[order - 1 - i] = w;
  }
  return g;
}

QuadratureGrid composite_gauss_legendre(double a, double b, std::size_t panels, std::size_t order) {
  if (!(b > a)) throw DomainError(fmt::format("quadrature interval [{}, {}] is empty", a, b));
  if (panels == 0) throw DomainError("composite_gauss_legendre: need at least one panel");
  const auto base = gauss_legendre(order);
  QuadratureGrid g{a, b, {}, {}};
  g.nodes.reserve(panels * order);
  g.weights.reserve(panels * order);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h;
    for (std::size_t k = 0; k < order; ++k) {
      g.nodes.push_back(mid + 0.5 * h * base.nodes[k]);
      g.weights.push_back(0.5 * h * base.weights[k]);
    }
  }
  return g;
}

QuadratureGrid gauss_grid(double a, double b, std::size_t n_nodes) {
  if (n_nodes == 0 || n_nodes % 8 != 0) {
    throw DomainError(fmt::format("gauss_grid: node count {} is not a positive multiple of 8", n_nodes));
  }
  return composite_gauss_legendre(a, b, n_nodes / 8, 8);
}

void validate(const QuadratureGrid& grid) {
  if (grid.nodes.size() != grid.weights.size()) throw DimensionError("quadrature: nodes/weights mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid.nodes[i] > grid.a && grid.nodes[i] < grid.b)) {
      throw DomainError(fmt::format("quadrature node {} = {} outside ({}, {})", i, grid.nodes[i], grid.a, grid.b));
    }
    if (i > 0 && !(grid.nodes[i] > grid.nodes[i - 1])) throw DomainError("quadrature nodes not ascending");
    if (!(grid.weights[i] > 0.0)) throw DomainError("quadrature weight not positive");
    total += grid.weights[i];
  }
  const double len = grid.b - grid.a;
  if (std::abs(total - len) > 1e-12 * std::max(1.0, len)) {
    throw DomainError(fmt::format("quadrature weights sum to {}, expected {}", total, len));
  }
}

}  // namespace oplab
