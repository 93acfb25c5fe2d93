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

#include <cstddef>
#include <vector>

namespace oplab {

/// Nodes and positive weights of a quadrature rule on [a, b].
struct QuadratureGrid {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Legendre rule of the given order on [-1, 1].
QuadratureGrid gauss_legendre(std::size_t order);

/// `panels` equal panels on [a, b], each carrying a Gauss-Legendre rule of
/// `order` nodes.
QuadratureGrid composite_gauss_legendre(double a, double b, std::size_t panels,
                                        std::size_t order = 8);

/// Composite 8-point Gauss-Legendre grid with `n_nodes` nodes in total
/// (n_nodes must be a positive multiple of 8).
QuadratureGrid gauss_grid(double a, double b, std::size_t n_nodes);

/// Checks the grid invariants: ascending nodes strictly inside (a, b),
/// positive weights summing to b - a within 1e-12 (relative).
void validate(const QuadratureGrid& grid);

}  // namespace oplab
