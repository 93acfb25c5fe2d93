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

#include <cstddef>

#include "oplab/kernels.hpp"
#include "oplab/linalg.hpp"

namespace oplab::kernels::serial {

void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
  const std::size_t n = a.rows();
  const std::size_t inner = a.cols();
  const std::size_t m = b.cols();
  for (std::size_t i = 0; i < n; ++i) {
    auto ci = c.row(i);
    for (std::size_t j = 0; j < m; ++j) ci[j] = 0.0;
    const auto ai = a.row(i);
    for (std::size_t k = 0; k < inner; ++k) {
      const Complex aik = ai[k];
      if (aik == Complex(0.0)) continue;
      const auto bk = b.row(k);
      for (std::size_t j = 0; j < m; ++j) ci[j] += aik * bk[j];
    }
  }
}

void sample_kernel(const PointKernel& k, std::span<const double> xs, std::span<const double> ys,
                   ComplexMatrix& out) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto row = out.row(i);
    for (std::size_t j = 0; j < ys.size(); ++j) row[j] = k(xs[i], ys[j]);
  }
}

void sample_kernel(const ComplexPointKernel& k, std::span<const Complex> xs,
                   std::span<const Complex> ys, ComplexMatrix& out) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto row = out.row(i);
    for (std::size_t j = 0; j < ys.size(); ++j) row[j] = k(xs[i], ys[j]);
  }
}

void weighted_sums(const PointKernel& g, std::span<const double> targets,
                   std::span<const double> nodes, std::span<const Complex> weighted_values,
                   std::span<Complex> out) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) s += g(targets[i], nodes[j]) * weighted_values[j];
    out[i] = s;
  }
}

void evaluate(const PointFunction& f, std::span<const double> ts, std::span<Complex> out) {
  for (std::size_t i = 0; i < ts.size(); ++i) out[i] = f(ts[i]);
}

void map_indexed(const IndexFunction& f, std::span<Complex> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(i);
}

}  // namespace oplab::kernels::serial
