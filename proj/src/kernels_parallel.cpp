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
#include <cstdint>

#ifdef OPLAB_HAVE_OPENMP
#include <omp.h>
#endif

#include "oplab/kernels.hpp"
#include "oplab/linalg.hpp"

// Each loop body below is the serial kernel's body verbatim; only the outer
// index is distributed.

namespace oplab::kernels {

int max_threads() {
#ifdef OPLAB_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace parallel {

namespace {
// Below this much work the fork/join overhead dominates.
constexpr std::size_t kMinParallelWork = 4096;
}  // namespace

void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
  const auto n = static_cast<std::int64_t>(a.rows());
  const std::size_t inner = a.cols();
  const std::size_t m = b.cols();
  const bool big = a.rows() * inner * m >= kMinParallelWork;
#pragma omp parallel for schedule(static) if (big)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
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
  const auto n = static_cast<std::int64_t>(xs.size());
  const bool big = xs.size() * ys.size() >= kMinParallelWork;
#pragma omp parallel for schedule(static) if (big)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    auto row = out.row(i);
    for (std::size_t j = 0; j < ys.size(); ++j) row[j] = k(xs[i], ys[j]);
  }
}

void sample_kernel(const ComplexPointKernel& k, std::span<const Complex> xs,
                   std::span<const Complex> ys, ComplexMatrix& out) {
  const auto n = static_cast<std::int64_t>(xs.size());
  const bool big = xs.size() * ys.size() >= kMinParallelWork;
#pragma omp parallel for schedule(static) if (big)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    auto row = out.row(i);
    for (std::size_t j = 0; j < ys.size(); ++j) row[j] = k(xs[i], ys[j]);
  }
}

void weighted_sums(const PointKernel& g, std::span<const double> targets,
                   std::span<const double> nodes, std::span<const Complex> weighted_values,
                   std::span<Complex> out) {
  const auto n = static_cast<std::int64_t>(targets.size());
  const bool big = targets.size() * nodes.size() >= kMinParallelWork;
#pragma omp parallel for schedule(static) if (big)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    Complex s = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) s += g(targets[i], nodes[j]) * weighted_values[j];
    out[i] = s;
  }
}

void evaluate(const PointFunction& f, std::span<const double> ts, std::span<Complex> out) {
  const auto n = static_cast<std::int64_t>(ts.size());
  const bool big = ts.size() >= kMinParallelWork / 16;
#pragma omp parallel for schedule(static) if (big)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    out[i] = f(ts[i]);
  }
}

void map_indexed(const IndexFunction& f, std::span<Complex> out) {
  const auto n = static_cast<std::int64_t>(out.size());
  const bool big = out.size() > 1;
#pragma omp parallel for schedule(dynamic, 1) if (big)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    out[i] = f(i);
  }
}

}  // namespace parallel
}  // namespace oplab::kernels
