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

// Data-parallel inner loops shared by the modules.
//
// Every kernel exists twice: `serial::` is the straightforward reference and
// `parallel::` distributes the outer loop with OpenMP. Each output element
// is produced by exactly one thread with the same arithmetic as the serial
// version, so the two agree bit for bit regardless of thread count.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace oplab {

class ComplexMatrix;

namespace kernels {

using Complex = std::complex<double>;
using PointKernel = std::function<Complex(double, double)>;
using ComplexPointKernel = std::function<Complex(Complex, Complex)>;
using PointFunction = std::function<Complex(double)>;
using IndexFunction = std::function<Complex(std::size_t)>;

namespace serial {

/// C = A B
void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);

/// out(i, j) = k(x_i, y_j)
void sample_kernel(const PointKernel& k, std::span<const double> xs,
                   std::span<const double> ys, ComplexMatrix& out);
void sample_kernel(const ComplexPointKernel& k, std::span<const Complex> xs,
                   std::span<const Complex> ys, ComplexMatrix& out);

/// out[i] = sum_j w_j g(t_i, s_j) f_j : weighted kernel sums over a fixed
/// node set, the shape of every quadrature-based transform in the library.
void weighted_sums(const PointKernel& g, std::span<const double> targets,
                   std::span<const double> nodes, std::span<const Complex> weighted_values,
                   std::span<Complex> out);

/// out[i] = f(t_i)
void evaluate(const PointFunction& f, std::span<const double> ts, std::span<Complex> out);

/// out[i] = f(i) for i < out.size()
void map_indexed(const IndexFunction& f, std::span<Complex> out);

}  // namespace serial

namespace parallel {

void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);
void sample_kernel(const PointKernel& k, std::span<const double> xs,
                   std::span<const double> ys, ComplexMatrix& out);
void sample_kernel(const ComplexPointKernel& k, std::span<const Complex> xs,
                   std::span<const Complex> ys, ComplexMatrix& out);
void weighted_sums(const PointKernel& g, std::span<const double> targets,
                   std::span<const double> nodes, std::span<const Complex> weighted_values,
                   std::span<Complex> out);
void evaluate(const PointFunction& f, std::span<const double> ts, std::span<Complex> out);
void map_indexed(const IndexFunction& f, std::span<Complex> out);

}  // namespace parallel

/// Threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace kernels
}  // namespace oplab
