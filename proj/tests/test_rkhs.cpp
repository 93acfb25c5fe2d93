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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oplab/errors.hpp"
#include "oplab/random.hpp"
#include "oplab/rkhs.hpp"
#include "oracle.hpp"

using namespace oplab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Kernels, PointValues) {
  EXPECT_EQ(hardy_kernel(0.0, Complex(0.3, 0.4)), Complex(1.0));
  EXPECT_NEAR(harmonic_hardy_kernel(0.5, 0.5), 5.0 / 3.0, 1e-15);
  EXPECT_THROW(hardy_kernel(1.0, 0.0), DomainError);
  EXPECT_THROW(dirichlet_kernel(0.0, Complex(0.6, 0.8)), DomainError);
  EXPECT_THROW(Kernel::hardy()(Complex(0, 1), 0.0), DomainError);
}

TEST(Kernels, DirichletMatchesSeries) {
  Rng rng(51);
  for (int t = 0; t < 200; ++t) {
    // Include tiny products that exercise the series branch.
    const Complex z = t % 4 ? rng.in_disc(0.6) : rng.in_disc(0.05);
    const Complex w = rng.in_disc(0.6);
    const Complex u = std::conj(w) * z;
    Complex s = 0.0, p = 1.0;
    for (int n = 0; n <= 80; ++n) {
      s += p / static_cast<double>(n + 1);
      p *= u;
    }
    EXPECT_NEAR(std::abs(dirichlet_kernel(z, w) - s), 0.0, 1e-10);
  }
}

TEST(Gram, HardyExamples) {
  const std::vector<Complex> zero{0.0};
  EXPECT_EQ(gram(Kernel::hardy(), zero)(0, 0), Complex(1.0));
  const std::vector<Complex> two{0.0, 0.5};
  const auto g = gram(Kernel::hardy(), two);
  EXPECT_NEAR(std::abs(g(0, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g(1, 1) - 4.0 / 3.0), 0.0, 1e-15);
  const std::vector<Complex> bad{0.0, 1.0};
  EXPECT_THROW(gram(Kernel::hardy(), bad), DomainError);
}

// Every registered kernel is Hermitian and positive semidefinite.
class KernelAudit : public ::testing::TestWithParam<std::string> {};

TEST_P(KernelAudit, HermitianAndPsd) {
  const auto k = kernel_by_name(GetParam());
  Rng rng(52);
  for (int t = 0; t < 200; ++t) {
    std::vector<Complex> pts(2 + static_cast<std::size_t>(rng.uniform() * 11));
    for (auto& z : pts) z = rng.in_disc(0.95);
    const auto g = gram(k, pts);
    EXPECT_LT(hermitian_defect(g), 1e-12);
    EXPECT_GE(oracle::hermitian_eigenvalues(g).minCoeff(), -1e-9);
  }
}

TEST_P(KernelAudit, MooreAronszajnConsistency) {
  const auto k = kernel_by_name(GetParam());
  Rng rng(53);
  for (int t = 0; t < 50; ++t) {
    SpanElement f;
    for (int i = 0; i < 6; ++i) {
      f.points.push_back(rng.in_disc(0.8));
      f.coefficients.push_back(rng.complex_normal());
    }
    const double n2 = norm_squared(k, f);
    EXPECT_GE(n2, -1e-10);
    Complex via = 0.0;
    for (std::size_t i = 0; i < f.points.size(); ++i) via += std::conj(f.coefficients[i]) * reproduce(k, f, f.points[i]);
    EXPECT_NEAR(std::abs(via - n2), 0.0, 1e-10 * (1 + n2));
  }
}

INSTANTIATE_TEST_SUITE_P(Registry, KernelAudit, ::testing::ValuesIn(kernel_names()));

TEST(Reproduce, KernelFunctionsAndBounds) {
  const auto k = Kernel::hardy();
  const Complex x0(0.2, -0.3);
  const SpanElement kx{{x0}, {1.0}};
  for (const Complex x : {Complex(0.0), Complex(0.5, 0.5)}) EXPECT_EQ(reproduce(k, kx, x), k(x, x0));
  const SpanElement zero{{x0, 0.1}, {0.0, 0.0}};
  EXPECT_EQ(reproduce(k, zero, 0.7), Complex(0.0));
  Rng rng(54);
  for (int t = 0; t < 100; ++t) {
    SpanElement f;
    for (int i = 0; i < 4; ++i) {
      f.points.push_back(rng.in_disc(0.9));
      f.coefficients.push_back(rng.complex_normal());
    }
    const Complex z = rng.in_disc(0.99);
    EXPECT_LE(std::abs(reproduce(k, f, z)), std::sqrt(norm_squared(k, f) / (1 - std::norm(z))) * (1 + 1e-10));
  }
  SpanElement broken{{0.0, 0.1}, {1.0}};
  EXPECT_THROW(reproduce(k, broken, 0.0), DimensionError);
}

TEST(Kernels, FromGram) {
  const auto k = Kernel::from_gram("two", ComplexMatrix::from_rows({{2.0, 1.0}, {1.0, 2.0}}));
  EXPECT_EQ(k(0.0, 1.0), Complex(1.0));
  EXPECT_THROW(k(2.0, 0.0), DomainError);
  EXPECT_THROW(k(0.5, 0.0), DomainError);
  EXPECT_THROW(kernel_by_name("bergman"), UsageError);
}

TEST(HardyNorm, CoefficientsMatchBoundaryIntegral) {
  Rng rng(55);
  for (int t = 0; t < 20; ++t) {
    std::vector<Complex> c(1 + static_cast<std::size_t>(rng.uniform() * 12));
    double l2 = 0.0;
    for (auto& a : c) {
      a = rng.complex_normal();
      l2 += std::norm(a);
    }
    const auto f = polynomial_function(c);
    const int m = 64;
    double quad = 0.0;
    for (int j = 0; j < m; ++j) quad += std::norm(f.value(std::polar(1.0, 2 * kPi * j / m)));
    EXPECT_NEAR(quad / m, l2, 1e-10 * l2);
  }
}

TEST(Multiplier, Examples) {
  Rng rng(56);
  std::vector<Complex> pts;
  for (int i = 0; i < 20; ++i) pts.push_back(rng.in_disc(0.5));
  pts.push_back(0.5);
  const Complex c(0.3, 0.9);
  const auto cst = multiplier_adjoint_check([c](Complex) { return c; }, Kernel::hardy(), pts, 64);
  EXPECT_LE(cst.max_residual, 1e-12);
  const std::vector<Complex> z{0.0, 1.0};
  const auto rz = multiplier_adjoint_check(z, Kernel::hardy(), pts, 64);
  EXPECT_LE(rz.max_residual, 2 * std::pow(0.5, 64));
  EXPECT_TRUE(rz.norm_bound_holds);
  EXPECT_GE(rz.multiplier_norm, rz.max_abs_b);
  // The sampled route agrees to roundoff.
  const auto rs = multiplier_adjoint_check([](Complex x) { return x; }, Kernel::hardy(), pts, 64);
  EXPECT_LE(rs.max_residual, 1e-14);
  EXPECT_NEAR(std::abs(rs.b_coefficients[1] - 1.0), 0.0, 1e-14);
}

TEST(Multiplier, ResidualShrinksWithTruncation) {
  const std::vector<Complex> pts{0.8, Complex(0, -0.8)};
  const std::vector<Complex> z{0.0, 1.0};
  double prev = 1e300;
  for (std::size_t n : {8, 16, 32}) {
    const auto r = multiplier_adjoint_check(z, Kernel::hardy(), pts, n);
    EXPECT_NEAR(r.max_residual, std::pow(0.8, n + 1), 1e-15);
    EXPECT_LT(r.max_residual, prev);
    prev = r.max_residual;
  }
}

TEST(Multiplier, Preconditions) {
  const std::vector<Complex> pts{0.1};
  EXPECT_THROW(multiplier_adjoint_check([](Complex x) { return std::pow(x, 5); }, Kernel::hardy(), pts, 8),
               PreconditionError);
  EXPECT_THROW(multiplier_adjoint_check([](Complex x) { return x; }, Kernel::harmonic_hardy(), pts, 8),
               PreconditionError);
}

TEST(DirichletSeminorm, FormsAndInvariance) {
  const std::vector<Complex> id{0.0, 1.0};
  EXPECT_EQ(dirichlet_seminorm(id), 1.0);
  EXPECT_NEAR(dirichlet_seminorm_quadrature(polynomial_function(id)), 1.0, 1e-12);
  Rng rng(57);
  for (int t = 0; t < 20; ++t) {
    std::vector<Complex> c(17);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = rng.complex_normal() / static_cast<double>(k + 1);
    EXPECT_NEAR(dirichlet_seminorm_quadrature(polynomial_function(c)), dirichlet_seminorm(c), 1e-6);
    std::vector<Complex> c8(c.begin(), c.begin() + 9);
    const double base = dirichlet_seminorm(c8);
    const auto g = compose_mobius(c8, rng.in_disc(0.5), std::polar(1.0, rng.uniform(0, 2 * kPi)));
    EXPECT_NEAR(dirichlet_seminorm_quadrature(g), base, 1e-6);
    for (std::size_t n : {2, 3}) {
      EXPECT_NEAR(dirichlet_seminorm(compose_power(c8, n)), static_cast<double>(n) * base, 1e-8);
    }
  }
  EXPECT_THROW(compose_mobius(id, 1.0, 1.0), DomainError);
  EXPECT_THROW(compose_mobius(id, 0.2, 2.0), DomainError);
}
