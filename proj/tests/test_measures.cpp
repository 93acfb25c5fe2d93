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
#include "oplab/harmonic.hpp"
#include "oplab/measures.hpp"
#include "oplab/random.hpp"

using namespace oplab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(FiniteMeasure, DiracTransforms) {
  const auto d0 = FiniteMeasure::dirac(0.0);
  const auto da = FiniteMeasure::dirac(1.5, 2.0);
  for (double w : {-3.0, 0.0, 0.7}) {
    EXPECT_EQ(measure_fourier(d0, w), Complex(1.0));
    EXPECT_NEAR(std::abs(measure_fourier(da, w) - 2.0 * std::polar(1.0, -1.5 * w)), 0.0, 1e-15);
  }
}

TEST(FiniteMeasure, MassVariationPositivity) {
  const auto grid = UniformGrid::covering(-1.0, 1.0, 200);
  const auto mu = FiniteMeasure({{0.5, -2.0}}, FiniteMeasure::from_density([](double) { return Complex(1.0); }, grid)
                                                   .density());
  EXPECT_NEAR(mu.total_mass().real(), 0.0, 1e-12);
  EXPECT_NEAR(mu.total_variation(), 4.0, 1e-12);
  EXPECT_FALSE(mu.is_positive());
  EXPECT_TRUE((mu + FiniteMeasure::dirac(0.5, 2.0)).is_positive());
}

TEST(FiniteMeasure, AdditionRequiresSharedGrid) {
  const auto a = FiniteMeasure::from_density([](double) { return Complex(1.0); }, UniformGrid::covering(0, 1, 10));
  const auto b = FiniteMeasure::from_density([](double) { return Complex(1.0); }, UniformGrid::covering(0, 1, 20));
  EXPECT_THROW(a + b, DimensionError);
  EXPECT_NEAR((a + a).total_mass().real(), 2.0, 1e-12);
  EXPECT_NEAR((a * Complex(0, 2)).total_mass().imag(), 2.0, 1e-12);
}

TEST(FiniteMeasure, JsonRoundTrip) {
  const auto grid = UniformGrid::covering(-2.0, 2.0, 16);
  const FiniteMeasure mu({{0.25, Complex(1, -1)}, {-1.0, 3.0}},
                         FiniteMeasure::from_density([](double x) { return Complex(x * x, 1.0); }, grid).density());
  const auto back = FiniteMeasure::from_json(mu.to_json());
  ASSERT_EQ(back.atoms().size(), 2u);
  EXPECT_EQ(back.atoms()[0].mass, mu.atoms()[0].mass);
  ASSERT_TRUE(back.density().has_value());
  EXPECT_EQ(back.density()->values, mu.density()->values);
  EXPECT_EQ(back.density()->grid.step, grid.step);
}

TEST(MeasureFourier, PoissonDensity) {
  const double y = 0.5;
  const auto grid = UniformGrid::covering(-8000.0, 8000.0, 320000);
  const auto py = FiniteMeasure::from_density([y](double x) { return Complex(poisson_kernel_halfplane(x, y)); }, grid);
  for (double w : {-10.0, -1.0, 0.0, 0.3, 4.0}) {
    EXPECT_NEAR(std::abs(measure_fourier(py, w) - std::exp(-y * std::abs(w))), 0.0, 1e-4) << w;
  }
}

TEST(MeasureFourier, UniquenessProbeSeparatesDistinctMeasures) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const FiniteMeasure mu({{rng.uniform(-2, 2), rng.uniform(0.5, 1.5)}, {rng.uniform(-2, 2), rng.uniform(0.5, 1.5)}});
    const FiniteMeasure nu({{rng.uniform(-2, 2), rng.uniform(0.5, 1.5)}, {rng.uniform(-2, 2), rng.uniform(0.5, 1.5)}});
    double gap = 0.0;
    for (int k = 0; k < 64; ++k) {
      const double w = -8.0 + 0.25 * k;
      gap = std::max(gap, std::abs(measure_fourier(mu, w) - measure_fourier(nu, w)));
    }
    EXPECT_GT(gap, 1e-6);
  }
}

TEST(PoissonSmooth, DiracGivesKernel) {
  const auto grid = UniformGrid::covering(-5.0, 5.0, 1000);
  const auto p = poisson_smooth(FiniteMeasure::dirac(0.0), 0.3, grid, Smoothing::PointSample);
  for (std::size_t i = 0; i < grid.count; i += 97) {
    EXPECT_NEAR(p.density()->values[i].real(), poisson_kernel_halfplane(grid.x(i), 0.3), 1e-14);
  }
}

TEST(PoissonSmooth, MassWithinTail) {
  const double y = 0.01;
  const auto grid = UniformGrid::covering(-y / std::tan(kPi * kTailMass / 2) - 1, y / std::tan(kPi * kTailMass / 2) + 1,
                                          20001);
  const auto p = poisson_smooth(FiniteMeasure::dirac(0.2), y, grid);
  const double m = p.total_mass().real();
  EXPECT_LE(m, 1.0 + 1e-12);
  EXPECT_GE(m, 1.0 - kTailMass);
}

TEST(PoissonSmooth, LinearAndRejectsNonPositiveY) {
  const auto grid = UniformGrid::covering(-3.0, 3.0, 300);
  const auto a = FiniteMeasure::dirac(-0.5, 1.0);
  const auto b = FiniteMeasure::dirac(1.0, Complex(0, 2));
  const auto lhs = poisson_smooth(a + b * Complex(3.0), 0.2, grid);
  const auto ra = poisson_smooth(a, 0.2, grid);
  const auto rb = poisson_smooth(b, 0.2, grid);
  for (std::size_t i = 0; i < grid.count; ++i) {
    EXPECT_NEAR(std::abs(lhs.density()->values[i] - ra.density()->values[i] - 3.0 * rb.density()->values[i]), 0.0,
                1e-12);
  }
  EXPECT_THROW(poisson_smooth(a, 0.0, grid), DomainError);
}

TEST(PoissonSmooth, WeakLimit) {
  auto bump = [](double x) { return Complex(std::exp(-x * x)); };
  const FiniteMeasure mu({{0.3, 1.0}, {-0.8, 2.0}});
  const Complex target = mu.integrate(bump);
  const auto grid = UniformGrid::covering(-60.0, 60.0, 120000);
  double prev = 1e300;
  for (double y : {0.5, 0.1, 0.02}) {
    const double err = std::abs(poisson_smooth(mu, y, grid).integrate(bump) - target);
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 0.05);
}

TEST(Herglotz, SingleAtomRoundTrip) {
  auto u = [](Complex z) { return poisson_kernel_halfplane(z.real(), z.imag()); };
  const auto atoms = extract_atoms(herglotz_recover(u, 1e-3, {-1.0, 1.0, 0.0}));
  ASSERT_EQ(atoms.size(), 1u);
  EXPECT_NEAR(atoms[0].x, 0.0, 1e-3);
  EXPECT_NEAR(atoms[0].mass.real(), 1.0, 0.02);
}

TEST(Herglotz, RejectsNegativeSamples) {
  auto u = [](Complex z) { return -poisson_kernel_halfplane(z.real(), z.imag()); };
  EXPECT_THROW(herglotz_recover(u, 0.01, {}), NotPositiveHarmonicError);
}

TEST(Herglotz, MonotoneInEpsilonAndMassBound) {
  auto u = [](Complex z) {
    return 2.0 * poisson_kernel_halfplane(z.real() + 1, z.imag()) +
           3.0 * poisson_kernel_halfplane(z.real() - 1, z.imag());
  };
  double prev = 1e300;
  for (double eps : {0.1, 0.01, 0.001}) {
    const auto rec = herglotz_recover(u, eps, {-3.0, 3.0, 0.0});
    const auto atoms = extract_atoms(rec);
    ASSERT_EQ(atoms.size(), 2u);
    const double err = std::max(std::abs(atoms[0].mass.real() - 2) / 2, std::abs(atoms[1].mass.real() - 3) / 3);
    EXPECT_LE(err, prev);
    prev = err;
    for (double y : {1.0, 5.0}) EXPECT_LE(kPi * y * u({0.2, y}), rec.total_mass().real() + 0.01);
  }
}

TEST(Bochner, Examples) {
  Rng rng(6);
  std::vector<double> pts(16);
  for (auto& p : pts) p = rng.uniform(-5, 5);
  EXPECT_TRUE(positive_definite_test([](double x) { return Complex(std::exp(-std::abs(x))); }, pts).positive_definite);
  EXPECT_TRUE(positive_definite_test([](double x) { return Complex(std::cos(x)); }, pts).positive_definite);
  const std::vector<double> two{0.0, 1.0};
  const auto v = positive_definite_test([](double x) { return Complex(std::abs(x)); }, two);
  EXPECT_FALSE(v.positive_definite);
  EXPECT_NEAR(v.min_eigenvalue, -1.0, 1e-14);
  EXPECT_THROW(positive_definite_test([](double x) { return Complex(x); }, two), StructuralError);
}

TEST(Bochner, TransformsOfPositiveMeasuresArePositiveDefinite) {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    std::vector<Atom> atoms(1 + static_cast<std::size_t>(rng.uniform() * 5));
    for (auto& a : atoms) a = {rng.uniform(-3, 3), rng.uniform(0.01, 2)};
    const FiniteMeasure mu(atoms);
    std::vector<double> pts(12);
    for (auto& p : pts) p = rng.uniform(-6, 6);
    EXPECT_TRUE(positive_definite_test([&mu](double x) { return measure_fourier(mu, x); }, pts).positive_definite);
  }
}
