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

#include <gtest/gtest.h>

#include "oplab/errors.hpp"
#include "oplab/random.hpp"
#include "oplab/spectral.hpp"
#include "oracle.hpp"

using namespace oplab;

namespace {

const Complex kIm(0.0, 1.0);

ComplexMatrix diag(std::vector<double> d) { return ComplexMatrix::diagonal(std::span<const double>(d)); }

// U diag(d) U^* made exactly Hermitian.
ComplexMatrix with_spectrum(Rng& rng, const std::vector<double>& d) {
  const auto u = rng.unitary(d.size());
  const auto a = u * diag(d) * u.adjoint();
  return Complex(0.5) * (a + a.adjoint());
}

}  // namespace

TEST(BorelSet, Membership) {
  const auto e = BorelSet::interval(0.0, 1.0, false, true) | BorelSet::point(3.0);
  EXPECT_FALSE(e.contains(0.0));
  EXPECT_TRUE(e.contains(1.0));
  EXPECT_TRUE(e.contains(3.0 + 1e-13));
  EXPECT_FALSE(e.contains(2.0));
  EXPECT_TRUE(BorelSet::real_line().contains(-1e300));
  EXPECT_FALSE(BorelSet::empty().contains(0.0));
}

TEST(Pvm, ExtremesAndAdditivity) {
  Rng rng(21);
  const auto a = rng.hermitian(7);
  const auto res = hermitian_eig(a);
  EXPECT_LT(max_abs_diff(pvm(res, BorelSet::real_line()), ComplexMatrix::identity(7)), 1e-12);
  EXPECT_EQ(max_abs(pvm(res, BorelSet::empty())), 0.0);
  const double cut = res.eigenvalues()[3];
  const auto lo = pvm(res, BorelSet::at_most(cut));
  const auto hi = pvm(res, BorelSet::interval(cut, 1e300, false, true));
  EXPECT_LT(max_abs_diff(lo + hi, ComplexMatrix::identity(7)), 1e-12);
  EXPECT_LT(max_abs(lo * hi), 1e-12);
  EXPECT_LT(max_abs_diff(lo * lo, lo), 1e-12);
  EXPECT_NEAR(lo.trace().real(), 4.0, 1e-12);
}

TEST(Pvm, MedianTraceCountsMultiplicity) {
  Rng rng(22);
  const auto a = with_spectrum(rng, {-1.0, 0.5, 0.5, 0.5, 2.0, 3.0});
  const auto res = hermitian_eig(a);
  EXPECT_NEAR(pvm(res, BorelSet::at_most(0.5)).trace().real(), 4.0, 1e-10);
}

TEST(MeasurableCalculus, Basics) {
  Rng rng(23);
  const auto a = rng.hermitian(5);
  const auto res = hermitian_eig(a);
  EXPECT_LT(max_abs_diff(measurable_calculus(res, [](double x) { return Complex(x); }), a), 1e-12);
  EXPECT_LT(max_abs_diff(measurable_calculus(res, [](double x) { return Complex(x * x); }), a * a), 1e-10);
  const double c = res.eigenvalues()[2];
  auto chi = [c](double x) { return Complex(x <= c ? 1.0 : 0.0); };
  EXPECT_LT(max_abs_diff(measurable_calculus(res, chi), pvm(res, BorelSet::at_most(c))), 1e-12);
  EXPECT_THROW(measurable_calculus(res, [](double) { return Complex(std::nan("")); }), EvaluationError);
}

TEST(MeasurableCalculus, StarMorphismProperty) {
  Rng rng(24);
  for (int t = 0; t < 30; ++t) {
    const auto a = rng.hermitian(6);
    const auto res = hermitian_eig(a);
    std::vector<Complex> p(3), q(3);
    for (auto& c : p) c = rng.complex_normal();
    for (auto& c : q) c = rng.complex_normal();
    auto pf = [&p](double x) { return p[0] + x * (p[1] + x * p[2]); };
    auto qf = [&q](double x) { return q[0] + x * (q[1] + x * q[2]); };
    const auto pa = measurable_calculus(res, pf);
    const auto qa = measurable_calculus(res, qf);
    EXPECT_LT(max_abs_diff(measurable_calculus(res, [&](double x) { return pf(x) * qf(x); }), pa * qa), 1e-10);
    EXPECT_LT(max_abs_diff(measurable_calculus(res, [&](double x) { return std::conj(pf(x)); }), pa.adjoint()), 1e-10);
  }
}

TEST(SpectralMeasure, EigenvectorGivesDirac) {
  const auto res = hermitian_eig(diag({-1.0, 2.0, 5.0}));
  const CVector e{0.0, 1.0, 0.0};
  const auto mu = spectral_measure(res, e, e);
  for (std::size_t k = 0; k < mu.points.size(); ++k)
    EXPECT_NEAR(std::abs(mu.masses[k] - (mu.points[k] == 2.0 ? 1.0 : 0.0)), 0.0, 1e-14);
  const CVector f{1.0, 0.0, 0.0};
  EXPECT_NEAR(std::abs(spectral_measure(hermitian_eig(ComplexMatrix::identity(3)), e, f).total_mass()), 0.0, 1e-15);
}

TEST(SpectralMeasure, MassesAndSupport) {
  Rng rng(25);
  for (int t = 0; t < 30; ++t) {
    const auto a = with_spectrum(rng, {-2.0, 0.0, 0.0, 1.0, rng.uniform(2, 3)});
    const auto res = hermitian_eig(a);
    const auto x = rng.unit_vector(5);
    const auto y = rng.unit_vector(5);
    EXPECT_NEAR(std::abs(spectral_measure(res, x, y).total_mass() - inner_product(x, y)), 0.0, 1e-12);
    const auto mxx = spectral_measure(res, x, x);
    for (const auto& m : mxx.masses) EXPECT_GE(m.real(), -1e-12);
    // Support over the coordinate basis is exactly the spectrum.
    std::vector<double> support;
    for (std::size_t i = 0; i < 5; ++i) {
      CVector e(5, 0.0);
      e[i] = 1.0;
      const auto m = spectral_measure(res, e, e);
      for (std::size_t k = 0; k < m.points.size(); ++k)
        if (std::abs(m.masses[k]) > 1e-12 && std::find(support.begin(), support.end(), m.points[k]) == support.end())
          support.push_back(m.points[k]);
    }
    std::sort(support.begin(), support.end());
    EXPECT_EQ(support, res.eigenvalues());
    for (double l : res.eigenvalues()) EXPECT_GT(frobenius_norm(pvm(res, BorelSet::point(l))), 0.5);
    EXPECT_EQ(frobenius_norm(pvm(res, BorelSet::point(0.5))), 0.0);
  }
}

TEST(SpectralMeasure, JsonAndMeasure) {
  const auto res = hermitian_eig(diag({1.0, 2.0}));
  const CVector x{1.0, 1.0};
  const auto mu = spectral_measure(res, x, x);
  const auto j = mu.to_json();
  EXPECT_TRUE(j.is_object());
  EXPECT_NEAR(mu.to_measure().total_mass().real(), 2.0, 1e-15);
}

TEST(Resolvent, Examples) {
  const auto r0 = resolvent(ComplexMatrix::zeros(3, 3), kIm);
  EXPECT_LT(max_abs_diff(r0, kIm * ComplexMatrix::identity(3)), 1e-15);
  const auto r1 = resolvent(diag({1.0, -1.0}), 2.0 * kIm);
  EXPECT_NEAR(std::abs(r1(0, 0) - 1.0 / (1.0 - 2.0 * kIm)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r1(1, 1) - 1.0 / (-1.0 - 2.0 * kIm)), 0.0, 1e-15);
  EXPECT_THROW(resolvent(diag({1.0, 2.0}), 2.0), NearSingularError);
  EXPECT_THROW(resolvent(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}), kIm), PreconditionError);
}

TEST(Resolvent, NormBoundAndSpectralForm) {
  Rng rng(26);
  const auto a = rng.hermitian(8);
  const auto res = hermitian_eig(a);
  for (int t = 0; t < 100; ++t) {
    const Complex z(rng.uniform(-4, 4), rng.uniform(-2, 2));
    const auto r = resolvent(a, z);
    EXPECT_LE(oracle::spectral_norm(r) * std::abs(z.imag()), 1.0 + 1e-10);
    const auto x = rng.unit_vector(8);
    const auto mu = spectral_measure(res, x, x);
    EXPECT_NEAR(std::abs(inner_product(x, r * x) - mu.integrate([z](double l) { return 1.0 / (Complex(l) - z); })),
                0.0, 1e-10);
  }
}

TEST(Neumann, ScalarAndDivergence) {
  const auto n1 = neumann_resolvent(ComplexMatrix::from_rows({{0.5}}), 1.0);
  ASSERT_TRUE(n1.converged);
  EXPECT_NEAR(std::abs(n1.value(0, 0) - 2.0), 0.0, 1e-11);
  Rng rng(27);
  auto a = rng.hermitian(6);
  a *= 1.0 / operator_norm(a);
  const auto n3 = neumann_resolvent(a, 3.0);
  ASSERT_TRUE(n3.converged);
  EXPECT_LT(max_abs_diff(n3.value, Complex(-1.0) * resolvent(a, 3.0)), 1e-8);
  EXPECT_FALSE(neumann_resolvent(a, 0.5, 500).converged);
}

TEST(Gelfand, Examples) {
  const auto j = spectral_radius_gelfand(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}), 4);
  ASSERT_EQ(j.size(), 5u);
  EXPECT_EQ(j[0], 1.0);
  for (std::size_t k = 1; k < j.size(); ++k) EXPECT_EQ(j[k], 0.0);
  const auto u = spectral_radius_gelfand(ComplexMatrix::from_rows({{1.0, 10.0}, {0.0, 1.0}}), 30);
  for (std::size_t k = 1; k < u.size(); ++k) EXPECT_LE(u[k], u[k - 1]);
  EXPECT_NEAR(u.back(), 1.0, 1e-6);
  Rng rng(28);
  for (int t = 0; t < 20; ++t) {
    const auto a = rng.hermitian(8);
    EXPECT_NEAR(spectral_radius_gelfand(a, 20).back(), oracle::hermitian_eigenvalues(a).cwiseAbs().maxCoeff(), 1e-6);
  }
  // Huge entries must not overflow.
  auto big = rng.hermitian(4);
  big *= 1e150;
  EXPECT_TRUE(std::isfinite(spectral_radius_gelfand(big, 20).back()));
}

TEST(Hausdorff, Examples) {
  Rng rng(29);
  const auto a = rng.hermitian(5);
  EXPECT_EQ(hausdorff_distance_spectra(a, a), 0.0);
  EXPECT_NEAR(hausdorff_distance_spectra(a, a + Complex(-0.75) * ComplexMatrix::identity(5)), 0.75, 1e-12);
  const std::vector<double> s{0.0, 1.0}, t{0.0, 3.0, 1.0};
  EXPECT_EQ(hausdorff_distance(s, t), 2.0);
  EXPECT_THROW(hausdorff_distance_spectra(ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}), a), PreconditionError);
}

TEST(Hausdorff, LipschitzProperty) {
  Rng rng(30);
  for (int t = 0; t < 300; ++t) {
    const auto a = rng.hermitian(5);
    const auto b = rng.hermitian(5);
    EXPECT_LE(hausdorff_distance_spectra(a, b), oracle::spectral_norm(a - b) + 1e-10);
  }
}

TEST(Cayley, Examples) {
  EXPECT_LT(max_abs_diff(cayley(ComplexMatrix::zeros(2, 2)), Complex(-1) * ComplexMatrix::identity(2)), 1e-15);
  EXPECT_NEAR(std::abs(cayley(ComplexMatrix::from_rows({{1.0}}))(0, 0) - Complex(0, -1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(cayley_map(1.0) - Complex(0, -1)), 0.0, 1e-15);
}

TEST(Cayley, UnitaryWithMappedSpectrum) {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const auto a = rng.hermitian(6);
    const auto u = cayley(a);
    EXPECT_LT(oracle::spectral_norm(u.adjoint() * u - ComplexMatrix::identity(6)), 1e-10);
    auto got = normal_eigenvalues(u);
    for (double l : oracle::hermitian_eigenvalues(a)) {
      const Complex w = cayley_map(l);
      auto it = std::min_element(got.begin(), got.end(),
                                 [w](Complex p, Complex q) { return std::abs(p - w) < std::abs(q - w); });
      EXPECT_LT(std::abs(*it - w), 1e-10);
      got.erase(it);
    }
  }
}

TEST(Evolve, GroupLawAndGenerator) {
  Rng rng(32);
  for (int t = 0; t < 30; ++t) {
    const auto a = rng.hermitian(5);
    EXPECT_LT(max_abs_diff(evolve(a, 0.0), ComplexMatrix::identity(5)), 1e-14);
    const double s = rng.uniform(-2, 2), r = rng.uniform(-2, 2);
    EXPECT_LT(oracle::spectral_norm(evolve(a, s + r) - evolve(a, s) * evolve(a, r)), 1e-10);
    const double h = 1e-4;
    ComplexMatrix d = evolve(a, h) - ComplexMatrix::identity(5);
    d *= 1.0 / h;
    const double na = oracle::spectral_norm(a);
    EXPECT_LE(oracle::spectral_norm(d - kIm * a), na * na * h);
  }
}

TEST(Uncertainty, ExamplesAndPrecondition) {
  const auto sx = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  const auto sy = ComplexMatrix::from_rows({{0.0, -kIm}, {kIm, 0.0}});
  const CVector up{1.0, 0.0};
  const auto p = uncertainty(sx, sy, up);
  EXPECT_NEAR(p.lhs, 1.0, 1e-12);
  EXPECT_NEAR(p.rhs, 1.0, 1e-12);
  EXPECT_EQ(uncertainty(sx, sx, up).lhs, 0.0);
  const CVector longer{1.0, 1.0};
  EXPECT_THROW(uncertainty(sx, sy, longer), PreconditionError);
}

TEST(Uncertainty, InequalitiesOnRandomTriples) {
  Rng rng(33);
  for (int t = 0; t < 500; ++t) {
    const auto r = uncertainty(rng.hermitian(4), rng.hermitian(4), rng.unit_vector(4));
    EXPECT_GE(r.rhs - r.lhs, -1e-10);
    EXPECT_GE(r.rhs - r.robertson_lhs, -1e-10);
    EXPECT_LE(r.lhs, r.robertson_lhs + 1e-12);
  }
}

TEST(Compatibility, DiagonalAndPolynomialPairs) {
  const auto c = commuting_diagonalization(diag({1, 2, 3}), diag({5, 4, 4}));
  ASSERT_TRUE(c.compatible());
  EXPECT_LT(max_abs_diff(c.joint->basis * c.joint->basis.adjoint(), ComplexMatrix::identity(3)), 1e-14);
  Rng rng(34);
  for (int t = 0; t < 30; ++t) {
    const auto a = with_spectrum(rng, {1.0, 1.0, -1.0, -1.0, 2.0});
    auto b = a * a;
    b = Complex(0.5) * (b + b.adjoint());
    const auto j = commuting_diagonalization(a, b);
    ASSERT_TRUE(j.compatible());
    const auto& v = j.joint->basis;
    const auto va = ComplexMatrix::diagonal(std::span<const double>(j.joint->a_values));
    const auto vb = ComplexMatrix::diagonal(std::span<const double>(j.joint->b_values));
    EXPECT_LT(max_abs_diff(a * v, v * va), 1e-10);
    EXPECT_LT(max_abs_diff(b * v, v * vb), 1e-10);
  }
}

TEST(Compatibility, PauliPairIncompatible) {
  const auto sx = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  const auto sy = ComplexMatrix::from_rows({{0.0, -kIm}, {kIm, 0.0}});
  const auto c = commuting_diagonalization(sx, sy);
  EXPECT_FALSE(c.compatible());
  EXPECT_NEAR(c.commutator_norm, 2.0, 1e-12);
}

TEST(NormalEigenvalues, RandomUnitary) {
  Rng rng(35);
  const auto u = rng.unitary(6);
  const auto ev = normal_eigenvalues(u);
  const auto ref = oracle::eigenvalues(u);
  std::vector<Complex> left(ref.begin(), ref.end());
  for (const auto& l : ev) {
    EXPECT_NEAR(std::abs(l), 1.0, 1e-10);
    auto it = std::min_element(left.begin(), left.end(),
                               [l](Complex p, Complex q) { return std::abs(p - l) < std::abs(q - l); });
    EXPECT_LT(std::abs(*it - l), 1e-9);
    left.erase(it);
  }
  EXPECT_THROW(normal_eigenvalues(ComplexMatrix::from_rows({{1.0, 1.0}, {0.0, 1.0}})), PreconditionError);
}
