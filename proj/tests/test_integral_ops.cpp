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
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "oplab/config.hpp"
#include "oplab/errors.hpp"
#include "oplab/integral_ops.hpp"
#include "oplab/quadrature.hpp"
#include "oplab/random.hpp"
#include "oplab/sturm_liouville.hpp"
#include "oracle.hpp"

using namespace oplab;

namespace {

constexpr double kPi = std::numbers::pi;

SturmLiouvilleProblem dirichlet_problem(double b, double q) {
  return {0.0, b, [q](double) { return q; }, BoundaryCondition::dirichlet(), BoundaryCondition::dirichlet()};
}

}  // namespace

TEST(Quadrature, GaussLegendreExactness) {
  const auto g = gauss_legendre(8);
  for (int p = 0; p <= 15; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], p);
    EXPECT_NEAR(s, p % 2 ? 0.0 : 2.0 / (p + 1), 1e-14) << p;
  }
  const auto c = gauss_grid(0.0, 2.0, 400);
  EXPECT_NO_THROW(validate(c));
  EXPECT_THROW(gauss_grid(0.0, 1.0, 12), DomainError);
}

TEST(Nystrom, TrivialKernels) {
  const auto grid = gauss_grid(0.0, 1.0, 64);
  const auto zero = nystrom([](double, double) { return Complex(0.0); }, grid);
  EXPECT_EQ(max_abs(zero.matrix()), 0.0);
  const auto one = nystrom([](double, double) { return Complex(1.0); }, grid);
  const auto tf = one.apply(CVector(64, 1.0));
  for (const auto& v : tf) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-13);
  EXPECT_NEAR(hs_norm(one), 1.0, 1e-13);
}

TEST(Nystrom, NonFiniteSampleNamesIndices) {
  const auto grid = gauss_grid(0.0, 1.0, 8);
  try {
    nystrom([](double x, double y) { return Complex(1.0 / (x - y)); }, grid);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("(0, 0)"), std::string::npos) << e.what();
  }
}

TEST(Nystrom, HermitianKernelGivesHermitianMatrix) {
  auto k = [](double x, double y) { return std::polar(std::exp(-std::abs(x - y)), x - y); };
  const auto t = nystrom(k, gauss_grid(-1.0, 2.0, 80));
  EXPECT_LT(hermitian_defect(t.symmetrized()), 1e-14);
}

TEST(Nystrom, EigenvaluesConvergeUnderRefinement) {
  // Smooth kernel exp(xy) on [0, 1]; compare n, 2n against a fine reference.
  auto k = [](double x, double y) { return Complex(std::exp(x * y)); };
  const auto ref = oracle::hermitian_eigenvalues(nystrom(k, gauss_grid(0, 1, 64)).symmetrized());
  const auto e8 = oracle::hermitian_eigenvalues(nystrom(k, gauss_grid(0, 1, 8)).symmetrized());
  const double top = ref(ref.size() - 1);
  EXPECT_NEAR(e8(e8.size() - 1), top, 1e-12 * top);
  // A kernel with a kink: min(x, y). Errors shrink at least quadratically.
  auto kink = [](double x, double y) { return Complex(std::min(x, y)); };
  const double exact = 4.0 / (kPi * kPi);
  std::vector<double> err;
  for (std::size_t n : {16, 32, 64}) {
    const auto ev = oracle::hermitian_eigenvalues(nystrom(kink, gauss_grid(0, 1, n)).symmetrized());
    err.push_back(std::abs(ev(ev.size() - 1) - exact));
  }
  EXPECT_GE(std::log2(err[0] / err[1]), 2.0);
  EXPECT_GE(std::log2(err[1] / err[2]), 2.0);
}

TEST(HilbertSchmidt, InvarianceAndDomination) {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const auto a = rng.gaussian_matrix(6, 6);
    const auto u = rng.unitary(6);
    EXPECT_NEAR(hs_norm(u.adjoint() * a * u), hs_norm(a), 1e-10 * hs_norm(a));
    EXPECT_LE(operator_norm(a), hs_norm(a));
  }
}

TEST(Trace, Examples) {
  Rng rng(42);
  const auto x = rng.unit_vector(5);
  EXPECT_NEAR(std::abs(trace(ComplexMatrix::outer(x, x)) - 1.0), 0.0, 1e-14);
  const auto h = rng.hermitian(7);
  EXPECT_NEAR(trace(h).real(), oracle::hermitian_eigenvalues(h).sum(), 1e-12);
  const auto v = volterra(gauss_grid(0, 1, 400));
  EXPECT_NEAR(trace(v.vstar_v).real(), 0.5, 1e-12);
}

TEST(Volterra, ActionAndSpectrum) {
  const auto grid = gauss_grid(0, 1, 400);
  const auto v = volterra(grid);
  const auto vf = v.v.apply(CVector(400, 1.0));
  double worst = 0.0;
  for (std::size_t i = 0; i < 400; ++i) worst = std::max(worst, std::abs(vf[i] - grid.nodes[i]));
  // The discontinuous kernel is integrated to within one half-weight.
  EXPECT_LT(worst, 0.5 * *std::max_element(grid.weights.begin(), grid.weights.end()) + 1e-12);

  const auto mu = oracle::hermitian_eigenvalues(v.vstar_v.symmetrized());
  for (int k = 1; k <= 5; ++k) {
    const double exact = 4.0 / ((2.0 * k - 1) * (2.0 * k - 1) * kPi * kPi);
    EXPECT_NEAR(mu(mu.size() - k), exact, 1e-3 * exact);
  }
  EXPECT_LT(mu(mu.size() - 20), 0.05 * mu(mu.size() - 1));
  EXPECT_LE(oracle::eigenvalues(v.v.matrix()).cwiseAbs().maxCoeff(), 0.05);
  EXPECT_THROW(volterra(gauss_grid(0, 2, 16)), DomainError);
}

TEST(SturmLiouville, HomogeneousSolutionsByHand) {
  const auto s = sl_homogeneous_solutions(dirichlet_problem(1.0, 0.0));
  for (double x : {0.0, 0.3, 0.77, 1.0}) {
    EXPECT_NEAR(s.v(x), x, 1e-8);
    EXPECT_NEAR(s.u(x), 1 - x, 1e-8);
  }
  EXPECT_NEAR(s.wronskian(), 1.0, 1e-8);
  EXPECT_LE(s.wronskian_drift(), 1e-8);
  const auto g = sl_green(s);
  EXPECT_NEAR(g(0.7, 0.2), 0.2 * 0.3, 1e-8);
  EXPECT_NEAR(g(0.2, 0.7), 0.2 * 0.3, 1e-8);
}

TEST(SturmLiouville, WronskianDriftForVariablePotential) {
  SturmLiouvilleProblem p{0.0, 2.0, [](double x) { return 1.0 + x * x; }, {1.0, 0.5}, {2.0, -1.0}};
  const auto s = sl_homogeneous_solutions(p);
  EXPECT_LE(s.wronskian_drift(), 1e-8);
  const auto g = sl_green(s);
  double asym = 0.0;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) asym = std::max(asym, std::abs(g(0.1 * i, 0.1 * j) - g(0.1 * j, 0.1 * i)));
  EXPECT_LE(asym, 1e-10);
  // Left boundary condition in the first argument: c0 G(a, t) + c1 dG/dx(a, t) = 0.
  const double h = 1e-6;
  for (double t : {0.5, 1.3}) {
    const double gx = (g(h, t) - g(0.0, t)) / h;
    EXPECT_NEAR(1.0 * g(0.0, t) + 0.5 * gx, 0.0, 1e-5);
  }
}

TEST(SturmLiouville, NonInjectiveProblemRejected) {
  // -y'' - y = 0 has the solution sin x vanishing at 0 and pi.
  EXPECT_THROW(sl_homogeneous_solutions(dirichlet_problem(kPi, -1.0)), NonInjectiveError);
  EXPECT_NE(sl_shift(dirichlet_problem(kPi, -1.0)), 0.0);
  EXPECT_EQ(sl_shift(dirichlet_problem(1.0, 0.0)), 0.0);
}

TEST(SturmLiouville, DirichletEigenvalues) {
  const auto s = sl_eigensolve(dirichlet_problem(kPi, 0.0), 400, 5);
  ASSERT_EQ(s.modes.size(), 5u);
  for (std::size_t k = 0; k < 5; ++k) {
    const double exact = static_cast<double>((k + 1) * (k + 1));
    EXPECT_NEAR(s.modes[k].eigenvalue, exact, 0.005 * exact);
    EXPECT_LT(s.modes[k].residual, 1e-3);
    // Eigenfunction proportional to sin((k + 1) x), normalised in L^2.
    double dot = 0.0;
    for (std::size_t l = 0; l < s.grid.size(); ++l)
      dot += s.grid.weights[l] * s.modes[k].samples[l] * std::sin((k + 1) * s.grid.nodes[l]);
    EXPECT_NEAR(std::abs(dot), std::sqrt(kPi / 2), 1e-6);
  }
  EXPECT_GE(s.modes[4].eigenvalue / s.modes[0].eigenvalue, 20.0);
  EXPECT_FALSE(s.warning.has_value());
  const auto fine = sl_eigensolve(dirichlet_problem(kPi, 0.0), 800, 5);
  for (std::size_t k = 0; k < 5; ++k)
    EXPECT_NEAR(fine.modes[k].eigenvalue, s.modes[k].eigenvalue, 1e-3 * s.modes[k].eigenvalue);
}

TEST(SturmLiouville, PotentialShiftsSpectrum) {
  const auto s = sl_eigensolve(dirichlet_problem(kPi, 1.0), 400, 5);
  for (std::size_t k = 0; k < 5; ++k) {
    const double exact = static_cast<double>((k + 1) * (k + 1)) + 1.0;
    EXPECT_NEAR(s.modes[k].eigenvalue, exact, 0.005 * exact);
  }
}

TEST(SturmLiouville, ShiftedProblemTranslatesSpectrum) {
  const auto p = dirichlet_problem(kPi, -1.0);
  const auto s = sl_eigensolve(p, 400, 5);
  EXPECT_NE(s.shift, 0.0);
  EXPECT_NEAR(s.modes[0].eigenvalue, 0.0, 1e-4);
  for (std::size_t k = 1; k < 5; ++k) {
    const double exact = static_cast<double>((k + 1) * (k + 1)) - 1.0;
    EXPECT_NEAR(s.modes[k].eigenvalue, exact, 0.005 * exact);
  }
  const auto moved = sl_eigensolve(p.shifted(2.5), 400, 5);
  // Modes are ordered by |lambda|, which the shift reorders; compare by value.
  std::vector<double> a, b;
  for (std::size_t k = 0; k < 5; ++k) {
    a.push_back(s.modes[k].eigenvalue);
    b.push_back(moved.modes[k].eigenvalue + 2.5);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(b[k], a[k], 1e-4 * std::max(1.0, std::abs(a[k])));
}

TEST(SturmLiouville, GreenOperatorIsHilbertSchmidt) {
  const auto s = sl_homogeneous_solutions(dirichlet_problem(kPi, 0.5));
  const auto g = sl_green(s);
  const auto t = nystrom([&g](double x, double y) { return Complex(g(x, y)); }, gauss_grid(0, kPi, 400));
  const auto mu = oracle::hermitian_eigenvalues(t.symmetrized());
  EXPECT_LE(mu.squaredNorm(), hs_norm(t) * hs_norm(t) * (1 + 1e-12));
  Eigen::VectorXd mags = mu.cwiseAbs();
  std::sort(mags.data(), mags.data() + mags.size(), std::greater<>());
  EXPECT_LT(mags(19), 0.05 * mags(0));
}

TEST(SturmLiouville, OutputFormats) {
  const auto s = sl_eigensolve(dirichlet_problem(kPi, 0.0), 80, 3);
  std::ostringstream csv;
  s.write_csv(csv);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "k,lambda,residual");
  EXPECT_EQ(s.to_json()["modes"].size(), 3u);
}

TEST(SturmLiouville, ConfigParsing) {
  const auto c = Config::parse("a = 0\nb = 1\nq = poly\nq_coeffs = 1, 0, 2\n");
  const auto p = sl_problem_from_config(c);
  EXPECT_EQ(p.b, 1.0);
  EXPECT_EQ(p.q(0.5), 1.5);
  EXPECT_THROW(sl_problem_from_config(Config::parse("q = cubic\n")), UsageError);
  EXPECT_THROW(sl_problem_from_config(Config::parse("a = 2\nb = 1\n")), DomainError);
}

TEST(Rayleigh, DiagonalAndRandom) {
  const std::vector<double> d{3.0, 1.0, 2.0};
  const auto r = rayleigh_refine(ComplexMatrix::diagonal(std::span<const double>(d)), 3);
  EXPECT_NEAR(r.values[0], 1.0, 1e-12);
  EXPECT_NEAR(r.values[1], 2.0, 1e-12);
  EXPECT_NEAR(r.values[2], 3.0, 1e-12);
  EXPECT_NEAR(std::abs(r.minimizers[0][1]), 1.0, 1e-10);
  Rng rng(43);
  for (int t = 0; t < 10; ++t) {
    const auto g = rng.gaussian_matrix(8, 8);
    const auto b = g.adjoint() * g;
    const auto rr = rayleigh_refine(b, 8);
    const auto ref = oracle::hermitian_eigenvalues(b);
    for (std::size_t i = 0; i < 8; ++i) {
      EXPECT_NEAR(rr.values[i], ref(i), 1e-8 * (1 + ref(7)));
      if (i) EXPECT_LE(rr.values[i - 1], rr.values[i]);
      for (std::size_t j = 0; j < i; ++j) EXPECT_LT(std::abs(inner_product(rr.minimizers[i], rr.minimizers[j])), 1e-8);
    }
  }
  const std::vector<double> neg{1.0, -1.0};
  EXPECT_THROW(rayleigh_refine(ComplexMatrix::diagonal(std::span<const double>(neg)), 1), PreconditionError);
}
