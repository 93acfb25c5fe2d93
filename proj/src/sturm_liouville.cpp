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

#include "oplab/sturm_liouville.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "oplab/errors.hpp"
#include "oplab/kernels.hpp"

namespace oplab {

namespace {

struct State {
  double y;
  double dy;
};

// One RK4 step of y'' = q y.
State rk4(const std::function<double(double)>& q, double x, State s, double h) {
  auto f = [&](double t, State v) { return State{v.dy, q(t) * v.y}; };
  const State k1 = f(x, s);
  const State k2 = f(x + 0.5 * h, {s.y + 0.5 * h * k1.y, s.dy + 0.5 * h * k1.dy});
  const State k3 = f(x + 0.5 * h, {s.y + 0.5 * h * k2.y, s.dy + 0.5 * h * k2.dy});
  const State k4 = f(x + h, {s.y + h * k3.y, s.dy + h * k3.dy});
  return {s.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
          s.dy + h / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy)};
}

struct Solve {
  QuadratureGrid grid;
  HermitianEigensystem eig;
  // Indices into eig ordered by |lambda| of the unshifted problem.
  std::vector<std::size_t> order;
  std::vector<double> lambdas;
};

Solve solve_on(const std::function<double(double, double)>& g, double a, double b, std::size_t n, double shift) {
  Solve s;
  s.grid = gauss_grid(a, b, n);
  const auto op = nystrom([&g](double x, double t) { return Complex(g(x, t)); }, s.grid);
  s.eig = hermitian_eigensystem(op.symmetrized());
  for (std::size_t i = 0; i < n; ++i) {
    if (s.eig.values[i] != 0.0) s.order.push_back(i);
  }
  auto lambda = [&](std::size_t i) { return 1.0 / s.eig.values[i] + shift; };
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](std::size_t x, std::size_t y) { return std::abs(lambda(x)) < std::abs(lambda(y)); });
  for (std::size_t i : s.order) s.lambdas.push_back(lambda(i));
  return s;
}

double polynomial(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
  return s;
}

}  // namespace

void SturmLiouvilleProblem::validate() const {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError(fmt::format("Sturm-Liouville interval [{}, {}] is empty", a, b));
  }
  if (!q) throw DomainError("Sturm-Liouville potential is not set");
  if (left.c0 == 0.0 && left.c1 == 0.0) throw DomainError("left boundary condition is degenerate");
  if (right.c0 == 0.0 && right.c1 == 0.0) throw DomainError("right boundary condition is degenerate");
}

SturmLiouvilleProblem SturmLiouvilleProblem::shifted(double mu) const {
  SturmLiouvilleProblem p = *this;
  if (mu != 0.0) {
    auto base = q;
    p.q = [base, mu](double x) { return base(x) - mu; };
  }
  return p;
}

HomogeneousSolutions::HomogeneousSolutions(double a, double h, std::vector<double> u, std::vector<double> du,
                                           std::vector<double> v, std::vector<double> dv)
    : a_(a), h_(h), u_(std::move(u)), du_(std::move(du)), v_(std::move(v)), dv_(std::move(dv)) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < u_.size(); ++i) {
    const double w = u_[i] * dv_[i] - du_[i] * v_[i];
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  w_ = u_[0] * dv_[0] - du_[0] * v_[0];
  drift_ = hi - lo;
}

double HomogeneousSolutions::eval(const std::vector<double>& y, const std::vector<double>& dy, double x,
                                  bool derivative) const {
  const std::size_t last = y.size() - 1;
  double s = (x - a_) / h_;
  s = std::clamp(s, 0.0, static_cast<double>(last));
  const auto i = std::min(static_cast<std::size_t>(s), last - 1);
  const double t = s - static_cast<double>(i);
  const double y0 = y[i], y1 = y[i + 1];
  const double m0 = h_ * dy[i], m1 = h_ * dy[i + 1];
  if (!derivative) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
  }
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * m0 + (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * m1) / h_;
}

double HomogeneousSolutions::u(double x) const { return eval(u_, du_, x, false); }
double HomogeneousSolutions::du(double x) const { return eval(u_, du_, x, true); }
double HomogeneousSolutions::v(double x) const { return eval(v_, dv_, x, false); }
double HomogeneousSolutions::dv(double x) const { return eval(v_, dv_, x, true); }

double HomogeneousSolutions::max_abs_u() const {
  double m = 0.0;
  for (double x : u_) m = std::max(m, std::abs(x));
  return m;
}

double HomogeneousSolutions::max_abs_v() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

HomogeneousSolutions sl_homogeneous_solutions(const SturmLiouvilleProblem& p, std::size_t steps) {
  p.validate();
  if (steps < 2) throw DomainError("sl_homogeneous_solutions: need at least two steps");
  const double h = (p.b - p.a) / static_cast<double>(steps);
  const std::size_t n = steps + 1;
  std::vector<double> u(n), du(n), v(n), dv(n);
  auto mesh = [&](std::size_t i) { return i == steps ? p.b : p.a + h * static_cast<double>(i); };

  // alpha0 v(a) + alpha1 v'(a) = 0
  State s{-p.left.c1, p.left.c0};
  v[0] = s.y;
  dv[0] = s.dy;
  for (std::size_t i = 0; i < steps; ++i) {
    s = rk4(p.q, mesh(i), s, h);
    v[i + 1] = s.y;
    dv[i + 1] = s.dy;
  }
  // beta0 u(b) + beta1 u'(b) = 0
  s = {p.right.c1, -p.right.c0};
  u[steps] = s.y;
  du[steps] = s.dy;
  for (std::size_t i = steps; i > 0; --i) {
    s = rk4(p.q, mesh(i), s, -h);
    u[i - 1] = s.y;
    du[i - 1] = s.dy;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(v[i])) {
      throw EvaluationError(fmt::format("homogeneous solution not finite at x = {}", mesh(i)));
    }
  }
  HomogeneousSolutions sol(p.a, h, std::move(u), std::move(du), std::move(v), std::move(dv));
  const double tau = 1e-6 * (1.0 + sol.max_abs_u() * sol.max_abs_v());
  if (std::abs(sol.wronskian()) <= tau) {
    throw NonInjectiveError(fmt::format(
        "Wronskian {:.3e} is below {:.3e}: 0 is an eigenvalue, use sl_shift", sol.wronskian(), tau));
  }
  return sol;
}

std::function<double(double, double)> sl_green(const HomogeneousSolutions& s) {
  const double w = s.wronskian();
  return [s, w](double x, double t) {
    return t <= x ? s.u(x) * s.v(t) / w : s.u(t) * s.v(x) / w;
  };
}

double sl_shift(const SturmLiouvilleProblem& p) {
  p.validate();
  for (int k = 0; k <= 64; ++k) {
    for (int sign : {1, -1}) {
      if (k == 0 && sign < 0) continue;
      const double mu = sign * static_cast<double>(k);
      try {
        sl_homogeneous_solutions(p.shifted(mu));
        return mu;
      } catch (const NonInjectiveError&) {
      }
    }
  }
  throw ShiftNotFoundError("sl_shift: no injective shift in the ladder 0, +-1, ..., +-64");
}

SturmLiouvilleSpectrum sl_eigensolve(const SturmLiouvilleProblem& p, std::size_t n_nodes, std::size_t k_wanted) {
  p.validate();
  if (k_wanted == 0 || k_wanted > n_nodes) throw DomainError("sl_eigensolve: mode count out of range");
  SturmLiouvilleSpectrum out;
  out.shift = sl_shift(p);
  const auto sols = sl_homogeneous_solutions(p.shifted(out.shift));
  const auto g = sl_green(sols);

  const Solve fine = solve_on(g, p.a, p.b, n_nodes, out.shift);
  if (fine.order.size() < k_wanted) throw ConvergenceError("sl_eigensolve: fewer nonzero modes than requested");
  out.grid = fine.grid;

  // Residual probe: Nystrom interpolants evaluated on a grid twice as fine.
  const auto probe = gauss_grid(p.a, p.b, 2 * n_nodes);
  ComplexMatrix g_probe_nodes(probe.size(), n_nodes);
  ComplexMatrix g_probe(probe.size(), probe.size());
  const kernels::PointKernel gk = [&g](double x, double t) { return Complex(g(x, t)); };
  kernels::parallel::sample_kernel(gk, probe.nodes, fine.grid.nodes, g_probe_nodes);
  kernels::parallel::sample_kernel(gk, probe.nodes, probe.nodes, g_probe);

  for (std::size_t k = 0; k < k_wanted; ++k) {
    const std::size_t idx = fine.order[k];
    SturmLiouvilleMode mode;
    mode.eigenvalue = fine.lambdas[k];
    const double inv_m = 1.0 / fine.eig.values[idx];

    // Nodal values y_i = z_i / sqrt(w_i), rotated so the largest is positive.
    CVector z = fine.eig.vectors.column(idx);
    std::size_t big = 0;
    for (std::size_t i = 0; i < n_nodes; ++i) {
      if (std::abs(z[i]) > std::abs(z[big])) big = i;
    }
    const Complex phase = std::abs(z[big]) / z[big];
    mode.samples.resize(n_nodes);
    std::vector<Complex> wy(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
      mode.samples[i] = (phase * z[i]).real() / std::sqrt(fine.grid.weights[i]);
      wy[i] = fine.grid.weights[i] * mode.samples[i];
    }

    const CVector interp = inv_m * (g_probe_nodes * std::span<const Complex>(wy));
    CVector winterp(probe.size());
    for (std::size_t i = 0; i < probe.size(); ++i) winterp[i] = probe.weights[i] * interp[i];
    const CVector image = inv_m * (g_probe * std::span<const Complex>(winterp));
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i) {
      num += probe.weights[i] * std::norm(interp[i] - image[i]);
      den += probe.weights[i] * std::norm(interp[i]);
    }
    mode.residual = den > 0.0 ? std::sqrt(num / den) : 0.0;
    out.modes.push_back(std::move(mode));
  }

  const std::size_t coarse_n = std::max<std::size_t>(8, (n_nodes / 2) / 8 * 8);
  if (coarse_n < n_nodes) {
    const Solve coarse = solve_on(g, p.a, p.b, coarse_n, out.shift);
    const std::size_t m = std::min(k_wanted, coarse.lambdas.size());
    for (std::size_t k = 0; k < m; ++k) {
      const double l = fine.lambdas[k];
      out.refinement_drift =
          std::max(out.refinement_drift, std::abs(l - coarse.lambdas[k]) / std::max(std::abs(l), 1.0));
    }
    if (m < k_wanted) out.refinement_drift = std::numeric_limits<double>::infinity();
    if (out.refinement_drift > 0.01) {
      out.warning = fmt::format("eigenvalues moved by {:.3g} relative between {} and {} nodes; refine the grid",
                                out.refinement_drift, coarse_n, n_nodes);
    }
  }
  return out;
}

nlohmann::json SturmLiouvilleSpectrum::to_json() const {
  nlohmann::json j;
  j["shift"] = shift;
  j["nodes"] = grid.nodes;
  j["weights"] = grid.weights;
  j["refinement_drift"] = refinement_drift;
  j["warning"] = warning ? nlohmann::json(*warning) : nlohmann::json(nullptr);
  auto arr = nlohmann::json::array();
  for (std::size_t k = 0; k < modes.size(); ++k) {
    arr.push_back({{"k", k + 1},
                   {"lambda", modes[k].eigenvalue},
                   {"residual", modes[k].residual},
                   {"samples", modes[k].samples}});
  }
  j["modes"] = arr;
  return j;
}

void SturmLiouvilleSpectrum::write_csv(std::ostream& out) const {
  out << "k,lambda,residual\n";
  for (std::size_t k = 0; k < modes.size(); ++k) {
    out << fmt::format("{},{:.17g},{:.17g}\n", k + 1, modes[k].eigenvalue, modes[k].residual);
  }
}

SturmLiouvilleProblem sl_problem_from_config(const Config& c) {
  SturmLiouvilleProblem p;
  p.a = c.get_double("a", 0.0);
  p.b = c.get_double("b", std::numbers::pi);
  const auto q = c.get_string("q", "zero");
  if (q == "zero") {
    p.q = [](double) { return 0.0; };
  } else if (q == "one") {
    p.q = [](double) { return 1.0; };
  } else if (q == "minus_one") {
    p.q = [](double) { return -1.0; };
  } else if (q == "poly") {
    const auto coeffs = c.get_doubles("q_coeffs", {0.0});
    p.q = [coeffs](double x) { return polynomial(coeffs, x); };
  } else {
    throw UsageError(fmt::format("unknown potential '{}' (expected zero, one, minus_one or poly)", q));
  }
  p.left = {c.get_double("alpha0", 1.0), c.get_double("alpha1", 0.0)};
  p.right = {c.get_double("beta0", 1.0), c.get_double("beta1", 0.0)};
  p.validate();
  return p;
}

}  // namespace oplab
