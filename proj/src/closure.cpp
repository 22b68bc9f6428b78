// Copyright 2026 The semiquant Authors
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
#include <random>
#include <string>

#include <Eigen/Dense>

#include "semiquant/error.hpp"
#include "semiquant/models.hpp"

namespace semiquant::models {

namespace {

double lookup_single(const MomentTable& m, const std::string& a) {
  auto it = m.singles.find(a);
  if (it == m.singles.end()) fail(ErrorKind::invalid_argument, "cumulant_decouple: missing moment <" + a + ">");
  return it->second;
}

double lookup_pair(const MomentTable& m, const std::string& a, const std::string& b) {
  auto it = m.pairs.find({a, b});
  if (it == m.pairs.end())
    fail(ErrorKind::invalid_argument, "cumulant_decouple: missing moment <" + a + " " + b + ">");
  return it->second;
}

double angular_budget(double n) { return 0.5 * n * (0.5 * n + 1.0); }

void require_excitations(double n, double min, const char* who) {
  if (!(n >= min) || !std::isfinite(n))
    fail(ErrorKind::invalid_argument, std::string(who) + ": N must be >= " + std::to_string(static_cast<int>(min)));
}

// Unknowns u = [lx, ly, lz, lx2, ly2, lz2, pxy] with pxy = <lx ly>.
using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

Vec7 closure_equations(const Vec7& u, double budget) {
  const double lx = u[0], ly = u[1], lz = u[2], lx2 = u[3], ly2 = u[4], lz2 = u[5], pxy = u[6];
  Vec7 f;
  f[0] = lz;
  f[1] = pxy + ly / 4.0;
  f[2] = ly2 - lx / 2.0;
  f[3] = lx2 - lz2;
  f[4] = 4.0 * (2.0 * ly * pxy + lx * ly2 - 2.0 * lx * ly * ly) + (ly2 - lx2);
  f[5] = 8.0 * (3.0 * ly2 * ly - 2.0 * ly * ly * ly) - 8.0 * (2.0 * pxy * lx + ly * lx2 - 2.0 * ly * lx * lx) -
         10.0 * pxy - ly;
  f[6] = lx2 + ly2 + lz2 - budget;
  return f;
}

Mat7 closure_jacobian(const Vec7& u) {
  const double lx = u[0], ly = u[1], lx2 = u[3], ly2 = u[4], pxy = u[6];
  Mat7 j = Mat7::Zero();
  j(0, 2) = 1.0;
  j(1, 1) = 0.25;
  j(1, 6) = 1.0;
  j(2, 4) = 1.0;
  j(2, 0) = -0.5;
  j(3, 3) = 1.0;
  j(3, 5) = -1.0;
  j(4, 0) = 4.0 * (ly2 - 2.0 * ly * ly);
  j(4, 1) = 4.0 * (2.0 * pxy - 4.0 * lx * ly);
  j(4, 4) = 4.0 * lx + 1.0;
  j(4, 3) = -1.0;
  j(4, 6) = 8.0 * ly;
  j(5, 1) = 8.0 * (3.0 * ly2 - 6.0 * ly * ly) - 8.0 * (lx2 - 2.0 * lx * lx) - 1.0;
  j(5, 4) = 24.0 * ly;
  j(5, 0) = -8.0 * (2.0 * pxy - 4.0 * ly * lx);
  j(5, 3) = -8.0 * ly;
  j(5, 6) = -16.0 * lx - 10.0;
  j(6, 3) = 1.0;
  j(6, 4) = 1.0;
  j(6, 5) = 1.0;
  return j;
}

}  // namespace

double cumulant_decouple(const MomentTable& m, const std::array<std::string, 3>& labels) {
  const auto& [a, b, c] = labels;
  const double ma = lookup_single(m, a), mb = lookup_single(m, b), mc = lookup_single(m, c);
  return lookup_pair(m, a, b) * mc + ma * lookup_pair(m, b, c) + lookup_pair(m, a, c) * mb - 2.0 * ma * mb * mc;
}

double ly2_analytic(double n) {
  if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorKind::invalid_argument, "ly2_analytic: N must be > 0");
  // positive root of 8x^2 + 3x/2 - c = 0, written without cancellation
  const double c = n * n / 8.0 + n / 4.0;
  return 2.0 * c / (1.5 + 2.0 * std::sqrt(n * n + 2.0 * n + 9.0 / 16.0));
}

double closure_quadratic_residual(double n, double x) {
  const double c = n * n / 8.0 + n / 4.0;
  return std::abs((8.0 * x * x + 1.5 * x) - c) / c;
}

MomentState closure_stationary(double n) {
  require_excitations(n, 2.0, "closure_stationary");
  const double x = ly2_analytic(n);
  MomentState s;
  s.lx = 2.0 * x;
  s.ly = 0.0;
  s.lz = 0.0;
  s.ly2 = x;
  s.lx2 = 0.5 * (angular_budget(n) - x);
  s.lz2 = s.lx2;
  s.sym_xy = 0.0;
  return s;
}

MomentState closure_stationary_newton(double n) {
  require_excitations(n, 2.0, "closure_stationary_newton");
  const double budget = angular_budget(n);
  Vec7 u;
  u << n / 4.0, 0.0, 0.0, budget / 2.0, n / 8.0, budget / 2.0, 0.0;
  Vec7 f = closure_equations(u, budget);
  double norm = f.norm();

  for (int it = 0; it < 200; ++it) {
    const Vec7 step = closure_jacobian(u).fullPivLu().solve(-f);
    if (!step.allFinite()) fail(ErrorKind::numerical, "closure_stationary_newton: singular Jacobian");
    double t = 1.0;
    Vec7 trial = u + step;
    Vec7 ft = closure_equations(trial, budget);
    while (ft.norm() > norm && t > 1e-6) {
      t *= 0.5;
      trial = u + t * step;
      ft = closure_equations(trial, budget);
    }
    const bool small_step = (trial - u).norm() <= 1e-15 * (1.0 + u.norm());
    if (ft.norm() > norm) break;  // no further progress possible
    u = trial;
    f = ft;
    norm = ft.norm();
    if (small_step || norm == 0.0) break;
  }
  if (!(norm <= 1e-10 * budget)) fail(ErrorKind::numerical, "closure_stationary_newton: did not converge");
  if (!(u[4] > 0.0) || !(u[0] > 0.0)) fail(ErrorKind::numerical, "closure_stationary_newton: no positive root");

  MomentState s;
  s.lx = u[0];
  s.ly = u[1];
  s.lz = u[2];
  s.lx2 = u[3];
  s.ly2 = u[4];
  s.lz2 = u[5];
  s.sym_xy = 2.0 * u[6];
  return s;
}

std::vector<ClosureRow> closure_vs_exact_report(const RotatorParams& p, const StationaryOptions& opts) {
  p.validate();
  if (p.spin.twice_l() < 2 || p.spin.twice_l() > 36)
    fail(ErrorKind::invalid_argument, "closure_vs_exact_report: spin l must be in [1, 18]");
  std::vector<ClosureRow> rows;
  for (unsigned twice = 2; twice <= p.spin.twice_l(); ++twice) {
    RotatorParams q = p;
    q.spin = SpinRep::from_twice(twice);
    const LindbladModel model = rotator_spin_model(q);
    const DensityMatrix rho = stationary(model, opts);
    const SpinTriple s = spin_operators(q.spin);

    ClosureRow row;
    row.n_excitations = static_cast<double>(twice);
    row.x_closure = ly2_analytic(row.n_excitations);
    row.x_exact = expectation(rho, s.ly * s.ly).real();
    row.relative_deviation = (row.x_closure - row.x_exact) / row.x_exact;
    row.lz_exact = expectation(rho, s.lz).real();
    row.ly_exact = expectation(rho, s.ly);
    row.stationary_residual = stationary_residual(model, rho);
    rows.push_back(row);
  }
  return rows;
}

std::vector<EquationConformance> moment_equation_conformance(const RotatorParams& p, std::size_t samples,
                                                             std::uint64_t seed, double agree_tol) {
  const LindbladModel model = rotator_spin_model(p);
  const SpinTriple s = spin_operators(p.spin);
  const Complex lam(p.lambda), del(p.delta());

  struct Printed {
    std::string name;
    const OperatorMatrix* op;
    OperatorMatrix rhs;
  };
  std::vector<Printed> eqs;
  eqs.push_back({"d<lx>/dt = -2 lambda <lx> + 4 lambda <ly^2> + delta <ly>", &s.lx,
                 Complex(-2.0) * lam * s.lx + Complex(4.0) * lam * (s.ly * s.ly) + del * s.ly});
  eqs.push_back({"d<ly>/dt = -lambda <ly> - 2 lambda <lx ly + ly lx> - delta <lx>", &s.ly,
                 Complex(-1.0) * lam * s.ly - Complex(2.0) * lam * (s.lx * s.ly + s.ly * s.lx) - del * s.lx});
  eqs.push_back({"d<lz>/dt = -lambda <lz>", &s.lz, Complex(-1.0) * lam * s.lz});

  std::mt19937_64 gen(seed);
  std::vector<DensityMatrix> states;
  states.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) states.push_back(random_density(p.spin, gen));

  std::vector<EquationConformance> out;
  for (const auto& e : eqs) {
    EquationConformance c;
    c.equation = e.name;
    c.operator_discrepancy = (adjoint_generator(*e.op, model) - e.rhs).max_abs();
    for (const auto& rho : states) {
      const Complex exact = adjoint_rate(*e.op, model, rho);
      const Complex printed = expectation(rho, e.rhs);
      c.max_abs_discrepancy = std::max(c.max_abs_discrepancy, std::abs(exact - printed));
    }
    c.agrees = c.max_abs_discrepancy <= agree_tol && c.operator_discrepancy <= agree_tol;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace semiquant::models
