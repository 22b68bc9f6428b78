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
#include <string>

#include <Eigen/Dense>

#include "semiquant/error.hpp"
#include "semiquant/models.hpp"

namespace semiquant::models {

void LimitCycleParams::validate() const {
  if (!std::isfinite(omega)) fail(ErrorKind::invalid_argument, "limit-cycle: omega must be finite");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail(ErrorKind::invalid_argument, "limit-cycle: lambda must be >= 0");
  if (!(mu > 0.0) || !std::isfinite(mu)) fail(ErrorKind::invalid_argument, "limit-cycle: mu must be > 0");
}

FaqSystem limit_cycle_faq(const LimitCycleParams& p) {
  p.validate();
  const Polynomial z = Polynomial::variable(1, 0, Var::z);
  const Polynomial zc = Polynomial::variable(1, 0, Var::zc);
  Polynomial h = Complex(p.omega) * (zc * z);
  std::vector<Polynomial> channels{Complex(std::sqrt(p.lambda)) * zc, Complex(std::sqrt(p.mu)) * (z * z)};
  return FaqSystem(std::move(h), std::move(channels));
}

VectorField limit_cycle_field(const LimitCycleParams& p) {
  return [p](const PhasePoint& pt) {
    const Complex z = pt[0];
    return ComplexVector{Complex(0.0, -p.omega) * z + p.lambda * z - 2.0 * p.mu * z * std::norm(z)};
  };
}

LindbladModel limit_cycle_lindblad(const LimitCycleParams& p, std::size_t dim) {
  if (dim < 4) fail(ErrorKind::invalid_argument, "limit-cycle: dim must be >= 4");
  const FaqSystem sys = limit_cycle_faq(p);
  const FockSpace space = FockSpace::single(dim);
  std::vector<OperatorMatrix> channels;
  for (const auto& r : sys.channels()) channels.push_back(normal_quantize(r, space));
  return LindbladModel(normal_quantize(sys.hamiltonian(), space), std::move(channels));
}

std::vector<double> stationary_distribution(double lambda, double mu, std::size_t n_max) {
  if (!(lambda > 0.0) || !(mu > 0.0) || !std::isfinite(lambda) || !std::isfinite(mu))
    fail(ErrorKind::invalid_argument, "stationary_distribution: lambda and mu must be > 0");
  if (n_max < 10) fail(ErrorKind::invalid_argument, "stationary_distribution: n_max must be >= 10");
  const auto n1 = static_cast<Eigen::Index>(n_max + 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n1 + 1, n1);
  for (Eigen::Index n = 0; n < n1; ++n) {
    const double dn = static_cast<double>(n);
    // gain n-1 -> n, and out of n unless n is the top level
    if (n > 0) m(n, n - 1) += 2.0 * lambda * dn;
    if (n + 1 < n1) m(n, n) -= 2.0 * lambda * (dn + 1.0);
    // two-photon loss n+2 -> n
    if (n + 2 < n1) m(n, n + 2) += 2.0 * mu * (dn + 2.0) * (dn + 1.0);
    m(n, n) -= 2.0 * mu * dn * (dn - 1.0);
  }
  m.row(n1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n1 + 1);
  rhs(n1) = 1.0;
  const Eigen::VectorXd sol = m.colPivHouseholderQr().solve(rhs);

  std::vector<double> rho(sol.data(), sol.data() + sol.size());
  const double peak = *std::max_element(rho.begin(), rho.end());
  for (double& r : rho) {
    if (r < -1e-12 * peak) fail(ErrorKind::numerical, "stationary_distribution: negative probability");
    r = std::max(r, 0.0);
  }
  if (!(rho.back() < 1e-12 * peak))
    fail(ErrorKind::numerical, "stationary_distribution: tail not negligible at n_max = " + std::to_string(n_max) +
                                   ", increase n_max");
  double total = 0.0;
  for (double r : rho) total += r;
  for (double& r : rho) r /= total;
  return rho;
}

std::vector<double> recurrence_stationary(double nu, std::size_t n_max) {
  if (!(nu > 0.0) || !std::isfinite(nu)) fail(ErrorKind::invalid_argument, "recurrence_stationary: nu must be > 0");
  return stationary_distribution(nu, 1.0, n_max);
}

double kummer_phi(double a, double c, double x) {
  if (!std::isfinite(a) || !std::isfinite(c) || !std::isfinite(x))
    fail(ErrorKind::invalid_argument, "kummer_phi: non-finite argument");
  if (c <= 0.0 && c == std::floor(c)) fail(ErrorKind::invalid_argument, "kummer_phi: c is a non-positive integer");
  if (std::abs(x) > 200.0) fail(ErrorKind::invalid_argument, "kummer_phi: |x| > 200 is outside the series regime");
  if (x < 0.0) return std::exp(x) * kummer_phi(c - a, c, -x);

  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 10000; ++k) {
    term *= (a + k) / (c + k) * x / (k + 1.0);
    sum += term;
    if (term == 0.0) return sum;
    // terms decrease once k exceeds x; stop when the next ones cannot matter
    if (k + 1 > x && std::abs(term) <= 1e-16 * std::abs(sum)) return sum;
  }
  fail(ErrorKind::numerical, "kummer_phi: series did not converge in 10000 terms");
}

namespace {

void require_nu(double nu, const char* who) {
  if (!(nu > 0.0) || !std::isfinite(nu)) fail(ErrorKind::invalid_argument, std::string(who) + ": nu must be > 0");
}

}  // namespace

double generating_function(double nu, double u) {
  require_nu(nu, "generating_function");
  return kummer_phi(1.0, nu, nu * (1.0 + u)) / kummer_phi(1.0, nu, 2.0 * nu);
}

double mean_n(double nu) {
  require_nu(nu, "mean_n");
  return kummer_phi(2.0, nu + 1.0, 2.0 * nu) / kummer_phi(1.0, nu, 2.0 * nu);
}

double second_factorial_moment(double nu) {
  require_nu(nu, "second_factorial_moment");
  return 2.0 * nu / (nu + 1.0) * kummer_phi(3.0, nu + 2.0, 2.0 * nu) / kummer_phi(1.0, nu, 2.0 * nu);
}

double mandel_q(double nu) {
  const double n = mean_n(nu);
  return second_factorial_moment(nu) / n - n;
}

}  // namespace semiquant::models
