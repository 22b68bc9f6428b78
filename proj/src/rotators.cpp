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

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "semiquant/csv.hpp"
#include "semiquant/error.hpp"
#include "semiquant/models.hpp"
#include "semiquant/rk4.hpp"

namespace semiquant::models {

namespace {

constexpr Complex kI{0.0, 1.0};

using CVec3 = std::array<Complex, 3>;

CVec3 cross(const Vec3& a, const CVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void require_finite_dt(double dt, const char* who) {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorKind::invalid_argument, std::string(who) + ": dt must be > 0");
}

}  // namespace

void RotatorParams::validate() const {
  if (!std::isfinite(omega1) || !std::isfinite(omega2))
    fail(ErrorKind::invalid_argument, "rotators: omega1 and omega2 must be finite");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail(ErrorKind::invalid_argument, "rotators: lambda must be >= 0");
}

FaqSystem rotator_faq(const RotatorParams& p) {
  p.validate();
  const Polynomial z1 = Polynomial::variable(2, 0, Var::z);
  const Polynomial z1c = Polynomial::variable(2, 0, Var::zc);
  const Polynomial z2 = Polynomial::variable(2, 1, Var::z);
  const Polynomial z2c = Polynomial::variable(2, 1, Var::zc);
  const Polynomial n1 = z1c * z1, n2 = z2c * z2;
  const Polynomial hop = z1c * z2 - z2c * z1;

  Polynomial h = Complex(-p.omega1) * n1 + Complex(-p.omega2) * n2 + Complex(0.0, 0.5 * p.lambda) * (n1 * hop) -
                 Complex(0.0, 0.5 * p.lambda) * (n2 * hop);
  Polynomial r = Complex(0.5 * std::sqrt(p.lambda)) * (n1 - n2 + z2c * z1 - z2 * z1c);
  return FaqSystem(std::move(h), {std::move(r)});
}

VectorField rotator_field(const RotatorParams& p) {
  return [p](const PhasePoint& pt) {
    const Complex z1 = pt[0], z2 = pt[1];
    const Complex w = std::conj(z1) * z2 - std::conj(z2) * z1;
    return ComplexVector{kI * p.omega1 * z1 + p.lambda * z1 * w, kI * p.omega2 * z2 - p.lambda * z2 * w};
  };
}

PhaseTrajectory phase_model_flow(double omega1, double omega2, double a, std::array<double, 2> phi0, double t_end,
                                 double dt, double lock_tol) {
  require_finite_dt(dt, "phase_model_flow");
  if (!std::isfinite(omega1) || !std::isfinite(omega2) || !std::isfinite(a))
    fail(ErrorKind::invalid_argument, "phase_model_flow: non-finite parameter");
  const std::size_t steps = rk4_step_count(t_end, dt);
  const double h = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);

  auto rhs = [&](double, const Eigen::Vector2d& y) {
    return Eigen::Vector2d(omega1 + a * std::sin(y[1] - y[0]), omega2 + a * std::sin(y[0] - y[1]));
  };
  Eigen::Vector2d y(phi0[0], phi0[1]);
  PhaseTrajectory out;
  out.times.reserve(steps + 1);
  out.phases.reserve(steps + 1);
  out.times.push_back(0.0);
  out.phases.push_back(phi0);
  for (std::size_t k = 1; k <= steps; ++k) {
    y = rk4_step(rhs, static_cast<double>(k - 1) * h, y, h);
    out.times.push_back(static_cast<double>(k) * h);
    out.phases.push_back({y[0], y[1]});
  }
  const Eigen::Vector2d rate = rhs(t_end, y);
  out.final_difference_rate = rate[1] - rate[0];
  out.locked = std::abs(out.final_difference_rate) < lock_tol;
  return out;
}

// ---------------------------------------------------------------------------

SpinPolynomial SpinPolynomial::constant(Complex c) {
  SpinPolynomial p;
  p.add({0, 0, 0}, c);
  return p;
}

SpinPolynomial SpinPolynomial::component(std::size_t axis) {
  if (axis > 2) fail(ErrorKind::invalid_argument, "SpinPolynomial: axis must be 0, 1 or 2");
  Powers pw{0, 0, 0};
  pw[axis] = 1;
  SpinPolynomial p;
  p.add(pw, 1.0);
  return p;
}

void SpinPolynomial::add(const Powers& p, Complex c) {
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    if (c != Complex{}) terms_.emplace(p, c);
    return;
  }
  it->second += c;
  if (it->second == Complex{}) terms_.erase(it);
}

SpinPolynomial SpinPolynomial::conjugate() const {
  SpinPolynomial out;
  for (const auto& [p, c] : terms_) out.terms_.emplace(p, std::conj(c));
  return out;
}

Complex SpinPolynomial::evaluate(const Vec3& l) const {
  Complex sum{};
  for (const auto& [p, c] : terms_) {
    double v = 1.0;
    for (std::size_t a = 0; a < 3; ++a) v *= std::pow(l[a], static_cast<int>(p[a]));
    sum += c * v;
  }
  return sum;
}

std::array<Complex, 3> SpinPolynomial::gradient(const Vec3& l) const {
  std::array<Complex, 3> g{};
  for (const auto& [p, c] : terms_) {
    for (std::size_t d = 0; d < 3; ++d) {
      if (p[d] == 0) continue;
      double v = static_cast<double>(p[d]);
      for (std::size_t a = 0; a < 3; ++a) v *= std::pow(l[a], static_cast<int>(a == d ? p[a] - 1 : p[a]));
      g[d] += c * v;
    }
  }
  return g;
}

SpinPolynomial& SpinPolynomial::operator+=(const SpinPolynomial& o) {
  for (const auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

SpinPolynomial& SpinPolynomial::operator*=(Complex s) {
  if (s == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

SpinPolynomial operator*(const SpinPolynomial& a, const SpinPolynomial& b) {
  SpinPolynomial out;
  for (const auto& [pa, ca] : a.terms_)
    for (const auto& [pb, cb] : b.terms_) out.add({pa[0] + pb[0], pa[1] + pb[1], pa[2] + pb[2]}, ca * cb);
  return out;
}

SpinFunctions rotator_spin_functions(const RotatorParams& p) {
  p.validate();
  const auto ly = SpinPolynomial::component(1);
  const auto lz = SpinPolynomial::component(2);
  SpinFunctions f;
  f.hamiltonian = Complex(-p.delta()) * lz + Complex(-2.0 * p.lambda) * (ly * lz);
  f.channel = Complex(std::sqrt(p.lambda)) * (lz + Complex(0.0, -1.0) * ly);
  return f;
}

Vec3 spin_flow_field(const SpinPolynomial& h, const SpinPolynomial& r, const Vec3& l) {
  const auto gh = h.gradient(l);
  const CVec3 ham = cross(l, gh);
  const Complex rv = r.evaluate(l);
  const CVec3 dis = cross(l, r.conjugate().gradient(l));
  Vec3 out{};
  for (std::size_t a = 0; a < 3; ++a) out[a] = -ham[a].real() + 2.0 * (kI * rv * dis[a]).real();
  return out;
}

SpinTrajectory classical_spin_flow(const SpinPolynomial& h, const SpinPolynomial& r, const Vec3& l0, double t_end,
                                   double dt) {
  require_finite_dt(dt, "classical_spin_flow");
  const std::size_t steps = rk4_step_count(t_end, dt);
  const double step = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);

  auto rhs = [&](double, const Eigen::Vector3d& y) {
    const Vec3 d = spin_flow_field(h, r, {y[0], y[1], y[2]});
    return Eigen::Vector3d(d[0], d[1], d[2]);
  };

  SpinTrajectory out;
  out.times.reserve(steps + 1);
  out.points.reserve(steps + 1);
  out.times.push_back(0.0);
  out.points.push_back(l0);
  Eigen::Vector3d y(l0[0], l0[1], l0[2]);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k - 1) * step;
    y = rk4_step(rhs, t, y, step);
    if (!y.allFinite())
      fail(ErrorKind::numerical, "classical_spin_flow: non-finite state at t = " + csv::format_number(t + step));
    out.times.push_back(static_cast<double>(k) * step);
    out.points.push_back({y[0], y[1], y[2]});
  }
  return out;
}

Vec3 spin_vector(const PhasePoint& z) {
  if (z.size() != 2) fail(ErrorKind::dimension, "spin_vector: expected a two-mode point");
  const Complex w = std::conj(z[1]) * z[0];
  return {w.real(), -w.imag(), 0.5 * (std::norm(z[0]) - std::norm(z[1]))};
}

LindbladModel rotator_spin_model(const RotatorParams& p) {
  p.validate();
  if (p.spin.twice_l() < 2) fail(ErrorKind::invalid_argument, "rotator_spin_model: spin l must be >= 1");
  const SpinTriple s = spin_operators(p.spin);
  OperatorMatrix h = Complex(-p.delta()) * s.lz - Complex(p.lambda) * (s.ly * s.lz + s.lz * s.ly);
  OperatorMatrix r = Complex(std::sqrt(p.lambda)) * (s.lz - kI * s.ly);
  return LindbladModel(std::move(h), {std::move(r)});
}

}  // namespace semiquant::models
