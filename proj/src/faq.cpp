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

#include "semiquant/faq.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "semiquant/csv.hpp"
#include "semiquant/error.hpp"
#include "semiquant/rk4.hpp"

namespace semiquant {

namespace {

constexpr Complex kI{0.0, 1.0};

Polynomial build_drift(const Polynomial& h, const std::vector<Polynomial>& channels, std::size_t mode) {
  Polynomial out = h.partial(mode, Var::zc) * Complex(0.0, -1.0);
  for (const auto& r : channels) {
    const Polynomial rbar = r.conjugate();
    out += rbar * r.partial(mode, Var::zc);
    out -= r * rbar.partial(mode, Var::zc);
  }
  return out;
}

double unit_interval(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

void require_finite(const Eigen::VectorXcd& y, double t) {
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    if (!std::isfinite(y[k].real()) || !std::isfinite(y[k].imag())) {
      fail(ErrorKind::numerical, "classical_flow: non-finite state component " + std::to_string(k) +
                                     " at t = " + csv::format_number(t) + "; reduce dt or check the model");
    }
  }
}

PhasePoint to_point(const Eigen::VectorXcd& y, std::size_t modes) {
  return PhasePoint(std::vector<Complex>(y.data(), y.data() + modes));
}

}  // namespace

FaqSystem::FaqSystem(Polynomial hamiltonian, std::vector<Polynomial> channels)
    : hamiltonian_(std::move(hamiltonian)),
      channels_(std::move(channels)),
      divergence_(hamiltonian_.mode_count()) {
  const std::size_t modes = hamiltonian_.mode_count();
  for (std::size_t j = 0; j < channels_.size(); ++j) {
    if (channels_[j].mode_count() != modes) {
      fail(ErrorKind::dimension, "FaqSystem: channel " + std::to_string(j) + " has mode_count " +
                                     std::to_string(channels_[j].mode_count()) + ", expected " +
                                     std::to_string(modes));
    }
  }
  for (const auto& p : sample_disc(modes, 16, kFaqSampleRadius, kFaqSampleSeed)) {
    const Complex h = hamiltonian_.evaluate(p);
    if (std::abs(h.imag()) > 1e-12 * std::max(1.0, std::abs(h))) {
      fail(ErrorKind::invalid_argument, "FaqSystem: Hamiltonian is not real valued (imaginary part " +
                                            csv::format_number(h.imag()) + ")");
    }
  }
  drift_.reserve(modes);
  for (std::size_t m = 0; m < modes; ++m) {
    drift_.push_back(build_drift(hamiltonian_, channels_, m));
    divergence_ += drift_.back().partial(m, Var::z);
  }
}

ComplexVector drift(const FaqSystem& sys, const PhasePoint& p) {
  if (p.size() != sys.mode_count()) {
    fail(ErrorKind::dimension, "drift: point has " + std::to_string(p.size()) + " coordinates, system has " +
                                   std::to_string(sys.mode_count()) + " modes");
  }
  ComplexVector out;
  out.reserve(sys.mode_count());
  for (const auto& poly : sys.drift_polynomials()) out.push_back(poly.evaluate(p));
  return out;
}

FaqReport verify_faq(const FaqSystem& sys, const VectorField& field, const std::vector<PhasePoint>& samples,
                     double tol) {
  if (samples.empty()) fail(ErrorKind::invalid_argument, "verify_faq: no sample points");
  FaqReport report;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const ComplexVector lhs = drift(sys, samples[s]);
    const ComplexVector rhs = field(samples[s]);
    if (rhs.size() != lhs.size()) fail(ErrorKind::dimension, "verify_faq: field returned wrong length");
    for (std::size_t m = 0; m < lhs.size(); ++m) {
      const double err = std::abs(lhs[m] - rhs[m]);
      if (err > report.max_abs_error || std::isnan(err)) {
        report.max_abs_error = err;
        report.worst_sample = s;
      }
    }
  }
  report.pass = report.max_abs_error <= tol;
  return report;
}

std::vector<PhasePoint> sample_disc(std::size_t mode_count, std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<PhasePoint> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<Complex> c(mode_count);
    for (auto& z : c) {
      const double r = radius * std::sqrt(unit_interval(gen));
      const double theta = 2.0 * std::numbers::pi * unit_interval(gen);
      z = std::polar(r, theta);
    }
    out.emplace_back(std::move(c));
  }
  return out;
}

namespace {

// Integrates the drift together with log-weight in the last slot.
WeightedTrajectory integrate(const FaqSystem& sys, const PhasePoint& z0, double t_end, double dt, bool weights) {
  const std::size_t modes = sys.mode_count();
  if (z0.size() != modes) fail(ErrorKind::dimension, "classical_flow: initial point has wrong dimension");
  const std::size_t steps = rk4_step_count(t_end, dt);
  const double h = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);

  auto rhs = [&](double, const Eigen::VectorXcd& y) {
    Eigen::VectorXcd dy(y.size());
    const PhasePoint p = to_point(y, modes);
    for (std::size_t m = 0; m < modes; ++m) dy[m] = sys.drift_polynomials()[m].evaluate(p);
    if (weights) dy[modes] = -2.0 * sys.divergence_polynomial().evaluate(p).real();
    return dy;
  };

  Eigen::VectorXcd y(modes + (weights ? 1 : 0));
  for (std::size_t m = 0; m < modes; ++m) y[m] = z0[m];
  if (weights) y[modes] = 0.0;

  WeightedTrajectory out;
  out.trajectory.times.reserve(steps + 1);
  out.trajectory.points.reserve(steps + 1);
  out.trajectory.times.push_back(0.0);
  out.trajectory.points.push_back(z0);
  if (weights) out.weights.push_back(1.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k - 1) * h;
    y = rk4_step(rhs, t, y, h);
    require_finite(y, t + h);
    out.trajectory.times.push_back(k == steps ? t_end : static_cast<double>(k) * h);
    out.trajectory.points.push_back(to_point(y, modes));
    if (weights) out.weights.push_back(std::exp(y[modes].real()));
  }
  return out;
}

}  // namespace

Trajectory classical_flow(const FaqSystem& sys, const PhasePoint& z0, double t_end, double dt) {
  return integrate(sys, z0, t_end, dt, false).trajectory;
}

double phase_divergence(const FaqSystem& sys, const PhasePoint& p) {
  if (p.size() != sys.mode_count()) fail(ErrorKind::dimension, "phase_divergence: dimension mismatch");
  return 2.0 * sys.divergence_polynomial().evaluate(p).real();
}

RealCoefficients real_coefficients(const FaqSystem& sys, const PhasePoint& p) {
  const std::size_t modes = sys.mode_count();
  if (p.size() != modes) fail(ErrorKind::dimension, "real_coefficients: dimension mismatch");
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  // d/dx = (d/dz + d/dz*)/sqrt2, d/dy = i (d/dz - d/dz*)/sqrt2 for z = (x + i y)/sqrt2.
  auto dx = [&](const Polynomial& f, std::size_t m) {
    return (f.partial(m, Var::z).evaluate(p) + f.partial(m, Var::zc).evaluate(p)) * inv_sqrt2;
  };
  auto dy = [&](const Polynomial& f, std::size_t m) {
    return kI * (f.partial(m, Var::z).evaluate(p) - f.partial(m, Var::zc).evaluate(p)) * inv_sqrt2;
  };

  RealCoefficients out;
  out.a.assign(modes, 0.0);
  out.b.assign(modes, 0.0);
  Complex c_sum{};
  for (std::size_t m = 0; m < modes; ++m) {
    Complex a = dy(sys.hamiltonian(), m);
    Complex b = -dx(sys.hamiltonian(), m);
    for (const auto& r : sys.channels()) {
      const Polynomial rbar = r.conjugate();
      const Complex rv = r.evaluate(p);
      const Complex rbv = rbar.evaluate(p);
      const Complex r_x = dx(r, m), r_y = dy(r, m);
      const Complex rb_x = dx(rbar, m), rb_y = dy(rbar, m);
      a += kI * (rbv * r_y - rv * rb_y);
      b += kI * (rv * rb_x - rbv * r_x);
      c_sum += 2.0 * kI * (r_y * rb_x - r_x * rb_y);
    }
    out.a[m] = a.real();
    out.b[m] = b.real();
  }
  out.c = c_sum.real();
  return out;
}

std::vector<WeightedTrajectory> ensemble_weights(const FaqSystem& sys, const std::vector<PhasePoint>& points,
                                                 double t_end, double dt) {
  std::vector<WeightedTrajectory> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(integrate(sys, p, t_end, dt, true));
  return out;
}

void write_trajectory_csv(std::ostream& os, const WeightedTrajectory& wt) {
  const auto& tr = wt.trajectory;
  const std::size_t modes = tr.points.empty() ? 0 : tr.points.front().size();
  csv::Writer w(os);
  std::vector<std::string> header{"t"};
  for (std::size_t m = 1; m <= modes; ++m) {
    header.push_back("re(z" + std::to_string(m) + ")");
    header.push_back("im(z" + std::to_string(m) + ")");
  }
  header.push_back("weight");
  w.header(header);
  std::vector<double> row;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    row.clear();
    row.push_back(tr.times[k]);
    for (std::size_t m = 0; m < modes; ++m) {
      row.push_back(tr.points[k][m].real());
      row.push_back(tr.points[k][m].imag());
    }
    row.push_back(wt.weights.empty() ? 1.0 : wt.weights[k]);
    w.row(row);
  }
}

}  // namespace semiquant
