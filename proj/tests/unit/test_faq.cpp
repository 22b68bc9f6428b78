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
#include <sstream>

#include <doctest.h>

#include "../oracles.hpp"
#include "semiquant/error.hpp"
#include "semiquant/faq.hpp"
#include "semiquant/models.hpp"

using namespace semiquant;
using namespace semiquant::models;

namespace {

const Complex I{0.0, 1.0};

oracle::Field as_field(const FaqSystem& sys) {
  return [&sys](const oracle::CVec& v) { return drift(sys, PhasePoint(v)); };
}

std::vector<oracle::CVec> raw(const std::vector<PhasePoint>& pts) {
  std::vector<oracle::CVec> out;
  for (const auto& p : pts) out.emplace_back(p.coords().begin(), p.coords().end());
  return out;
}

}  // namespace

TEST_CASE("drift examples") {
  const OscillatorParams a{1.0, 0.3, 0.7};
  const Complex z0(1.0, 2.0);
  const auto d = drift(oscillator_faq(a), PhasePoint({z0}));
  CHECK(std::abs(d[0] - (-I * z0 - 0.3 * (z0 - std::conj(z0)))) < 1e-14);

  const FaqSystem empty(Polynomial(1), {});
  CHECK(drift(empty, PhasePoint({Complex(0.3, -2.0)}))[0] == Complex(0.0));

  const auto b = drift(limit_cycle_faq({2.0, 1.0, 0.5}), PhasePoint({Complex(1.0)}));
  CHECK(std::abs(b[0] - Complex(0.0, -2.0)) < 1e-14);
}

TEST_CASE("verify_faq detects a wrong field") {
  const OscillatorParams p{1.0, 0.3, 0.7};
  const auto samples = sample_disc(1, 100, kFaqSampleRadius, kFaqSampleSeed);
  CHECK(verify_faq(oscillator_faq(p), oscillator_field(p), samples, 1e-12).pass);

  VectorField wrong = [](const PhasePoint& pt) { return ComplexVector{-I * pt[0]}; };
  const FaqReport r = verify_faq(oscillator_faq(p), wrong, samples, 1e-12);
  CHECK_FALSE(r.pass);
  double expected = 0.0;
  for (const auto& s : samples) expected = std::max(expected, std::abs(0.3 * (s[0] - std::conj(s[0]))));
  CHECK(r.max_abs_error == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("drift invariant under channel phase and u") {
  const auto samples = sample_disc(1, 50, 3.0, 9);
  const FaqSystem base = oscillator_faq({1.0, 0.3, 0.0});
  for (double u : {-1.0, 0.5, 1.0}) {
    const FaqSystem other = oscillator_faq({1.0, 0.3, u});
    for (const auto& s : samples) CHECK(std::abs(drift(base, s)[0] - drift(other, s)[0]) < 1e-12);
  }
  const Complex phase = std::exp(I * 0.83);
  const FaqSystem rotated(base.hamiltonian(), {phase * base.channels()[0]});
  for (const auto& s : samples) CHECK(std::abs(drift(base, s)[0] - drift(rotated, s)[0]) < 1e-12);
}

TEST_CASE("sampler is reproducible and inside the disc") {
  const auto a = sample_disc(2, 30, 3.0, 5), b = sample_disc(2, 30, 3.0, 5);
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t m = 0; m < 2; ++m) {
      CHECK(a[k][m] == b[k][m]);
      CHECK(std::abs(a[k][m]) <= 3.0);
    }
}

TEST_CASE("Hamiltonian must be real") {
  CHECK_THROWS_AS(FaqSystem(Polynomial::parse("i*z1*z1c"), {}), Error);
  CHECK_THROWS_AS(FaqSystem(Polynomial::parse("z1*z1c"), {Polynomial::parse("z1*z2")}), Error);
}

TEST_CASE("classical flow") {
  SUBCASE("damped oscillator decays") {
    const auto tr = classical_flow(oscillator_faq({1.0, 0.1, 0.0}), PhasePoint({Complex(1.0)}), 20.0, 1e-3);
    CHECK(std::abs(tr.points.back()[0]) < std::exp(-0.1 * 20.0) * 1.5);
    CHECK(std::abs(tr.times.back() - 20.0) < 1e-12);
  }
  SUBCASE("Hamiltonian circle") {
    const FaqSystem sys(Polynomial::parse("1.3*z1*z1c"), {});
    const auto tr = classical_flow(sys, PhasePoint({Complex(0.6, 0.8)}), 100.0, 0.01);
    double worst = 0.0;
    for (const auto& p : tr.points) worst = std::max(worst, std::abs(std::abs(p[0]) - 1.0));
    CHECK(worst < 1e-9);
  }
  SUBCASE("limit cycle radius") {
    const auto tr = classical_flow(limit_cycle_faq({1.0, 0.5, 0.5}), PhasePoint({Complex(0.1)}), 80.0, 1e-2);
    CHECK(std::abs(std::norm(tr.points.back()[0]) - 0.5) < 1e-6);
  }
  SUBCASE("non-finite state aborts") {
    const FaqSystem blow(Polynomial::parse("z1^2*z1c^2"), {Polynomial::parse("z1c^2")});
    CHECK_THROWS_AS(classical_flow(blow, PhasePoint({Complex(5.0)}), 50.0, 0.5), Error);
  }
  SUBCASE("matches an independent RK4 on the oscillator field") {
    const OscillatorParams p{1.0, 0.1, 0.0};
    const auto tr = classical_flow(oscillator_faq(p), PhasePoint({Complex(1.0, 0.5)}), 5.0, 1e-2);
    const oracle::Field f = [](const oracle::CVec& v) {
      return oracle::CVec{-I * v[0] - 0.1 * (v[0] - std::conj(v[0]))};
    };
    const auto ref = oracle::rk4(f, {Complex(1.0, 0.5)}, 5.0, 500);
    CHECK(std::abs(ref.back()[0] - tr.points.back()[0]) < 1e-12);
  }
}

TEST_CASE("phase divergence") {
  const FaqSystem ham(Polynomial::parse("z1*z1c + 0.3*z1^2*z1c^2"), {});
  CHECK(phase_divergence(ham, PhasePoint({Complex(0.4, 1.0)})) == 0.0);
  const FaqSystem a = oscillator_faq({1.0, 0.25, 0.4});
  for (const auto& s : sample_disc(1, 10, 3.0, 1)) CHECK(phase_divergence(a, s) == doctest::Approx(-0.5));

  for (const auto& sys : {oscillator_faq({1.0, 0.3, 0.7}), limit_cycle_faq({1.0, 0.7, 0.4}),
                          rotator_faq({1.1, 0.9, 0.2, SpinRep(1.0)})}) {
    const auto pts = sample_disc(sys.mode_count(), 50, 2.0, 11);
    for (const auto& p : raw(pts)) {
      const double fd = oracle::fd_divergence(as_field(sys), p);
      CHECK(std::abs(phase_divergence(sys, PhasePoint(p)) - fd) < 1e-6);
    }
  }
}

TEST_CASE("real coefficients reproduce the drift") {
  const FaqSystem sys = rotator_faq({1.1, 0.9, 0.2, SpinRep(1.0)});
  for (const auto& p : sample_disc(2, 30, 2.0, 4)) {
    const RealCoefficients rc = real_coefficients(sys, p);
    const auto d = drift(sys, p);
    for (std::size_t m = 0; m < 2; ++m)
      CHECK(std::abs(d[m] - Complex(rc.a[m], rc.b[m]) / std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(rc.c - phase_divergence(sys, p)) < 1e-10);
  }
}

TEST_CASE("ensemble weights") {
  SUBCASE("Hamiltonian flow keeps unit weight") {
    const FaqSystem sys(Polynomial::parse("z1*z1c"), {});
    const auto w = ensemble_weights(sys, {PhasePoint({Complex(1.0)}), PhasePoint({Complex(0.2, 0.3)})}, 10.0, 0.01);
    for (const auto& run : w)
      for (double x : run.weights) CHECK(std::abs(x - 1.0) < 1e-10);
  }
  SUBCASE("oscillator weight grows as exp(2 lambda t)") {
    const auto w = ensemble_weights(oscillator_faq({1.0, 0.1, 0.0}), {PhasePoint({Complex(1.0)})}, 10.0, 0.01);
    const auto& run = w.front();
    for (std::size_t k = 0; k < run.weights.size(); k += 100)
      CHECK(std::abs(run.weights[k] / std::exp(0.2 * run.trajectory.times[k]) - 1.0) < 1e-6);
  }
  SUBCASE("limit-cycle weight slope changes sign with the divergence") {
    // div = 2 lambda - 8 mu |z|^2 vanishes at |z|^2 = lambda / (4 mu)
    const LimitCycleParams p{1.0, 1.0, 0.5};
    const FaqSystem sys = limit_cycle_faq(p);
    const double r2 = p.lambda / (4.0 * p.mu);
    for (double f : {0.5, 0.9, 1.1, 2.0}) {
      const PhasePoint z0({Complex(std::sqrt(f * r2))});
      const auto w = ensemble_weights(sys, {z0}, 1e-3, 1e-4).front().weights;
      const double slope = (w.back() - w.front()) / 1e-3;
      CHECK((slope > 0.0) == (phase_divergence(sys, z0) < 0.0));
      CHECK((slope > 0.0) == (f > 1.0));
    }
  }
}

TEST_CASE("trajectory csv") {
  const auto w = ensemble_weights(oscillator_faq({1.0, 0.1, 0.0}), {PhasePoint({Complex(1.0)})}, 0.02, 0.01);
  std::ostringstream os;
  write_trajectory_csv(os, w.front());
  const std::string s = os.str();
  CHECK(s.rfind("t,re(z1),im(z1),weight\r\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
}
