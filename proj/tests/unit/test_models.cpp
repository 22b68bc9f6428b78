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
#include <numbers>

#include <doctest.h>

#include "../oracles.hpp"
#include "semiquant/error.hpp"
#include "semiquant/models.hpp"

using namespace semiquant;
using namespace semiquant::models;

TEST_CASE("kummer function identities") {
  for (double x : {-3.0, -0.5, 0.1, 1.0, 4.0}) {
    CHECK(kummer_phi(1.0, 2.0, x) == doctest::Approx(oracle::phi_1_2(x)).epsilon(1e-13));
    CHECK(kummer_phi(0.7, 0.7, x) == doctest::Approx(std::exp(x)).epsilon(1e-13));
    // Kummer transformation
    CHECK(kummer_phi(0.4, 2.5, x) == doctest::Approx(std::exp(x) * kummer_phi(2.1, 2.5, -x)).epsilon(1e-12));
  }
  CHECK(kummer_phi(-2.0, 1.0, 3.0) == doctest::Approx(1.0 - 6.0 + 4.5));
  CHECK_THROWS_AS(kummer_phi(1.0, -2.0, 1.0), Error);
  CHECK_THROWS_AS(kummer_phi(1.0, 2.0, 500.0), Error);
}

TEST_CASE("generating function") {
  for (double u = 0.0; u <= 1.0 + 1e-12; u += 0.25)
    CHECK(std::abs(generating_function(2.0, u) - oracle::g_nu2(u)) < 1e-12);
  for (double nu : {0.3, 1.0, 2.0, 5.0}) CHECK(std::abs(generating_function(nu, 1.0) - 1.0) < 1e-13);
}

TEST_CASE("stationary distribution") {
  const auto rho = recurrence_stationary(1.0, 40);
  for (unsigned n = 0; n < 20; ++n) CHECK(std::abs(rho[n] - oracle::poisson(1.0, n)) < 1e-13);
  double total = 0.0;
  for (double x : stationary_distribution(1.5, 0.7, 60)) total += x;
  CHECK(std::abs(total - 1.0) < 1e-13);
  // only nu matters
  const auto a = stationary_distribution(2.0, 1.0, 60), b = stationary_distribution(6.0, 3.0, 60);
  for (std::size_t n = 0; n < a.size(); ++n) CHECK(std::abs(a[n] - b[n]) < 1e-12);
  // the mean from the distribution agrees with the hypergeometric formula
  double mean = 0.0, fact2 = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    mean += n * a[n];
    fact2 += n * (n - 1.0) * a[n];
  }
  CHECK(mean == doctest::Approx(mean_n(2.0)).epsilon(1e-10));
  CHECK(fact2 == doctest::Approx(second_factorial_moment(2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(stationary_distribution(1.0, 1.0, 5), Error);
  CHECK_THROWS_AS(stationary_distribution(60.0, 1.0, 20), Error);
}

TEST_CASE("mandel Q") {
  CHECK(std::abs(mandel_q(1.0)) < 1e-12);
  CHECK(mandel_q(2.0) > 0.0);
  CHECK(mandel_q(0.5) < 0.0);
  CHECK(std::abs(mean_n(1.0) - 1.0) < 1e-12);
}

TEST_CASE("oscillator model") {
  CHECK_THROWS_AS(oscillator_faq({0.0, 0.1, 0.0}), Error);
  CHECK_THROWS_AS(oscillator_faq({1.0, -0.1, 0.0}), Error);
  const auto rho = coherent_state(30, Complex(1.0, 1.0));
  CHECK(std::abs(expectation(rho, annihilation(30)) - Complex(1.0, 1.0)) < 1e-10);
  // classical solution of the field matches the independent closed form
  const OscillatorParams p{1.0, 0.1, 0.0};
  const auto tr = classical_flow(oscillator_faq(p), PhasePoint({Complex(2.0)}), 10.0, 1e-3);
  CHECK(std::abs(tr.points.back()[0] - oracle::damped_oscillator(1.0, 0.1, Complex(2.0), 10.0)) < 1e-10);
}

TEST_CASE("limit cycle model validation") {
  CHECK_THROWS_AS(limit_cycle_faq({1.0, 1.0, 0.0}), Error);
  CHECK_THROWS_AS(limit_cycle_faq({1.0, -1.0, 1.0}), Error);
  CHECK_NOTHROW(limit_cycle_faq({1.0, 0.0, 1.0}));
}

TEST_CASE("adler locking") {
  const double a = 0.2;
  for (double ratio : {0.3, 0.5, 0.9, 1.2, 1.5, 3.0}) {
    const double delta = ratio * 2.0 * a;
    const auto tr = phase_model_flow(1.0 + delta, 1.0, a, {0.0, 0.0}, 400.0, 0.01);
    CHECK(tr.locked == oracle::adler_locks(delta, a));
    if (tr.locked) {
      double diff = std::remainder(tr.phases.back()[0] - tr.phases.back()[1], 2.0 * std::numbers::pi);
      CHECK(std::abs(std::abs(std::sin(diff)) - std::abs(std::sin(oracle::adler_fixed_point(delta, a)))) < 1e-6);
    } else {
      const std::size_t half = tr.phases.size() / 2;
      const double slip = (tr.phases.back()[1] - tr.phases.back()[0]) - (tr.phases[half][1] - tr.phases[half][0]);
      const double rate = std::abs(slip) / (tr.times.back() - tr.times[half]);
      CHECK(rate == doctest::Approx(oracle::adler_slip_rate(delta, a)).epsilon(0.02));
    }
  }
}

TEST_CASE("spin polynomials") {
  const auto x = SpinPolynomial::component(0), y = SpinPolynomial::component(1);
  const auto p = x * y + Complex(2.0) * SpinPolynomial::constant(Complex(0.0, 1.0));
  CHECK(p.evaluate({2.0, 3.0, 0.0}) == Complex(6.0, 2.0));
  CHECK(p.conjugate().evaluate({2.0, 3.0, 0.0}) == Complex(6.0, -2.0));
  const auto g = p.gradient({2.0, 3.0, 5.0});
  CHECK(g[0] == Complex(3.0));
  CHECK(g[1] == Complex(2.0));
  CHECK(g[2] == Complex(0.0));
}

TEST_CASE("classical spin flow agrees with the two-mode flow") {
  const RotatorParams p{1.1, 0.9, 0.2, SpinRep(1.0)};
  const SpinFunctions f = rotator_spin_functions(p);
  const PhasePoint z0({Complex(1.0, 0.3), Complex(0.4, -0.8)});
  const auto two = classical_flow(rotator_faq(p), z0, 10.0, 1e-3);
  const auto three = classical_spin_flow(f.hamiltonian, f.channel, spin_vector(z0), 10.0, 1e-3);
  REQUIRE(two.points.size() == three.points.size());
  for (std::size_t k = 0; k < two.points.size(); k += 500) {
    const Vec3 a = spin_vector(two.points[k]), b = three.points[k];
    for (int i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-8);
  }
}
