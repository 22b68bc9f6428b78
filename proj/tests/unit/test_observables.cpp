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

#include <doctest.h>

#include "semiquant/error.hpp"
#include "semiquant/polynomial.hpp"

using namespace semiquant;

namespace {

const Complex I{0.0, 1.0};

Polynomial z(std::size_t modes = 1, std::size_t m = 0) { return Polynomial::variable(modes, m, Var::z); }
Polynomial zc(std::size_t modes = 1, std::size_t m = 0) { return Polynomial::variable(modes, m, Var::zc); }

Polynomial random_poly(std::mt19937_64& gen, std::size_t modes, unsigned max_deg, int terms) {
  std::uniform_int_distribution<unsigned> e(0, max_deg);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  Polynomial p(modes);
  for (int t = 0; t < terms; ++t) {
    Exponents ex(2 * modes, 0);
    unsigned left = max_deg;
    for (auto& x : ex) {
      x = std::min(e(gen), left);
      left -= x;
    }
    p.add_term(ex, Complex(c(gen), c(gen)));
  }
  return p;
}

PhasePoint random_point(std::mt19937_64& gen, std::size_t modes) {
  std::uniform_real_distribution<double> c(-1.5, 1.5);
  std::vector<Complex> v;
  for (std::size_t m = 0; m < modes; ++m) v.emplace_back(c(gen), c(gen));
  return PhasePoint(v);
}

}  // namespace

TEST_CASE("arithmetic") {
  CHECK((z() * zc()).coefficient({1, 1}) == Complex(1.0));
  CHECK((z() * zc()).terms().size() == 1);
  CHECK(((z() + zc()) * Complex(0.0)).is_zero());
  CHECK((z() * z() + (-(z() * z()))).is_zero());
  CHECK_THROWS_AS(z(1) + z(2), Error);
}

TEST_CASE("conjugate") {
  const double s = std::sqrt(0.3);
  CHECK((Complex(s) * zc()).conjugate() == Complex(s) * z());
  CHECK((I * z() * z()).conjugate() == -I * zc() * zc());
  std::mt19937_64 gen(1);
  for (int k = 0; k < 20; ++k) {
    const Polynomial p = random_poly(gen, 2, 4, 6);
    CHECK(p.conjugate().conjugate() == p);
  }
}

TEST_CASE("partial derivatives") {
  CHECK((z() * zc()).partial(0, Var::zc) == z());
  CHECK((zc() * zc()).partial(0, Var::zc) == Complex(2.0) * zc());
  CHECK((zc(2, 0) * z(2, 1)).partial(1, Var::zc).is_zero());
  CHECK_THROWS_AS(z().partial(1, Var::z), Error);
}

TEST_CASE("evaluate") {
  CHECK(std::abs((z() * zc()).evaluate(PhasePoint({Complex(1, 1)})) - 2.0) < 1e-15);
  CHECK((Complex(3.0) * z() * zc()).evaluate(PhasePoint({Complex(0.0)})) == Complex(0.0));
  CHECK(std::abs((z() - zc()).evaluate(PhasePoint({I})) - 2.0 * I) < 1e-15);
  CHECK_THROWS_AS(z().evaluate(PhasePoint({Complex(1), Complex(2)})), Error);
  CHECK_THROWS_AS(PhasePoint({Complex(NAN, 0.0)}), Error);
}

TEST_CASE("poisson bracket examples") {
  CHECK(poisson_bracket(z(), zc()) == Polynomial::constant(1, -I));
  const double r = 1.0 / std::sqrt(2.0);
  const Polynomial q = Complex(r) * (zc() + z());
  const Polynomial p = I * Complex(r) * (zc() - z());
  const Polynomial qp = poisson_bracket(q, p);
  REQUIRE(qp.terms().size() == 1);
  CHECK(std::abs(qp.coefficient({0, 0}) - 1.0) < 1e-15);
  CHECK(poisson_bracket(z() * z(), zc()) == Complex(0.0, -2.0) * z());
}

TEST_CASE("bracket algebra on random polynomials") {
  std::mt19937_64 gen(42);
  for (int k = 0; k < 10; ++k) {
    const Polynomial a = random_poly(gen, 2, 3, 4), b = random_poly(gen, 2, 3, 4), c = random_poly(gen, 2, 3, 4);
    // antisymmetry
    CHECK((poisson_bracket(a, b) + poisson_bracket(b, a)).is_zero());
    // Leibniz and Jacobi: coefficients agree up to rounding of complex products
    const Polynomial leib = poisson_bracket(a, b * c) - (poisson_bracket(a, b) * c + b * poisson_bracket(a, c));
    const Polynomial jac = poisson_bracket(a, poisson_bracket(b, c)) + poisson_bracket(b, poisson_bracket(c, a)) +
                           poisson_bracket(c, poisson_bracket(a, b));
    double worst_l = 0.0, worst_j = 0.0;
    for (const auto& [e, v] : leib.terms()) worst_l = std::max(worst_l, std::abs(v));
    for (const auto& [e, v] : jac.terms()) worst_j = std::max(worst_j, std::abs(v));
    CHECK(worst_l < 1e-12);
    CHECK(worst_j < 1e-12);
  }
}

TEST_CASE("partial agrees with finite differences") {
  std::mt19937_64 gen(7);
  const double h = 1e-5;
  for (int k = 0; k < 20; ++k) {
    const Polynomial a = random_poly(gen, 2, 4, 5);
    const PhasePoint p = random_point(gen, 2);
    for (std::size_t m = 0; m < 2; ++m) {
      // d/dx and d/dy along z_m = (x + i y)/sqrt2 combine the Wirtinger partials
      auto shifted = [&](Complex dz) {
        std::vector<Complex> v(p.coords().begin(), p.coords().end());
        v[m] += dz;
        return a.evaluate(PhasePoint(v));
      };
      const double s = 1.0 / std::sqrt(2.0);
      const Complex fx = (shifted(h * s) - shifted(-h * s)) / (2.0 * h);
      const Complex fy = (shifted(I * h * s) - shifted(-I * h * s)) / (2.0 * h);
      const Complex dz = a.partial(m, Var::z).evaluate(p), dzc = a.partial(m, Var::zc).evaluate(p);
      CHECK(std::abs(fx - (dz + dzc) * s) < 1e-8);
      CHECK(std::abs(fy - I * (dz - dzc) * s) < 1e-8);
    }
  }
}

TEST_CASE("text form round trip") {
  std::mt19937_64 gen(3);
  for (int k = 0; k < 20; ++k) {
    const Polynomial a = random_poly(gen, 3, 4, 5);
    CHECK(Polynomial::parse(a.to_string(), 3) == a);
  }
  CHECK(Polynomial(2).to_string() == "0");
  const Polynomial p = Polynomial::parse("2*z1*z1c - i*z2^2 + (0.5+2i)");
  CHECK(p.mode_count() == 2);
  CHECK(p.coefficient({1, 1, 0, 0}) == Complex(2.0));
  CHECK(p.coefficient({0, 0, 2, 0}) == -I);
  CHECK(p.coefficient({0, 0, 0, 0}) == Complex(0.5, 2.0));
  CHECK_THROWS_AS(Polynomial::parse("z1 +"), Error);
  CHECK_THROWS_AS(Polynomial::parse("z0"), Error);
  CHECK_THROWS_AS(Polynomial::parse("z3", 2), Error);
}
