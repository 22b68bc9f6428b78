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

// Exercises only the C interface of the shared library.

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <doctest.h>

#include "semiquant/semiquant.h"

TEST_CASE("version and status names") {
  CHECK(std::strlen(sq_version()) > 0);
  CHECK(std::string(sq_status_name(SQ_ERR_DEGENERATE)).size() > 0);
}

TEST_CASE("polynomials through handles") {
  sq_polynomial* a = nullptr;
  sq_polynomial* b = nullptr;
  REQUIRE(sq_polynomial_parse("z1", 1, &a) == SQ_OK);
  REQUIRE(sq_polynomial_parse("z1c", 1, &b) == SQ_OK);
  sq_polynomial* c = nullptr;
  REQUIRE(sq_polynomial_poisson_bracket(a, b, &c) == SQ_OK);
  const sq_complex pt{0.3, 0.1};
  sq_complex v{};
  REQUIRE(sq_polynomial_evaluate(c, &pt, 1, &v) == SQ_OK);
  CHECK(v.re == 0.0);
  CHECK(v.im == -1.0);

  size_t needed = 0;
  // a null buffer with zero capacity only queries the size
  CHECK(sq_polynomial_to_string(a, nullptr, 0, &needed) == SQ_OK);
  CHECK(needed > 1);
  char tiny[2];
  CHECK(sq_polynomial_to_string(a, tiny, sizeof tiny, &needed) == SQ_ERR_BUFFER_TOO_SMALL);
  std::string s(needed, '\0');
  REQUIRE(sq_polynomial_to_string(a, s.data(), s.size(), &needed) == SQ_OK);
  sq_polynomial* again = nullptr;
  REQUIRE(sq_polynomial_parse(s.c_str(), 1, &again) == SQ_OK);
  sq_complex w{};
  REQUIRE(sq_polynomial_evaluate(again, &pt, 1, &w) == SQ_OK);
  CHECK(w.re == 0.3);
  CHECK(w.im == 0.1);
  sq_polynomial_free(again);

  sq_polynomial* bad = nullptr;
  CHECK(sq_polynomial_parse("z1 +", 1, &bad) == SQ_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::strlen(sq_last_error()) > 0);
  CHECK(sq_polynomial_evaluate(a, &pt, 2, &v) != SQ_OK);
  sq_polynomial_free(a);
  sq_polynomial_free(b);
  sq_polynomial_free(c);
  sq_polynomial_free(nullptr);
}

TEST_CASE("faq drift through handles") {
  sq_polynomial* h = nullptr;
  sq_polynomial* r = nullptr;
  REQUIRE(sq_polynomial_parse("z1*z1c", 1, &h) == SQ_OK);
  REQUIRE(sq_polynomial_parse("0.5*z1", 1, &r) == SQ_OK);
  sq_faq_system* s = nullptr;
  const sq_polynomial* chans[] = {r};
  REQUIRE(sq_faq_create(h, chans, 1, &s) == SQ_OK);
  const sq_complex pt{1.0, 0.0};
  sq_complex d{};
  REQUIRE(sq_faq_drift(s, &pt, 1, &d) == SQ_OK);
  // -i z - 0.25 z
  CHECK(std::abs(d.re + 0.25) < 1e-15);
  CHECK(std::abs(d.im + 1.0) < 1e-15);
  double div = 0.0;
  REQUIRE(sq_faq_divergence(s, &pt, 1, &div) == SQ_OK);
  CHECK(std::abs(div + 0.5) < 1e-15);
  sq_faq_free(s);
  sq_polynomial_free(h);
  sq_polynomial_free(r);
}

TEST_CASE("stationary state through handles") {
  sq_lindblad_model* m = nullptr;
  REQUIRE(sq_model_limit_cycle(1.0, 1.0, 1.0, 20, &m) == SQ_OK);
  sq_density* rho = nullptr;
  REQUIRE(sq_stationary(m, 0.0, &rho, nullptr) == SQ_OK);
  size_t dim = 0;
  REQUIRE(sq_density_dim(rho, &dim) == SQ_OK);
  CHECK(dim == 20);
  std::vector<sq_complex> mat(dim * dim);
  CHECK(sq_density_matrix(rho, mat.data(), 3) == SQ_ERR_DIMENSION);
  REQUIRE(sq_density_matrix(rho, mat.data(), mat.size()) == SQ_OK);
  CHECK(std::abs(mat[0].re - std::exp(-1.0)) < 1e-8);
  std::vector<sq_complex> n(dim * dim, sq_complex{0.0, 0.0});
  for (size_t k = 0; k < dim; ++k) n[k * dim + k].re = static_cast<double>(k);
  sq_complex mean{};
  REQUIRE(sq_density_expectation(rho, n.data(), dim, &mean) == SQ_OK);
  CHECK(std::abs(mean.re - 1.0) < 1e-8);
  double res = 1.0;
  REQUIRE(sq_stationary_residual(m, rho, &res) == SQ_OK);
  CHECK(res < 1e-10);
  sq_density_free(rho);
  sq_model_free(m);

  REQUIRE(sq_model_limit_cycle(1.0, 0.0, 1.0, 10, &m) == SQ_OK);
  size_t null_dim = 0;
  CHECK(sq_stationary(m, 0.0, &rho, &null_dim) == SQ_ERR_DEGENERATE);
  CHECK(null_dim == 2);
  sq_model_free(m);

  CHECK(sq_model_oscillator(-1.0, 0.1, 0.0, 10, &m) == SQ_ERR_INVALID_ARGUMENT);
  CHECK(sq_model_rotator_spin(1.0, 1.0, 0.2, 4, &m) == SQ_OK);
  sq_model_free(m);
}

TEST_CASE("closed forms") {
  double v = 0.0;
  REQUIRE(sq_mean_n(1.0, &v) == SQ_OK);
  CHECK(std::abs(v - 1.0) < 1e-12);
  REQUIRE(sq_ly2_analytic(100.0, &v) == SQ_OK);
  CHECK(std::abs(v - 12.530979266899152) < 1e-12);
  REQUIRE(sq_generating_function(2.0, 1.0, &v) == SQ_OK);
  CHECK(std::abs(v - 1.0) < 1e-12);
  REQUIRE(sq_kummer_phi(1.0, 2.0, 1.0, &v) == SQ_OK);
  CHECK(std::abs(v - (std::exp(1.0) - 1.0)) < 1e-13);
  REQUIRE(sq_mandel_q(2.0, &v) == SQ_OK);
  CHECK(v > 0.0);
  CHECK(sq_ly2_analytic(-1.0, &v) == SQ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("config entry points") {
  size_t needed = 0;
  CHECK(sq_config_schema(nullptr, 0, &needed) == SQ_OK);
  CHECK(needed > 1);
  std::string buf(needed, '\0');
  CHECK(sq_config_schema(buf.data(), buf.size(), &needed) == SQ_OK);
  std::string report(4096, '\0');
  CHECK(sq_config_validate("/nonexistent.json", report.data(), report.size(), &needed) != SQ_OK);
}
