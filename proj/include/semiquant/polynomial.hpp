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

#pragma once

// Sparse complex polynomials in the phase-space variables z_a and z*_a of a
// multi-mode system. z and z* are independent formal variables: derivatives
// are Wirtinger-style and conjugation acts on the term structure.
//
// Units: hbar = 1, z = (x + i y) / sqrt(2) with dimensionless x, y.

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semiquant {

using Complex = std::complex<double>;

/// Which of the two formal variables of a mode.
enum class Var { z, zc };

/// Exponents laid out as [k_0, l_0, k_1, l_1, ...] where k is the power of z
/// and l the power of z* for each mode.
using Exponents = std::vector<unsigned>;

/// A point in complex phase space, one coordinate per mode.
class PhasePoint {
 public:
  PhasePoint() = default;
  explicit PhasePoint(std::vector<Complex> coords);

  std::size_t size() const noexcept { return coords_.size(); }
  const Complex& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Complex> coords() const noexcept { return coords_; }

 private:
  std::vector<Complex> coords_;
};

class Polynomial {
 public:
  using TermMap = std::map<Exponents, Complex>;

  explicit Polynomial(std::size_t mode_count = 1);

  static Polynomial constant(std::size_t mode_count, Complex c);
  /// The coordinate z_mode (or z*_mode), mode is zero based.
  static Polynomial variable(std::size_t mode_count, std::size_t mode, Var which);
  static Polynomial monomial(std::size_t mode_count, Exponents exps, Complex coeff);

  /// Parses the text form, e.g. "(0.5+0*i)*z1^2*z1c + 2i*z2". Mode numbering
  /// in text is one based; zNc stands for z*_N. When mode_count is zero it is
  /// inferred from the highest mode index that appears (at least 1).
  static Polynomial parse(std::string_view text, std::size_t mode_count = 0);

  std::size_t mode_count() const noexcept { return modes_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Total degree of the highest term, 0 for the zero polynomial.
  unsigned degree() const;
  Complex coefficient(const Exponents& exps) const;

  void add_term(const Exponents& exps, Complex coeff);

  Polynomial conjugate() const;
  Polynomial partial(std::size_t mode, Var wrt) const;
  Complex evaluate(std::span<const Complex> coords) const;
  Complex evaluate(const PhasePoint& p) const { return evaluate(p.coords()); }

  /// Canonical text form; parse(to_string()) reproduces the polynomial exactly.
  std::string to_string() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(Complex s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, Complex s) { return a *= s; }
  friend Polynomial operator*(Complex s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a) { return a *= Complex(-1.0, 0.0); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.modes_ == b.modes_ && a.terms_ == b.terms_;
  }

 private:
  void require_same_modes(const Polynomial& other, const char* op) const;

  std::size_t modes_;
  TermMap terms_;
};

/// {A, B} = -i sum_a (dA/dz_a dB/dz*_a - dA/dz*_a dB/dz_a), so {z, z*} = -i.
Polynomial poisson_bracket(const Polynomial& a, const Polynomial& b);

}  // namespace semiquant
