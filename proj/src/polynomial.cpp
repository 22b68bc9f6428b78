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

#include "semiquant/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>

#include "semiquant/error.hpp"

namespace semiquant {

PhasePoint::PhasePoint(std::vector<Complex> coords) : coords_(std::move(coords)) {
  for (const auto& c : coords_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      fail(ErrorKind::invalid_argument, "PhasePoint: non-finite coordinate");
    }
  }
}

Polynomial::Polynomial(std::size_t mode_count) : modes_(mode_count) {
  if (mode_count == 0) fail(ErrorKind::invalid_argument, "Polynomial: mode_count must be positive");
}

Polynomial Polynomial::constant(std::size_t mode_count, Complex c) {
  Polynomial p(mode_count);
  p.add_term(Exponents(2 * mode_count, 0u), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t mode_count, std::size_t mode, Var which) {
  if (mode >= mode_count) fail(ErrorKind::invalid_argument, "Polynomial::variable: mode index out of range");
  Exponents e(2 * mode_count, 0u);
  e[2 * mode + (which == Var::z ? 0 : 1)] = 1;
  return monomial(mode_count, std::move(e), 1.0);
}

Polynomial Polynomial::monomial(std::size_t mode_count, Exponents exps, Complex coeff) {
  Polynomial p(mode_count);
  p.add_term(exps, coeff);
  return p;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
  }
  return d;
}

Complex Polynomial::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Complex{} : it->second;
}

void Polynomial::add_term(const Exponents& exps, Complex coeff) {
  if (exps.size() != 2 * modes_) fail(ErrorKind::dimension, "Polynomial: exponent vector has wrong length");
  if (coeff == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(exps, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

void Polynomial::require_same_modes(const Polynomial& other, const char* op) const {
  if (modes_ != other.modes_) {
    fail(ErrorKind::dimension, std::string("Polynomial ") + op + ": mode_count mismatch (" +
                                   std::to_string(modes_) + " vs " + std::to_string(other.modes_) + ")");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_modes(other, "add");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_modes(other, "subtract");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(Complex s) {
  if (s == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    it = it->second == Complex{} ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_modes(b, "multiply");
  Polynomial out(a.modes_);
  Exponents e(2 * a.modes_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::conjugate() const {
  Polynomial out(modes_);
  Exponents e(2 * modes_);
  for (const auto& [src, c] : terms_) {
    for (std::size_t m = 0; m < modes_; ++m) {
      e[2 * m] = src[2 * m + 1];
      e[2 * m + 1] = src[2 * m];
    }
    out.add_term(e, std::conj(c));
  }
  return out;
}

Polynomial Polynomial::partial(std::size_t mode, Var wrt) const {
  if (mode >= modes_) {
    fail(ErrorKind::invalid_argument, "Polynomial::partial: mode " + std::to_string(mode) +
                                          " out of range for mode_count " + std::to_string(modes_));
  }
  const std::size_t slot = 2 * mode + (wrt == Var::z ? 0 : 1);
  Polynomial out(modes_);
  for (const auto& [src, c] : terms_) {
    if (src[slot] == 0) continue;
    Exponents e = src;
    e[slot] -= 1;
    out.add_term(e, c * static_cast<double>(src[slot]));
  }
  return out;
}

Complex Polynomial::evaluate(std::span<const Complex> coords) const {
  if (coords.size() != modes_) {
    fail(ErrorKind::dimension, "Polynomial::evaluate: point has " + std::to_string(coords.size()) +
                                   " coordinates, polynomial has " + std::to_string(modes_) + " modes");
  }
  // Power tables per variable, grown lazily to the largest exponent used.
  std::vector<std::vector<Complex>> powers(2 * modes_, std::vector<Complex>{Complex(1.0, 0.0)});
  auto power = [&](std::size_t slot, unsigned n) -> Complex {
    auto& tab = powers[slot];
    const Complex base = (slot % 2 == 0) ? coords[slot / 2] : std::conj(coords[slot / 2]);
    while (tab.size() <= n) tab.push_back(tab.back() * base);
    return tab[n];
  };
  Complex sum{};
  for (const auto& [e, c] : terms_) {
    Complex t = c;
    for (std::size_t s = 0; s < e.size(); ++s) {
      if (e[s] != 0) t *= power(s, e[s]);
    }
    sum += t;
  }
  return sum;
}

namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_coefficient(Complex c) {
  std::string s = "(" + format_real(c.real());
  if (std::signbit(c.imag())) {
    s += "-" + format_real(-c.imag());
  } else {
    s += "+" + format_real(c.imag());
  }
  return s + "*i)";
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += format_coefficient(c);
    for (std::size_t m = 0; m < modes_; ++m) {
      for (int v = 0; v < 2; ++v) {
        const unsigned k = e[2 * m + v];
        if (k == 0) continue;
        out += "*z" + std::to_string(m + 1) + (v == 1 ? "c" : "");
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
  }
  return out;
}

namespace {

// Recursive-descent parser for sums of products of numbers, `i` and the
// variables zN / zNc, with parentheses, unary signs and integer powers.
class Parser {
 public:
  Parser(std::string_view text, std::size_t modes) : text_(text), modes_(modes) {}

  Polynomial run() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::parse, "Polynomial::parse: " + msg + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected integer exponent");
    const unsigned long n = std::strtoul(std::string(text_.substr(start, pos_ - start)).c_str(), nullptr, 10);
    if (n > 64) error("exponent too large");
    Polynomial out = Polynomial::constant(modes_, 1.0);
    for (unsigned long k = 0; k < n; ++k) out = out * base;
    return out;
  }

  bool ident_char_at(std::size_t p) const {
    return p < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_');
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) error("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
    if (ch == 'i' && !ident_char_at(pos_ + 1)) {
      ++pos_;
      return Polynomial::constant(modes_, Complex(0.0, 1.0));
    }
    if (ch == 'z') return variable();
    error("unexpected character '" + std::string(1, ch) + "'");
  }

  Polynomial number() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) error("malformed number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    // "2i" is an imaginary literal.
    if (pos_ < text_.size() && text_[pos_] == 'i' && !ident_char_at(pos_ + 1)) {
      ++pos_;
      return Polynomial::constant(modes_, Complex(0.0, v));
    }
    return Polynomial::constant(modes_, Complex(v, 0.0));
  }

  Polynomial variable() {
    ++pos_;  // 'z'
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected mode index after 'z'");
    const unsigned long idx = std::strtoul(std::string(text_.substr(start, pos_ - start)).c_str(), nullptr, 10);
    Var which = Var::z;
    if (pos_ < text_.size() && text_[pos_] == 'c') {
      which = Var::zc;
      ++pos_;
    }
    if (ident_char_at(pos_)) error("malformed variable name");
    if (idx == 0 || idx > modes_) {
      error("variable index " + std::to_string(idx) + " outside 1.." + std::to_string(modes_));
    }
    return Polynomial::variable(modes_, idx - 1, which);
  }

  std::string_view text_;
  std::size_t modes_;
  std::size_t pos_ = 0;
};

std::size_t infer_mode_count(std::string_view text) {
  std::size_t best = 1;
  for (std::size_t p = 0; p < text.size(); ++p) {
    if (text[p] != 'z') continue;
    std::size_t q = p + 1;
    std::size_t idx = 0;
    while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q]))) {
      idx = idx * 10 + static_cast<std::size_t>(text[q] - '0');
      ++q;
    }
    best = std::max(best, idx);
  }
  return best;
}

}  // namespace

Polynomial Polynomial::parse(std::string_view text, std::size_t mode_count) {
  const std::size_t modes = mode_count == 0 ? infer_mode_count(text) : mode_count;
  return Parser(text, modes).run();
}

Polynomial poisson_bracket(const Polynomial& a, const Polynomial& b) {
  if (a.mode_count() != b.mode_count()) fail(ErrorKind::dimension, "poisson_bracket: mode_count mismatch");
  Polynomial out(a.mode_count());
  for (std::size_t m = 0; m < a.mode_count(); ++m) {
    out += a.partial(m, Var::z) * b.partial(m, Var::zc);
    out -= a.partial(m, Var::zc) * b.partial(m, Var::z);
  }
  return out * Complex(0.0, -1.0);
}

}  // namespace semiquant
