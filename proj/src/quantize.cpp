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

#include "semiquant/quantize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include "semiquant/csv.hpp"
#include "semiquant/error.hpp"

namespace semiquant {

FockSpace::FockSpace(std::vector<std::size_t> mode_dims) : dims_(std::move(mode_dims)) {
  if (dims_.empty()) fail(ErrorKind::invalid_argument, "FockSpace: at least one mode required");
  for (std::size_t d : dims_) {
    if (d < 2) fail(ErrorKind::invalid_argument, "FockSpace: every mode needs dim >= 2");
    total_ *= d;
  }
}

std::size_t FockSpace::index(std::span<const std::size_t> occupations) const {
  if (occupations.size() != dims_.size()) fail(ErrorKind::dimension, "FockSpace::index: wrong mode count");
  std::size_t idx = 0;
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    if (occupations[m] >= dims_[m]) fail(ErrorKind::invalid_argument, "FockSpace::index: occupation out of range");
    idx = idx * dims_[m] + occupations[m];
  }
  return idx;
}

std::vector<std::size_t> FockSpace::occupations(std::size_t index) const {
  std::vector<std::size_t> occ(dims_.size());
  for (std::size_t m = dims_.size(); m-- > 0;) {
    occ[m] = index % dims_[m];
    index /= dims_[m];
  }
  return occ;
}

SpinRep::SpinRep(double l) {
  const double twice = 2.0 * l;
  if (!(l >= 0.0) || std::abs(twice - std::round(twice)) > 1e-12) {
    fail(ErrorKind::invalid_argument, "SpinRep: l must be a non-negative half-integer");
  }
  twice_l_ = static_cast<unsigned>(std::lround(twice));
}

SpinRep SpinRep::from_twice(unsigned twice_l) {
  SpinRep r;
  r.twice_l_ = twice_l;
  return r;
}

std::size_t basis_dim(const BasisTag& tag) {
  return std::visit(
      [](const auto& b) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, FockSpace>) {
          return b.total_dim();
        } else {
          return b.dim();
        }
      },
      tag);
}

OperatorMatrix::OperatorMatrix(Eigen::MatrixXcd m, BasisTag tag) : m_(std::move(m)), tag_(std::move(tag)) {
  const auto d = static_cast<Eigen::Index>(basis_dim(tag_));
  if (m_.rows() != d || m_.cols() != d) {
    fail(ErrorKind::dimension, "OperatorMatrix: matrix is " + std::to_string(m_.rows()) + "x" +
                                   std::to_string(m_.cols()) + " but basis has dimension " + std::to_string(d));
  }
  if (!m_.allFinite()) fail(ErrorKind::numerical, "OperatorMatrix: non-finite entry");
}

OperatorMatrix OperatorMatrix::identity(const BasisTag& tag) {
  const auto d = static_cast<Eigen::Index>(basis_dim(tag));
  return OperatorMatrix(Eigen::MatrixXcd::Identity(d, d), tag);
}

OperatorMatrix OperatorMatrix::zero(const BasisTag& tag) {
  const auto d = static_cast<Eigen::Index>(basis_dim(tag));
  return OperatorMatrix(Eigen::MatrixXcd::Zero(d, d), tag);
}

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix(m_.adjoint(), tag_); }

bool OperatorMatrix::is_hermitian(double tol) const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol; }

double OperatorMatrix::max_abs() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

void require_same_dim(const OperatorMatrix& a, const OperatorMatrix& b, const char* where) {
  if (a.dim() != b.dim()) {
    fail(ErrorKind::dimension, std::string(where) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                                   std::to_string(b.dim()) + ")");
  }
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& o) {
  require_same_dim(*this, o, "operator+");
  m_ += o.m_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& o) {
  require_same_dim(*this, o, "operator-");
  m_ -= o.m_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a, b, "operator*");
  return OperatorMatrix(a.m_ * b.m_, a.tag_);
}

namespace {

Eigen::MatrixXcd ladder(std::size_t dim, bool raise) {
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) {
    const double amp = std::sqrt(static_cast<double>(n));
    if (raise) {
      m(n, n - 1) = amp;
    } else {
      m(n - 1, n) = amp;
    }
  }
  return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double binomial(unsigned n, unsigned k) {
  double r = 1.0;
  for (unsigned j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
  return r;
}

// Single-mode ordered monomial for k annihilators and l creators.
Eigen::MatrixXcd mode_monomial(std::size_t dim, unsigned k, unsigned l, Ordering ordering) {
  const auto d = static_cast<Eigen::Index>(dim);
  const Eigen::MatrixXcd a = ladder(dim, false);
  const Eigen::MatrixXcd ad = ladder(dim, true);
  if (ordering == Ordering::normal || k == 0 || l == 0) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(d, d);
    for (unsigned j = 0; j < l; ++j) out = out * ad;
    for (unsigned j = 0; j < k; ++j) out = out * a;
    return out;
  }
  const unsigned n = k + l;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<unsigned>(std::popcount(mask)) != k) continue;
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(d, d);
    for (unsigned pos = 0; pos < n; ++pos) prod = prod * (((mask >> pos) & 1u) ? a : ad);
    sum += prod;
  }
  return sum / binomial(n, k);
}

}  // namespace

OperatorMatrix annihilation(std::size_t dim) { return OperatorMatrix(ladder(dim, false), FockSpace::single(dim)); }

OperatorMatrix creation(std::size_t dim) { return OperatorMatrix(ladder(dim, true), FockSpace::single(dim)); }

OperatorMatrix number(std::size_t dim) {
  Eigen::VectorXcd diag(static_cast<Eigen::Index>(dim));
  for (std::size_t n = 0; n < dim; ++n) diag[static_cast<Eigen::Index>(n)] = static_cast<double>(n);
  return OperatorMatrix(diag.asDiagonal(), FockSpace::single(dim));
}

OperatorMatrix quantize(const Polynomial& p, const FockSpace& space, Ordering ordering) {
  if (p.mode_count() != space.mode_count()) {
    fail(ErrorKind::dimension, "quantize: polynomial has " + std::to_string(p.mode_count()) +
                                   " modes, space has " + std::to_string(space.mode_count()));
  }
  const auto d = static_cast<Eigen::Index>(space.total_dim());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  std::map<std::tuple<std::size_t, unsigned, unsigned>, Eigen::MatrixXcd> cache;
  for (const auto& [e, c] : p.terms()) {
    const unsigned deg = std::accumulate(e.begin(), e.end(), 0u);
    if (deg > kMaxQuantizeDegree) {
      fail(ErrorKind::invalid_argument, "quantize: term of degree " + std::to_string(deg) + " exceeds limit " +
                                            std::to_string(kMaxQuantizeDegree));
    }
    Eigen::MatrixXcd term;
    for (std::size_t m = 0; m < space.mode_count(); ++m) {
      const auto key = std::make_tuple(m, e[2 * m], e[2 * m + 1]);
      auto it = cache.find(key);
      if (it == cache.end()) {
        it = cache.emplace(key, mode_monomial(space.mode_dim(m), e[2 * m], e[2 * m + 1], ordering)).first;
      }
      term = m == 0 ? it->second : kron(term, it->second);
    }
    out += c * term;
  }
  return OperatorMatrix(std::move(out), space);
}

OperatorMatrix weyl_quantize(const Polynomial& p, const FockSpace& space) {
  return quantize(p, space, Ordering::weyl);
}

OperatorMatrix normal_quantize(const Polynomial& p, const FockSpace& space) {
  return quantize(p, space, Ordering::normal);
}

SpinBilinears spin_bilinears() {
  const Polynomial z1 = Polynomial::variable(2, 0, Var::z);
  const Polynomial z1c = Polynomial::variable(2, 0, Var::zc);
  const Polynomial z2 = Polynomial::variable(2, 1, Var::z);
  const Polynomial z2c = Polynomial::variable(2, 1, Var::zc);
  return {(z1c * z2 + z2c * z1) * 0.5, (z2c * z1 - z1c * z2) * Complex(0.0, 0.5), (z1 * z1c - z2 * z2c) * 0.5};
}

SpinTriple schwinger_spin(const FockSpace& space) {
  if (space.mode_count() != 2) fail(ErrorKind::invalid_argument, "schwinger_spin: requires exactly two modes");
  const OperatorMatrix a1 = tensor_embed(annihilation(space.mode_dim(0)), 0, space);
  const OperatorMatrix a2 = tensor_embed(annihilation(space.mode_dim(1)), 1, space);
  const OperatorMatrix a1d = a1.adjoint();
  const OperatorMatrix a2d = a2.adjoint();
  return {(a1d * a2 + a2d * a1) * 0.5, (a2d * a1 - a1d * a2) * Complex(0.0, 0.5), (a1d * a1 - a2d * a2) * 0.5};
}

SpinTriple spin_operators(const SpinRep& rep) {
  const auto d = static_cast<Eigen::Index>(rep.dim());
  const double l = rep.l();
  Eigen::MatrixXcd lz = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd lp = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double m = l - static_cast<double>(k);
    lz(k, k) = m;
    if (k > 0) lp(k - 1, k) = std::sqrt(l * (l + 1.0) - m * (m + 1.0));
  }
  const Eigen::MatrixXcd lm = lp.adjoint();
  return {OperatorMatrix((lp + lm) * 0.5, rep), OperatorMatrix((lp - lm) * Complex(0.0, -0.5), rep),
          OperatorMatrix(std::move(lz), rep)};
}

OperatorMatrix symmetrize_product(std::span<const OperatorMatrix> ops) {
  if (ops.empty()) fail(ErrorKind::invalid_argument, "symmetrize_product: no operators");
  if (ops.size() > 8) fail(ErrorKind::invalid_argument, "symmetrize_product: at most 8 factors");
  for (const auto& op : ops) require_same_dim(ops.front(), op, "symmetrize_product");
  std::vector<std::size_t> perm(ops.size());
  std::iota(perm.begin(), perm.end(), 0);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(ops.front().matrix().rows(), ops.front().matrix().cols());
  double count = 0.0;
  do {
    Eigen::MatrixXcd prod = ops[perm[0]].matrix();
    for (std::size_t k = 1; k < perm.size(); ++k) prod = prod * ops[perm[k]].matrix();
    sum += prod;
    count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return OperatorMatrix(sum / count, ops.front().basis());
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a, b, "commutator");
  return OperatorMatrix(a.matrix() * b.matrix() - b.matrix() * a.matrix(), a.basis());
}

OperatorMatrix tensor_embed(const OperatorMatrix& op, std::size_t mode, const FockSpace& space) {
  if (mode >= space.mode_count()) fail(ErrorKind::invalid_argument, "tensor_embed: mode out of range");
  if (op.dim() != space.mode_dim(mode)) {
    fail(ErrorKind::dimension, "tensor_embed: operator dimension " + std::to_string(op.dim()) +
                                   " does not match mode dimension " + std::to_string(space.mode_dim(mode)));
  }
  std::size_t before = 1, after = 1;
  for (std::size_t m = 0; m < mode; ++m) before *= space.mode_dim(m);
  for (std::size_t m = mode + 1; m < space.mode_count(); ++m) after *= space.mode_dim(m);
  const Eigen::MatrixXcd left = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(before), static_cast<Eigen::Index>(before));
  const Eigen::MatrixXcd right = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(after), static_cast<Eigen::Index>(after));
  return OperatorMatrix(kron(kron(left, op.matrix()), right), space);
}

std::vector<std::size_t> safe_subspace(const FockSpace& space, std::size_t ladder_depth) {
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < space.total_dim(); ++idx) {
    const auto occ = space.occupations(idx);
    bool ok = true;
    for (std::size_t m = 0; m < occ.size(); ++m) ok = ok && occ[m] + ladder_depth < space.mode_dim(m);
    if (ok) out.push_back(idx);
  }
  return out;
}

Eigen::MatrixXcd restrict_to(const Eigen::MatrixXcd& m, std::span<const std::size_t> indices) {
  const auto n = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = m(static_cast<Eigen::Index>(indices[static_cast<std::size_t>(i)]),
                    static_cast<Eigen::Index>(indices[static_cast<std::size_t>(j)]));
    }
  }
  return out;
}

void write_operator_csv(std::ostream& os, const OperatorMatrix& op) {
  csv::Writer w(os);
  w.header({"row", "col", "re", "im"});
  const auto& m = op.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      w.row({static_cast<double>(i), static_cast<double>(j), m(i, j).real(), m(i, j).imag()});
    }
  }
}

}  // namespace semiquant
