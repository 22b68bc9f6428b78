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

// Operators on truncated bosonic Fock spaces and on spin-l representations.
// Classical polynomials in z, z* become operators by z -> a, z* -> a^+ with
// a fixed ordering rule. Dense matrices throughout.

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "semiquant/polynomial.hpp"

namespace semiquant {

/// Product of per-mode truncated Fock spaces. Mode 0 is the most significant
/// index of the tensor product: |n0, n1> sits at n0 * dim1 + n1.
class FockSpace {
 public:
  explicit FockSpace(std::vector<std::size_t> mode_dims);
  static FockSpace single(std::size_t dim) { return FockSpace({dim}); }

  std::size_t mode_count() const noexcept { return dims_.size(); }
  std::size_t mode_dim(std::size_t mode) const { return dims_.at(mode); }
  const std::vector<std::size_t>& mode_dims() const noexcept { return dims_; }
  std::size_t total_dim() const noexcept { return total_; }

  std::size_t index(std::span<const std::size_t> occupations) const;
  std::vector<std::size_t> occupations(std::size_t index) const;

  friend bool operator==(const FockSpace&, const FockSpace&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

/// Spin-l irrep, stored as 2l so half-integers are exact. Basis order is
/// m = l, l-1, ..., -l.
class SpinRep {
 public:
  explicit SpinRep(double l);
  static SpinRep from_twice(unsigned twice_l);

  double l() const noexcept { return 0.5 * twice_l_; }
  unsigned twice_l() const noexcept { return twice_l_; }
  std::size_t dim() const noexcept { return twice_l_ + 1; }

  friend bool operator==(const SpinRep&, const SpinRep&) = default;

 private:
  SpinRep() = default;
  unsigned twice_l_ = 0;
};

using BasisTag = std::variant<FockSpace, SpinRep>;

std::size_t basis_dim(const BasisTag& tag);

class OperatorMatrix {
 public:
  OperatorMatrix(Eigen::MatrixXcd m, BasisTag tag);

  static OperatorMatrix identity(const BasisTag& tag);
  static OperatorMatrix zero(const BasisTag& tag);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
  const BasisTag& basis() const noexcept { return tag_; }

  OperatorMatrix adjoint() const;
  bool is_hermitian(double tol) const;
  /// max |entry|
  double max_abs() const;
  Complex trace() const { return m_.trace(); }

  OperatorMatrix& operator+=(const OperatorMatrix& o);
  OperatorMatrix& operator-=(const OperatorMatrix& o);
  OperatorMatrix& operator*=(Complex s);

  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
  friend OperatorMatrix operator*(OperatorMatrix a, Complex s) { return a *= s; }
  friend OperatorMatrix operator*(Complex s, OperatorMatrix a) { return a *= s; }
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

 private:
  Eigen::MatrixXcd m_;
  BasisTag tag_;
};

/// Throws ErrorKind::dimension when the operators act on different dimensions.
void require_same_dim(const OperatorMatrix& a, const OperatorMatrix& b, const char* where);

OperatorMatrix annihilation(std::size_t dim);
OperatorMatrix creation(std::size_t dim);
OperatorMatrix number(std::size_t dim);

enum class Ordering { weyl, normal };

/// Largest per-term total degree accepted by the quantizers.
inline constexpr unsigned kMaxQuantizeDegree = 8;

/// z^k z*^l -> average of all distinct interleavings of k copies of a and l of a^+.
OperatorMatrix weyl_quantize(const Polynomial& p, const FockSpace& space);
/// z^k z*^l -> (a^+)^l a^k.
OperatorMatrix normal_quantize(const Polynomial& p, const FockSpace& space);
OperatorMatrix quantize(const Polynomial& p, const FockSpace& space, Ordering ordering);

struct SpinTriple {
  OperatorMatrix lx;
  OperatorMatrix ly;
  OperatorMatrix lz;
};

/// Schwinger bilinears on a two-mode space:
/// lx = (a1^+ a2 + a2^+ a1)/2, ly = i(a2^+ a1 - a1^+ a2)/2, lz = (n1 - n2)/2.
SpinTriple schwinger_spin(const FockSpace& space);

/// Classical counterparts of the Schwinger bilinears as polynomials in z1, z2.
struct SpinBilinears {
  Polynomial lx;
  Polynomial ly;
  Polynomial lz;
};
SpinBilinears spin_bilinears();

SpinTriple spin_operators(const SpinRep& rep);

/// Average of the products over all orderings of ops (at most 8 factors).
OperatorMatrix symmetrize_product(std::span<const OperatorMatrix> ops);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// Identity-padded Kronecker embedding of a single-mode operator.
OperatorMatrix tensor_embed(const OperatorMatrix& op, std::size_t mode, const FockSpace& space);

/// Basis states whose images under `ladder_depth` raising steps in every mode
/// stay inside the truncation: all n_a < dim_a - ladder_depth.
std::vector<std::size_t> safe_subspace(const FockSpace& space, std::size_t ladder_depth);

/// Restriction of a matrix to the given basis indices (rows and columns).
Eigen::MatrixXcd restrict_to(const Eigen::MatrixXcd& m, std::span<const std::size_t> indices);

/// CSV with columns row, col, re, im (every entry).
void write_operator_csv(std::ostream& os, const OperatorMatrix& op);

}  // namespace semiquant
