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

#include "semiquant/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <ostream>

#include "semiquant/csv.hpp"
#include "semiquant/error.hpp"
#include "semiquant/rk4.hpp"

namespace semiquant {

namespace {

constexpr Complex kI{0.0, 1.0};

double min_hermitian_eigenvalue(const Eigen::MatrixXcd& rho) {
  const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// -iH - sum_j R_j^+ R_j, so that rhs = K rho + rho K^+ + 2 sum_j R_j rho R_j^+.
Eigen::MatrixXcd effective_generator(const LindbladModel& m) {
  Eigen::MatrixXcd k = -kI * m.hamiltonian().matrix();
  for (const auto& r : m.channels()) k -= r.matrix().adjoint() * r.matrix();
  return k;
}

Eigen::MatrixXcd apply_rhs(const Eigen::MatrixXcd& k, const std::vector<OperatorMatrix>& channels,
                           const Eigen::MatrixXcd& rho) {
  // rho Hermitian: rhs = X + X^+ with X = K rho + sum R rho R^+, which keeps
  // the result exactly Hermitian in floating point
  Eigen::MatrixXcd out = k * rho;
  for (const auto& r : channels) out.noalias() += r.matrix() * rho * r.matrix().adjoint();
  out += out.adjoint().eval();
  return out;
}

Eigen::MatrixXcd apply_rhs_general(const Eigen::MatrixXcd& k, const std::vector<OperatorMatrix>& channels,
                                   const Eigen::MatrixXcd& rho) {
  Eigen::MatrixXcd out = k * rho + rho * k.adjoint();
  for (const auto& r : channels) out.noalias() += 2.0 * r.matrix() * rho * r.matrix().adjoint();
  return out;
}

}  // namespace

DensityDiagnostics diagnose(const Eigen::MatrixXcd& rho) {
  DensityDiagnostics d;
  d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  d.min_eigenvalue = min_hermitian_eigenvalue(rho);
  return d;
}

DensityMatrix::DensityMatrix(OperatorMatrix mat, const DensityTolerances& tol) : mat_(std::move(mat)) {
  const DensityDiagnostics d = diagnose(mat_.matrix());
  if (d.hermiticity_error > tol.hermiticity) {
    fail(ErrorKind::numerical, "DensityMatrix: not Hermitian (max |rho - rho^+| = " +
                                   csv::format_number(d.hermiticity_error) + ")");
  }
  if (d.trace_error > tol.trace) {
    fail(ErrorKind::numerical, "DensityMatrix: trace deviates from 1 by " + csv::format_number(d.trace_error));
  }
  if (d.min_eigenvalue < -tol.positivity) {
    fail(ErrorKind::numerical, "DensityMatrix: negative eigenvalue " + csv::format_number(d.min_eigenvalue) +
                                   "; the step is too large or the truncation too small");
  }
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi, const BasisTag& tag) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) fail(ErrorKind::invalid_argument, "DensityMatrix::pure: zero vector");
  const Eigen::VectorXcd v = psi / norm;
  return DensityMatrix(OperatorMatrix(v * v.adjoint(), tag));
}

DensityMatrix DensityMatrix::basis_state(std::size_t n, const BasisTag& tag) {
  const auto d = static_cast<Eigen::Index>(basis_dim(tag));
  if (static_cast<Eigen::Index>(n) >= d) fail(ErrorKind::invalid_argument, "DensityMatrix::basis_state: index out of range");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
  psi[static_cast<Eigen::Index>(n)] = 1.0;
  return pure(psi, tag);
}

double DensityMatrix::purity() const { return (matrix() * matrix()).trace().real(); }

LindbladModel::LindbladModel(OperatorMatrix hamiltonian, std::vector<OperatorMatrix> channels)
    : h_(std::move(hamiltonian)), channels_(std::move(channels)) {
  if (!h_.is_hermitian(1e-12)) fail(ErrorKind::invalid_argument, "LindbladModel: Hamiltonian is not Hermitian");
  for (std::size_t j = 0; j < channels_.size(); ++j) {
    if (channels_[j].dim() != h_.dim()) {
      fail(ErrorKind::dimension, "LindbladModel: channel " + std::to_string(j) + " has dimension " +
                                     std::to_string(channels_[j].dim()) + ", Hamiltonian " + std::to_string(h_.dim()));
    }
  }
}

OperatorMatrix lindblad_rhs(const LindbladModel& m, const OperatorMatrix& rho) {
  require_same_dim(m.hamiltonian(), rho, "lindblad_rhs");
  return OperatorMatrix(apply_rhs_general(effective_generator(m), m.channels(), rho.matrix()), rho.basis());
}

Eigen::MatrixXcd liouvillian_matrix(const LindbladModel& m) {
  const auto d = static_cast<Eigen::Index>(m.dim());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  // vec(A X B) = (B^T kron A) vec(X) for column stacking.
  auto kron = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  const Eigen::MatrixXcd k = effective_generator(m);
  Eigen::MatrixXcd l = kron(id, k) + kron(k.conjugate(), id);
  for (const auto& r : m.channels()) l += 2.0 * kron(r.matrix().conjugate(), r.matrix());
  return l;
}

EvolveResult evolve(const LindbladModel& m, const DensityMatrix& rho0, double t_end, const EvolveOptions& opts) {
  require_same_dim(m.hamiltonian(), rho0.op(), "evolve");
  for (const auto& obs : opts.observables) require_same_dim(m.hamiltonian(), obs.op, "evolve observable");
  const std::size_t steps = rk4_step_count(t_end, opts.dt);
  const double h = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);
  const Eigen::MatrixXcd k = effective_generator(m);
  auto rhs = [&](double, const Eigen::MatrixXcd& rho) { return apply_rhs(k, m.channels(), rho); };

  std::vector<double> times;
  std::vector<std::vector<Complex>> expectations;
  double max_trace = 0.0, max_herm = 0.0, min_eig = 1.0;

  Eigen::MatrixXcd rho = rho0.matrix();
  auto sample = [&](double t) {
    const DensityDiagnostics d = diagnose(rho);
    max_trace = std::max(max_trace, d.trace_error);
    max_herm = std::max(max_herm, d.hermiticity_error);
    min_eig = std::min(min_eig, d.min_eigenvalue);
    if (d.min_eigenvalue < -opts.positivity_abort) {
      fail(ErrorKind::numerical, "evolve: positivity violated at t = " + csv::format_number(t) +
                                     " (min eigenvalue " + csv::format_number(d.min_eigenvalue) +
                                     "); step too large or truncation too small");
    }
    if (!rho.allFinite()) fail(ErrorKind::numerical, "evolve: non-finite density matrix at t = " + csv::format_number(t));
    times.push_back(t);
    std::vector<Complex> row;
    row.reserve(opts.observables.size());
    for (const auto& obs : opts.observables) row.push_back((rho.transpose().cwiseProduct(obs.op.matrix())).sum());
    expectations.push_back(std::move(row));
  };

  sample(0.0);
  for (std::size_t s = 1; s <= steps; ++s) {
    rho = rk4_step(rhs, static_cast<double>(s - 1) * h, rho, h);
    const bool last = s == steps;
    if (last || (opts.sample_every != 0 && s % opts.sample_every == 0)) sample(last ? t_end : static_cast<double>(s) * h);
  }

  std::vector<std::string> names;
  for (const auto& obs : opts.observables) names.push_back(obs.name);
  return EvolveResult{DensityMatrix(OperatorMatrix(rho, rho0.op().basis()), opts.final_tolerances),
                      std::move(times),
                      std::move(expectations),
                      std::move(names),
                      max_trace,
                      max_herm,
                      min_eig};
}

DensityMatrix stationary(const LindbladModel& m, const StationaryOptions& opts) {
  const auto d = static_cast<Eigen::Index>(m.dim());
  const Eigen::MatrixXcd l = liouvillian_matrix(m);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(l, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = opts.null_tol * sv[0];
  std::size_t null_dim = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) null_dim += sv[k] <= cutoff ? 1 : 0;
  if (null_dim != 1) {
    throw DegenerateStationaryState(null_dim, "stationary: null space of the generator has dimension " +
                                                  std::to_string(null_dim) + " (expected 1)");
  }
  const Eigen::VectorXcd v = svd.matrixV().col(sv.size() - 1);
  Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  const double min_eig = min_hermitian_eigenvalue(rho);
  if (min_eig < -opts.tolerances.positivity) {
    fail(ErrorKind::numerical, "stationary: negative eigenvalue " + csv::format_number(min_eig) +
                                   " in the stationary state; increase the truncation");
  }
  return DensityMatrix(OperatorMatrix(std::move(rho), m.hamiltonian().basis()), opts.tolerances);
}

double stationary_residual(const LindbladModel& m, const DensityMatrix& rho) {
  return lindblad_rhs(m, rho.op()).max_abs();
}

Complex trace_product(const OperatorMatrix& rho, const OperatorMatrix& a) {
  require_same_dim(rho, a, "trace_product");
  return (rho.matrix().transpose().cwiseProduct(a.matrix())).sum();
}

Complex expectation(const DensityMatrix& rho, const OperatorMatrix& a) { return trace_product(rho.op(), a); }

OperatorMatrix adjoint_generator(const OperatorMatrix& a, const LindbladModel& m) {
  require_same_dim(m.hamiltonian(), a, "adjoint_generator");
  const Eigen::MatrixXcd& am = a.matrix();
  const Eigen::MatrixXcd& h = m.hamiltonian().matrix();
  Eigen::MatrixXcd out = kI * (h * am - am * h);
  for (const auto& r : m.channels()) {
    const Eigen::MatrixXcd& rm = r.matrix();
    const Eigen::MatrixXcd rd = rm.adjoint();
    out += rd * (am * rm - rm * am) + (rd * am - am * rd) * rm;
  }
  return OperatorMatrix(std::move(out), a.basis());
}

Complex adjoint_rate(const OperatorMatrix& a, const LindbladModel& m, const DensityMatrix& rho) {
  require_same_dim(a, rho.op(), "adjoint_rate");
  return expectation(rho, adjoint_generator(a, m));
}

DensityMatrix random_density(const BasisTag& tag, std::mt19937_64& gen) {
  const auto d = static_cast<Eigen::Index>(basis_dim(tag));
  auto uniform = [&] { return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53; };
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double r = std::sqrt(-2.0 * std::log(uniform()));
      const double theta = 2.0 * std::numbers::pi * uniform();
      g(i, j) = std::polar(r, theta);
    }
  }
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(OperatorMatrix(std::move(rho), tag));
}

void write_expectation_csv(std::ostream& os, const EvolveResult& r) {
  csv::Writer w(os);
  std::vector<std::string> header{"t"};
  for (const auto& n : r.names) {
    header.push_back(n + "_re");
    header.push_back(n + "_im");
  }
  w.header(header);
  std::vector<double> row;
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    row.assign(1, r.times[k]);
    for (const auto& v : r.expectations[k]) {
      row.push_back(v.real());
      row.push_back(v.imag());
    }
    w.row(row);
  }
}

}  // namespace semiquant
