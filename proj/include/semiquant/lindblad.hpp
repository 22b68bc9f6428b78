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

// Lindblad generator with the unhalved dissipator
//
//   drho/dt = -i[H, rho] + sum_j ([R_j rho, R_j^+] + [R_j, rho R_j^+])
//           = -i[H, rho] + sum_j (2 R_j rho R_j^+ - R_j^+ R_j rho - rho R_j^+ R_j),
//
// i.e. twice the conventional 1/2-normalized dissipator for the same R_j.

#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "semiquant/quantize.hpp"

namespace semiquant {

/// A channel R in this convention equals sqrt(kConventionalDissipatorScale) * L
/// for the conventional jump operator L with D[L] = L rho L^+ - {L^+ L, rho}/2.
inline constexpr double kConventionalDissipatorScale = 2.0;

struct DensityTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  /// Smallest eigenvalue accepted is -positivity.
  double positivity = 1e-8;
};

class DensityMatrix {
 public:
  /// Validates hermiticity, unit trace and positivity; throws ErrorKind::numerical otherwise.
  explicit DensityMatrix(OperatorMatrix mat, const DensityTolerances& tol = {});

  /// |psi><psi| for a normalized copy of psi.
  static DensityMatrix pure(const Eigen::VectorXcd& psi, const BasisTag& tag);
  /// |n><n|
  static DensityMatrix basis_state(std::size_t n, const BasisTag& tag);

  const OperatorMatrix& op() const noexcept { return mat_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return mat_.matrix(); }
  std::size_t dim() const noexcept { return mat_.dim(); }
  double purity() const;

 private:
  OperatorMatrix mat_;
};

struct DensityDiagnostics {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
};
DensityDiagnostics diagnose(const Eigen::MatrixXcd& rho);

class LindbladModel {
 public:
  LindbladModel(OperatorMatrix hamiltonian, std::vector<OperatorMatrix> channels);

  std::size_t dim() const noexcept { return h_.dim(); }
  const OperatorMatrix& hamiltonian() const noexcept { return h_; }
  const std::vector<OperatorMatrix>& channels() const noexcept { return channels_; }

 private:
  OperatorMatrix h_;
  std::vector<OperatorMatrix> channels_;
};

OperatorMatrix lindblad_rhs(const LindbladModel& m, const OperatorMatrix& rho);

/// The generator as a dim^2 x dim^2 matrix acting on column-stacked vec(rho).
Eigen::MatrixXcd liouvillian_matrix(const LindbladModel& m);

struct NamedObservable {
  std::string name;
  OperatorMatrix op;
};

struct EvolveOptions {
  double dt = 1e-3;
  /// Record expectations and check positivity every this many steps (0: only at the end).
  std::size_t sample_every = 100;
  /// Abort when the smallest eigenvalue at a check drops below -positivity_abort.
  double positivity_abort = 1e-6;
  DensityTolerances final_tolerances{};
  std::vector<NamedObservable> observables;
};

struct EvolveResult {
  DensityMatrix final_state;
  std::vector<double> times;
  /// expectations[k][j] = tr(rho(times[k]) observables[j])
  std::vector<std::vector<Complex>> expectations;
  std::vector<std::string> names;
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
};

EvolveResult evolve(const LindbladModel& m, const DensityMatrix& rho0, double t_end, const EvolveOptions& opts);

struct StationaryOptions {
  /// Singular values below null_tol * sigma_max count as null directions.
  double null_tol = 1e-9;
  DensityTolerances tolerances{};
};

/// Unique stationary state from the null space of the vectorized generator.
/// Throws DegenerateStationaryState when the null space is not one dimensional
/// and ErrorKind::numerical on a positivity violation.
DensityMatrix stationary(const LindbladModel& m, const StationaryOptions& opts = {});

/// max |lindblad_rhs(rho)|
double stationary_residual(const LindbladModel& m, const DensityMatrix& rho);

Complex expectation(const DensityMatrix& rho, const OperatorMatrix& a);
/// tr(rho A) for an arbitrary (not necessarily valid) rho.
Complex trace_product(const OperatorMatrix& rho, const OperatorMatrix& a);

/// L^+(A) = i[H, A] + sum_j (R_j^+ [A, R_j] + [R_j^+, A] R_j)
OperatorMatrix adjoint_generator(const OperatorMatrix& a, const LindbladModel& m);

/// d<A>/dt = tr(rho L^+(A))
Complex adjoint_rate(const OperatorMatrix& a, const LindbladModel& m, const DensityMatrix& rho);

/// Full-rank random state rho = G G^+ / tr(G G^+) with complex Gaussian G.
/// Gaussians come from a Box-Muller map of the raw generator output, so the
/// draw is reproducible across standard libraries.
DensityMatrix random_density(const BasisTag& tag, std::mt19937_64& gen);

/// CSV with columns t, <name>_re, <name>_im, ...
void write_expectation_csv(std::ostream& os, const EvolveResult& r);

}  // namespace semiquant
