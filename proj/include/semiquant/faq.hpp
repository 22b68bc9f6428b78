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

// Classical open systems written in the form allowing quantization:
//
//   dz_a/dt = -i dH/dz*_a + sum_j (conj(R_j) dR_j/dz*_a - R_j dconj(R_j)/dz*_a)
//
// with a real Hamiltonian H and complex channel functions R_j.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "semiquant/polynomial.hpp"

namespace semiquant {

class FaqSystem {
 public:
  /// Throws if the polynomials disagree on mode_count or H is not real valued.
  FaqSystem(Polynomial hamiltonian, std::vector<Polynomial> channels);

  std::size_t mode_count() const noexcept { return hamiltonian_.mode_count(); }
  const Polynomial& hamiltonian() const noexcept { return hamiltonian_; }
  const std::vector<Polynomial>& channels() const noexcept { return channels_; }

  /// dz_a/dt as exact polynomials, one per mode.
  const std::vector<Polynomial>& drift_polynomials() const noexcept { return drift_; }
  /// Phase-space divergence of the drift in real coordinates, 2 Re sum_a d(dz_a/dt)/dz_a,
  /// kept as the complex polynomial sum_a d(dz_a/dt)/dz_a.
  const Polynomial& divergence_polynomial() const noexcept { return divergence_; }

 private:
  Polynomial hamiltonian_;
  std::vector<Polynomial> channels_;
  std::vector<Polynomial> drift_;
  Polynomial divergence_;
};

using ComplexVector = std::vector<Complex>;
using VectorField = std::function<ComplexVector(const PhasePoint&)>;

ComplexVector drift(const FaqSystem& sys, const PhasePoint& p);

struct FaqReport {
  double max_abs_error = 0.0;
  std::size_t worst_sample = 0;
  bool pass = false;
};

/// Compares drift(sys, .) to a user-supplied field on the sample points (infinity norm).
FaqReport verify_faq(const FaqSystem& sys, const VectorField& field, const std::vector<PhasePoint>& samples,
                     double tol);

/// Points drawn uniformly from a disc of the given radius, independently per
/// mode. Uses a portable mapping of mt19937_64 output so the sequence is
/// identical on every platform for a given seed.
std::vector<PhasePoint> sample_disc(std::size_t mode_count, std::size_t count, double radius, std::uint64_t seed);

/// Default sampling radius and seed for FAQ checks.
inline constexpr double kFaqSampleRadius = 3.0;
inline constexpr std::uint64_t kFaqSampleSeed = 20260101;

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> points;
};

/// Fixed-step RK4 integration of the drift from z0 over [0, t_end].
Trajectory classical_flow(const FaqSystem& sys, const PhasePoint& z0, double t_end, double dt);

/// Divergence of the phase velocity, summed over modes.
double phase_divergence(const FaqSystem& sys, const PhasePoint& p);

/// The coefficients of the first-order phase-space equation
///   df/dt + A df/dx + B df/dy + C f = 0
/// assembled directly from real-coordinate partials of H, R_j and conj(R_j).
/// For each mode dz/dt = (A + i B) / sqrt(2); C is the divergence.
struct RealCoefficients {
  std::vector<double> a;
  std::vector<double> b;
  double c = 0.0;
};
RealCoefficients real_coefficients(const FaqSystem& sys, const PhasePoint& p);

struct WeightedTrajectory {
  Trajectory trajectory;
  /// Density weight carried along the characteristic, weight(0) = 1.
  std::vector<double> weights;
};

/// Carries every initial point along classical_flow together with its density
/// weight, d(log w)/dt = -div v.
std::vector<WeightedTrajectory> ensemble_weights(const FaqSystem& sys, const std::vector<PhasePoint>& points,
                                                 double t_end, double dt);

/// CSV with columns t, re(z1), im(z1), ..., weight. When weights are absent the
/// column is written as 1.
void write_trajectory_csv(std::ostream& os, const WeightedTrajectory& wt);

}  // namespace semiquant
