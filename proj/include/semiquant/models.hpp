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

// Ready-made models: the damped harmonic oscillator, the limit-cycle
// oscillator with nonlinear damping, and two coupled rotators in the
// angular-momentum (Schwinger) form, plus their closed-form baselines.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "semiquant/faq.hpp"
#include "semiquant/lindblad.hpp"
#include "semiquant/quantize.hpp"

namespace semiquant::models {

// ---------------------------------------------------------------------------
// Damped harmonic oscillator: dz/dt = -i w0 z - lambda (z - z*)

struct OscillatorParams {
  double omega0 = 1.0;
  /// Damping rate gamma / m.
  double lambda = 0.0;
  /// Channel mixing parameter; drops out of the classical drift.
  double u = 0.0;

  void validate() const;
};

/// H = w0 |z|^2 + i lambda (z*^2 - z^2)/2, R = sqrt(lambda)(z cosh u - z* sinh u).
FaqSystem oscillator_faq(const OscillatorParams& p);
VectorField oscillator_field(const OscillatorParams& p);
/// Normal ordering reproduces H = w0 a^+ a + i lambda ((a^+)^2 - a^2)/2 exactly.
LindbladModel oscillator_lindblad(const OscillatorParams& p, std::size_t dim, Ordering ordering = Ordering::normal);

/// Truncated coherent state |alpha>, renormalized after truncation.
DensityMatrix coherent_state(std::size_t dim, Complex alpha);

// ---------------------------------------------------------------------------
// Limit-cycle oscillator: dz/dt = -i w z + lambda z - 2 mu z |z|^2

struct LimitCycleParams {
  double omega = 1.0;
  /// Linear gain.
  double lambda = 1.0;
  /// Nonlinear damping.
  double mu = 1.0;

  double nu() const { return lambda / mu; }
  /// Requires mu > 0 and lambda >= 0 (lambda = 0 is the pure two-photon loss limit).
  void validate() const;
};

/// H = w z* z, R1 = sqrt(lambda) z*, R2 = sqrt(mu) z^2.
FaqSystem limit_cycle_faq(const LimitCycleParams& p);
VectorField limit_cycle_field(const LimitCycleParams& p);
/// H = w a^+ a, R1 = sqrt(lambda) a^+, R2 = sqrt(mu) a^2; dim >= 4.
LindbladModel limit_cycle_lindblad(const LimitCycleParams& p, std::size_t dim);

/// Stationary photon-number distribution rho_0..rho_{n_max} of the
/// number-diagonal rate equations
///   2 lambda [n rho_{n-1} - (n+1) rho_n] + 2 mu [(n+2)(n+1) rho_{n+2} - n(n-1) rho_n] = 0,
/// truncated exactly like the Fock-space generator (no gain out of n_max) and
/// solved as a linear system with the normalization row appended.
/// Throws ErrorKind::numerical when rho_{n_max} >= 1e-12 max rho (n_max too small).
std::vector<double> stationary_distribution(double lambda, double mu, std::size_t n_max);
std::vector<double> recurrence_stationary(double nu, std::size_t n_max);

/// Confluent hypergeometric function Phi(a, c, x) = sum_k (a)_k/(c)_k x^k/k!.
/// Negative x goes through Kummer's transformation. Requires |x| <= 200 and
/// c not a non-positive integer.
double kummer_phi(double a, double c, double x);

/// G(u) = Phi(1, nu, nu(1+u)) / Phi(1, nu, 2 nu)
double generating_function(double nu, double u);
/// dG/du at u = 1.
double mean_n(double nu);
/// d^2G/du^2 at u = 1, the mean of n(n-1).
double second_factorial_moment(double nu);
/// Q = <n(n-1)>/<n> - <n>
double mandel_q(double nu);

// ---------------------------------------------------------------------------
// Coupled rotators

struct RotatorParams {
  double omega1 = 1.0;
  double omega2 = 1.0;
  double lambda = 0.1;
  SpinRep spin = SpinRep(1.0);

  double delta() const { return omega1 - omega2; }
  void validate() const;
};

/// Two-mode FAQ with H = -w1|z1|^2 - w2|z2|^2 + i lambda |z1|^2 (z1* z2 - z2* z1)/2
/// + i lambda |z2|^2 (z2* z1 - z1* z2)/2 and
/// R = sqrt(lambda)/2 (|z1|^2 - |z2|^2 + z2* z1 - z2 z1*).
FaqSystem rotator_faq(const RotatorParams& p);
/// dz1/dt = i w1 z1 + lambda z1 (z1* z2 - z2* z1), and the mirror for z2.
VectorField rotator_field(const RotatorParams& p);

struct PhaseTrajectory {
  std::vector<double> times;
  std::vector<std::array<double, 2>> phases;
  /// d(phi2 - phi1)/dt at the final time.
  double final_difference_rate = 0.0;
  bool locked = false;
};

/// dphi1/dt = w1 + a sin(phi2 - phi1), dphi2/dt = w2 + a sin(phi1 - phi2).
/// locked iff |d(phi2 - phi1)/dt| at t_end is below lock_tol.
PhaseTrajectory phase_model_flow(double omega1, double omega2, double a, std::array<double, 2> phi0, double t_end,
                                 double dt, double lock_tol = 1e-6);

using Vec3 = std::array<double, 3>;

/// Complex polynomial in the real angular-momentum components (lx, ly, lz).
class SpinPolynomial {
 public:
  using Powers = std::array<unsigned, 3>;

  SpinPolynomial() = default;
  static SpinPolynomial constant(Complex c);
  /// axis 0, 1, 2 for x, y, z.
  static SpinPolynomial component(std::size_t axis);

  const std::map<Powers, Complex>& terms() const noexcept { return terms_; }
  SpinPolynomial conjugate() const;
  Complex evaluate(const Vec3& l) const;
  std::array<Complex, 3> gradient(const Vec3& l) const;

  SpinPolynomial& operator+=(const SpinPolynomial& o);
  SpinPolynomial& operator*=(Complex s);
  friend SpinPolynomial operator+(SpinPolynomial a, const SpinPolynomial& b) { return a += b; }
  friend SpinPolynomial operator-(SpinPolynomial a, const SpinPolynomial& b) { return a += b * Complex(-1.0, 0.0); }
  friend SpinPolynomial operator*(SpinPolynomial a, Complex s) { return a *= s; }
  friend SpinPolynomial operator*(Complex s, SpinPolynomial a) { return a *= s; }
  friend SpinPolynomial operator*(const SpinPolynomial& a, const SpinPolynomial& b);

 private:
  void add(const Powers& p, Complex c);
  std::map<Powers, Complex> terms_;
};

struct SpinFunctions {
  SpinPolynomial hamiltonian;
  SpinPolynomial channel;
};

/// H = -delta lz - 2 lambda ly lz, R = sqrt(lambda) (lz - i ly).
SpinFunctions rotator_spin_functions(const RotatorParams& p);

struct SpinTrajectory {
  std::vector<double> times;
  std::vector<Vec3> points;
};

/// The spin-vector right-hand side -(l x grad H) + i R (l x grad conj(R)) + c.c.
Vec3 spin_flow_field(const SpinPolynomial& h, const SpinPolynomial& r, const Vec3& l);

/// RK4 integration of spin_flow_field.
SpinTrajectory classical_spin_flow(const SpinPolynomial& h, const SpinPolynomial& r, const Vec3& l0, double t_end,
                                   double dt);

/// Maps a two-mode phase point through the Schwinger bilinears.
Vec3 spin_vector(const PhasePoint& z);

/// H = -delta lz - lambda (ly lz + lz ly), R = sqrt(lambda) (lz - i ly) on spin l >= 1.
LindbladModel rotator_spin_model(const RotatorParams& p);

// ---------------------------------------------------------------------------
// Moment closure for the synchronized rotators (delta = 0)

struct MomentState {
  double lx = 0.0, ly = 0.0, lz = 0.0;
  double lx2 = 0.0, ly2 = 0.0, lz2 = 0.0;
  /// <lx ly + ly lx>
  double sym_xy = 0.0;
};

/// First and second moments keyed by operator label; pair keys are ordered (A, B) for <AB>.
struct MomentTable {
  std::map<std::string, double> singles;
  std::map<std::pair<std::string, std::string>, double> pairs;
};

/// <ABC> ~ <AB><C> + <A><BC> + <AC><B> - 2<A><B><C>. Throws on a missing moment.
double cumulant_decouple(const MomentTable& moments, const std::array<std::string, 3>& labels);

/// Positive root x = <ly^2> of 8x^2 + 3x/2 - N^2/8 - N/4 = 0.
double ly2_analytic(double n_excitations);
/// Residual of that quadratic relative to its constant term.
double closure_quadratic_residual(double n_excitations, double x);

/// Closed stationary moment system at delta = 0 with <L^2> = (N/2)(N/2+1),
/// reduced analytically to the quadratic.
MomentState closure_stationary(double n_excitations);
/// Same system solved by damped Newton iteration on all seven unknowns.
MomentState closure_stationary_newton(double n_excitations);

struct ClosureRow {
  double n_excitations = 0.0;
  double x_closure = 0.0;
  double x_exact = 0.0;
  double relative_deviation = 0.0;
  double lz_exact = 0.0;
  Complex ly_exact{};
  double stationary_residual = 0.0;
};

/// Exact stationary <ly^2> of rotator_spin_model against the closure for every
/// N = 2l' with 1 <= l' <= p.spin.l() (step 1/2). Requires l <= 18.
std::vector<ClosureRow> closure_vs_exact_report(const RotatorParams& p, const StationaryOptions& opts = {});

struct EquationConformance {
  std::string equation;
  /// max over samples of |adjoint_rate - printed right-hand side|
  double max_abs_discrepancy = 0.0;
  /// max |L^+(A) - printed operator| as a matrix identity
  double operator_discrepancy = 0.0;
  bool agrees = false;
};

/// Compares the exact first-moment rates of lx, ly, lz against the printed
/// moment equations on random density matrices.
std::vector<EquationConformance> moment_equation_conformance(const RotatorParams& p, std::size_t samples,
                                                             std::uint64_t seed, double agree_tol = 1e-10);

}  // namespace semiquant::models
