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

#include <cmath>

#include "semiquant/error.hpp"
#include "semiquant/models.hpp"

namespace semiquant::models {

namespace {

Polynomial z1() { return Polynomial::variable(1, 0, Var::z); }
Polynomial z1c() { return Polynomial::variable(1, 0, Var::zc); }

}  // namespace

void OscillatorParams::validate() const {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) fail(ErrorKind::invalid_argument, "oscillator: omega0 must be > 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail(ErrorKind::invalid_argument, "oscillator: lambda must be >= 0");
  if (!std::isfinite(u)) fail(ErrorKind::invalid_argument, "oscillator: u must be finite");
}

FaqSystem oscillator_faq(const OscillatorParams& p) {
  p.validate();
  const Polynomial z = z1(), zc = z1c();
  Polynomial h = p.omega0 * (z * zc) + Complex(0.0, 0.5 * p.lambda) * (zc * zc - z * z);
  Polynomial r = std::sqrt(p.lambda) * (std::cosh(p.u) * z - Complex(std::sinh(p.u)) * zc);
  return FaqSystem(std::move(h), {std::move(r)});
}

VectorField oscillator_field(const OscillatorParams& p) {
  return [p](const PhasePoint& pt) {
    const Complex z = pt[0];
    return ComplexVector{Complex(0.0, -p.omega0) * z - p.lambda * (z - std::conj(z))};
  };
}

LindbladModel oscillator_lindblad(const OscillatorParams& p, std::size_t dim, Ordering ordering) {
  const FaqSystem sys = oscillator_faq(p);
  const FockSpace space = FockSpace::single(dim);
  std::vector<OperatorMatrix> channels;
  for (const auto& r : sys.channels()) channels.push_back(quantize(r, space, ordering));
  return LindbladModel(quantize(sys.hamiltonian(), space, ordering), std::move(channels));
}

DensityMatrix coherent_state(std::size_t dim, Complex alpha) {
  const FockSpace space = FockSpace::single(dim);
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(dim));
  Complex amp = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t n = 0; n < dim; ++n) {
    psi[static_cast<Eigen::Index>(n)] = amp;
    amp *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return DensityMatrix::pure(psi, space);
}

}  // namespace semiquant::models
