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

#include <cmath>
#include <cstddef>

#include "semiquant/error.hpp"

namespace semiquant {

/// Number of equal steps covering [0, t_end] with step at most dt. The step
/// actually used is t_end / n, which equals dt whenever dt divides t_end.
inline std::size_t rk4_step_count(double t_end, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorKind::invalid_argument, "dt must be positive and finite");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) fail(ErrorKind::invalid_argument, "t_end must be non-negative");
  const double n = std::ceil(t_end / dt - 1e-9);
  return n < 1.0 ? 0 : static_cast<std::size_t>(n);
}

/// One classical fourth-order Runge-Kutta step. State must support
/// `State + State` and `double * State`; rhs is called as rhs(t, state).
template <class State, class Rhs>
State rk4_step(const Rhs& rhs, double t, const State& y, double h) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k1));
  const State k3 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k2));
  const State k4 = rhs(t + h, State(y + h * k3));
  return State(y + (h / 6.0) * State(k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace semiquant
