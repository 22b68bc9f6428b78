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

#include <stdexcept>
#include <string>

namespace semiquant {

/// Coarse classification of failures. The C API maps each kind to a status code.
enum class ErrorKind {
  invalid_argument,
  dimension,
  parse,
  numerical,
  config,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Null-space solve found more than one stationary state.
class DegenerateStationaryState : public Error {
 public:
  DegenerateStationaryState(std::size_t null_dim, const std::string& what)
      : Error(ErrorKind::numerical, what), null_dim_(null_dim) {}

  std::size_t null_dimension() const noexcept { return null_dim_; }

 private:
  std::size_t null_dim_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace semiquant
