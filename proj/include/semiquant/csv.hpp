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

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace semiquant::csv {

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string format_number(double v);

/// RFC-4180 quoting: fields containing ',', '"', CR or LF are quoted.
std::string quote(std::string_view field);

/// Writes rows terminated by CRLF.
class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void row(std::initializer_list<double> values) { row(std::vector<double>(values)); }
  void raw_row(const std::vector<std::string>& fields);

 private:
  std::ostream& os_;
};

}  // namespace semiquant::csv
