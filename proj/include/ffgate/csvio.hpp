// Copyright 2026 The ffgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FFGATE_CSVIO_HPP
#define FFGATE_CSVIO_HPP

#include <string>
#include <vector>

namespace ffgate {

// Comma-separated output with a header row, LF line endings and
// 17-significant-digit numbers, so every emitted value parses back to the
// identical double.

std::string csv_row(const std::vector<std::string> &cells);
std::string csv_row(const std::vector<double> &cells);
std::string csv_row(std::initializer_list<const char *> cells);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Numeric view of a cell; throws if the cell is not a number.
  double number(std::size_t row, std::size_t col) const;
};

/// Parses the toolkit's own CSV output (plain cells, no quoting). Stops at
/// the first blank line, ignoring any trailing summary block.
CsvTable parse_csv(const std::string &text);

}  // namespace ffgate

#endif
