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

#include "ffgate/csvio.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "ffgate/mat.hpp"

namespace ffgate {

std::string csv_row(const std::vector<std::string> &cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

std::string csv_row(const std::vector<double> &cells) {
  std::vector<std::string> text(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    text[i] = format_double(cells[i]);
  }
  return csv_row(text);
}

std::string csv_row(std::initializer_list<const char *> cells) {
  return csv_row(std::vector<std::string>(cells.begin(), cells.end()));
}

namespace {

std::vector<std::string> split_cells(const std::string &line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

}  // namespace

double CsvTable::number(std::size_t row, std::size_t col) const {
  const std::string &cell = rows.at(row).at(col);
  char *end = nullptr;
  double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0') {
    throw std::invalid_argument("parse_csv: non-numeric cell `" + cell + "`");
  }
  return v;
}

CsvTable parse_csv(const std::string &text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") {
      break;
    }
    if (!have_header) {
      table.header = split_cells(line);
      have_header = true;
      continue;
    }
    std::vector<std::string> cells = split_cells(line);
    if (cells.size() != table.header.size()) {
      throw std::invalid_argument("parse_csv: row width differs from header");
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

}  // namespace ffgate
