// Copyright 2026 The commchar Authors
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

#ifndef COMMCHAR_TABLE_HPP_
#define COMMCHAR_TABLE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace commchar {

// Empty cell, text, integer, or real. Reals are printed in shortest
// round-trip form so output is byte-stable.
using Cell = std::variant<std::monostate, std::string, std::int64_t, double, bool>;

std::string format_real(double v);

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  // RFC 4180 style: header line, fields quoted when they contain a comma,
  // quote or newline. NaN prints as "nan", empty cells as nothing.
  void write_csv(std::ostream& out) const;
  // Array of objects; empty cells and NaN become null.
  void write_json(std::ostream& out) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// Parses CSV as written by Table::write_csv (header row included).
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

}  // namespace commchar

#endif  // COMMCHAR_TABLE_HPP_
