#pragma once

// Tabular output: CSV with RFC 4180 quoting or JSON lines, floats at 12
// significant digits, plus parsers for round-trips.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "wfc/arith.hpp"

namespace wfc {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  explicit Table(std::vector<std::string> cols = {}) : columns(std::move(cols)) {}
  // Throws PreconditionError when the row width differs from the header.
  void add(std::vector<Cell> row);
};

enum class Format { csv, json };

Format parse_format(const std::string& name);
std::string format_double(double value);
// Exact decimal; counts above 2^63 stay exact as strings.
Cell count_cell(u128 value);
std::string cell_text(const Cell& cell);

std::string emit_report(const Table& table, Format format);

// Cells come back typed as integer, double, bool or string.
Table parse_csv(const std::string& text);
Table parse_jsonl(const std::string& text);

}  // namespace wfc
