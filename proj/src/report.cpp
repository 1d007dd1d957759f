#include "wfc/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "wfc/errors.hpp"

namespace wfc {

void Table::add(std::vector<Cell> row) {
  require(row.size() == columns.size(), "report: row width " + std::to_string(row.size()) +
                                            " does not match " +
                                            std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json" || name == "jsonl") return Format::json;
  throw PreconditionError("unknown output format '" + name + "'");
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

Cell count_cell(u128 value) {
  if (value <= static_cast<u128>(std::numeric_limits<std::int64_t>::max()))
    return static_cast<std::int64_t>(value);
  return to_string(value);
}

std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, cell);
}

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string json_value(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    // JSON has no spelling for non-finite numbers.
    if (!std::isfinite(*d)) return nlohmann::json(format_double(*d)).dump();
    return format_double(*d);
  }
  if (const auto* s = std::get_if<std::string>(&cell)) return nlohmann::json(*s).dump();
  return cell_text(cell);
}

Cell typed_cell(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  std::int64_t i = 0;
  const char* end = text.data() + text.size();
  if (!text.empty()) {
    auto [p, ec] = std::from_chars(text.data(), end, i);
    if (ec == std::errc() && p == end) return i;
  }
  if (!text.empty() && text.find_first_of(".eE") != std::string::npos) {
    char* stop = nullptr;
    const double d = std::strtod(text.c_str(), &stop);
    if (stop == text.c_str() + text.size()) return d;
  }
  return text;
}

std::vector<std::vector<std::string>> csv_records(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw PreconditionError("csv: unterminated quoted field");
  if (any || !field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace

std::string emit_report(const Table& table, Format format) {
  std::ostringstream out;
  if (format == Format::csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
      out << (i ? "," : "") << csv_field(table.columns[i]);
    out << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? "," : "") << csv_field(cell_text(row[i]));
      out << "\n";
    }
    return out.str();
  }
  for (const auto& row : table.rows) {
    out << "{";
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << nlohmann::json(table.columns[i]).dump() << ":"
          << json_value(row[i]);
    out << "}\n";
  }
  return out.str();
}

Table parse_csv(const std::string& text) {
  const auto records = csv_records(text);
  if (records.empty()) return Table{};
  Table table(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    std::vector<Cell> row;
    for (const auto& field : records[r]) row.push_back(typed_cell(field));
    table.add(std::move(row));
  }
  return table;
}

Table parse_jsonl(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // Keep the key order as written.
    const auto obj = nlohmann::ordered_json::parse(line);
    if (first) {
      for (const auto& [key, value] : obj.items()) table.columns.push_back(key);
      first = false;
    }
    std::vector<Cell> row;
    for (const auto& [key, value] : obj.items()) {
      if (value.is_boolean())
        row.emplace_back(value.get<bool>());
      else if (value.is_number_integer())
        row.emplace_back(value.get<std::int64_t>());
      else if (value.is_number())
        row.emplace_back(value.get<double>());
      else
        row.emplace_back(value.get<std::string>());
    }
    table.add(std::move(row));
  }
  return table;
}

}  // namespace wfc
