#include "ptgp/cli/output.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "ptgp/errors.hpp"

namespace ptgp::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return fmt::format("{}", *i);
  return csv_field(std::get<std::string>(c));
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("row has {} cells, table has {} columns", row.size(), columns_.size()));
  }
  rows_.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += csv_field(columns_[i]);
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_text(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string Table::to_json(const std::string& command) const {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["columns"] = columns_;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      std::visit([&r](const auto& v) { r.push_back(v); }, c);
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump() + "\n";
}

std::string render(const Table& table, const std::string& format, const std::string& command) {
  if (format == "json") return table.to_json(command);
  if (format == "csv") return table.to_csv();
  throw Error(ErrorCode::Config, "unknown output format '" + format + "'");
}

}  // namespace ptgp::cli
