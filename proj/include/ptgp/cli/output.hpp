#pragma once

#include <string>
#include <variant>
#include <vector>

namespace ptgp::cli {

inline constexpr int kSchemaVersion = 1;

using Cell = std::variant<double, long long, std::string>;

// 17 significant digits, '.' separator, independent of the C++ locale.
std::string format_number(double x);

class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  std::string to_csv() const;
  std::string to_json(const std::string& command) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string render(const Table& table, const std::string& format, const std::string& command);

}  // namespace ptgp::cli
