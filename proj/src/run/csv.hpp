#ifndef ISOLATOR_RUN_CSV_HPP
#define ISOLATOR_RUN_CSV_HPP

#include <cstdio>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace isolator::run {

using CsvValue = std::variant<double, long long, std::string>;

// Diff-stable CSV table: header row, fixed column order, 17-significant-digit
// scientific notation for doubles, UNIX newlines.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<CsvValue> row);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<CsvValue>>& rows() const { return rows_; }

  std::string to_string() const;
  void write(const std::filesystem::path& path) const;

  static std::string format_double(double v);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<CsvValue>> rows_;
};

}  // namespace isolator::run

#endif  // ISOLATOR_RUN_CSV_HPP
