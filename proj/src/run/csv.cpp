#include "run/csv.hpp"

#include <fstream>
#include <stdexcept>

namespace isolator::run {

void CsvTable::add_row(std::vector<CsvValue> row) {
  if (row.size() != header_.size()) {
    throw std::invalid_argument("csv row width does not match header");
  }
  rows_.push_back(std::move(row));
}

std::string CsvTable::format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string CsvTable::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const double* d = std::get_if<double>(&row[i])) {
        out += format_double(*d);
      } else if (const long long* n = std::get_if<long long>(&row[i])) {
        out += std::to_string(*n);
      } else {
        out += std::get<std::string>(row[i]);
      }
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << to_string();
}

}  // namespace isolator::run
