#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace madelung::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return {};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void CsvTable::validate() const {
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw std::logic_error("CsvTable: row length " + std::to_string(row.size()) +
                             " differs from header length " + std::to_string(header.size()));
    }
  }
}

CsvTable to_table(const SampleSeries& series) {
  return {series.columns, series.rows};
}

void write_csv(std::ostream& out, const CsvTable& table) {
  table.validate();
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_number(row[i]);
    }
    out << '\n';
  }
}

}  // namespace madelung::cli
