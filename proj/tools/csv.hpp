#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "madelung/grid.hpp"

namespace madelung::cli {

// Decimal, 17 significant digits, '.' separator; NaN prints as an empty field.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void validate() const;
};

CsvTable to_table(const SampleSeries& series);

// Comma-separated, '\n' record separator, no quoting.
void write_csv(std::ostream& out, const CsvTable& table);

}  // namespace madelung::cli
