#include "madelung/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "madelung/errors.hpp"

namespace madelung {

void GridSpec::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop)) throw DomainError("GridSpec: non-finite bound");
  if (!(start < stop)) throw DomainError("GridSpec: start must be < stop");
  if (count < 2) throw DomainError("GridSpec: count must be >= 2");
  if (spacing == Spacing::log && !(start > 0.0)) throw DomainError("GridSpec: log spacing needs start > 0");
}

std::vector<double> GridSpec::points() const {
  validate();
  std::vector<double> out(count);
  const double last = static_cast<double>(count - 1);
  if (spacing == Spacing::uniform) {
    for (std::size_t i = 0; i < count; ++i) out[i] = start + (stop - start) * (static_cast<double>(i) / last);
  } else {
    const double a = std::log(start);
    const double b = std::log(stop);
    for (std::size_t i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * (static_cast<double>(i) / last));
  }
  out.front() = start;
  out.back() = stop;
  return out;
}

std::size_t SampleSeries::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("SampleSeries: no column named " + name);
}

std::vector<double> SampleSeries::column(const std::string& name) const {
  const std::size_t idx = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[idx]);
  return out;
}

void SampleSeries::add_row(std::vector<double> row, bool is_excluded) {
  if (row.size() != columns.size()) throw std::invalid_argument("SampleSeries: row length mismatch");
  rows.push_back(std::move(row));
  excluded.push_back(is_excluded);
}

}  // namespace madelung
