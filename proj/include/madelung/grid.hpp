#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace madelung {

enum class Spacing { uniform, log };

struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 2;
  Spacing spacing = Spacing::uniform;

  void validate() const;
  std::vector<double> points() const;
};

// Named columns of evaluated values. A row may be flagged as excluded (near a
// density zero or quantum-potential pole); its non-coordinate entries are then
// meaningless and consumers should skip them.
struct SampleSeries {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<bool> excluded;

  std::size_t size() const { return rows.size(); }
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
  void add_row(std::vector<double> row, bool is_excluded = false);
};

}  // namespace madelung
