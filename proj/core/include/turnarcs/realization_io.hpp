#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "turnarcs/grid.hpp"
#include "turnarcs/simulator.hpp"

namespace turnarcs {

/// Shortest decimal that reads back to the same double.
std::string format_real(double v);

// Writes '#'-prefixed "key: value" header lines (model, d, p, L, seed, grid,
// degrees, then `extra` in order), a column header, and one row per point.
// Grid kinds get colat,lon[,w] columns; point lists get x0 ... xd.
void write_realization_csv(std::ostream& out, const Realization& r, const Grid& grid,
                           const GridSpec& spec,
                           const std::vector<std::pair<std::string, std::string>>& extra = {});

struct CsvTable {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  const std::string* find(const std::string& key) const;
  // Index of a named column; throws ParseError when absent.
  std::size_t column(const std::string& name) const;
};

/// Reads back a file produced by write_realization_csv (or any CSV with the
/// same layout). Throws ParseError naming the line.
CsvTable read_csv(std::istream& in);

}  // namespace turnarcs
