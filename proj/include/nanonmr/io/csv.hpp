#pragma once

#include <string>
#include <vector>

#include "nanonmr/errors.hpp"

namespace nanonmr {

/// Column-major numeric table. Dialect: comma separated, '.' decimal,
/// mandatory header row, '#' comment lines.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
  bool has_column(const std::string& name) const;
  const std::vector<double>& column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

/// Writes with "%.12g" formatting; comments go first, one '#' line each.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns,
               const std::vector<std::string>& comments = {});

}  // namespace nanonmr
