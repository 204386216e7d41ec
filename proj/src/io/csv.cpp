#include "nanonmr/io/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nanonmr {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

bool CsvTable::has_column(const std::string& name) const {
  for (const std::string& h : header)
    if (h == name) return true;
  return false;
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return columns[i];
  throw DataError("missing CSV column '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  CsvTable table;
  std::string line;
  long line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::vector<std::string> fields = split_fields(stripped);
    if (!have_header) {
      table.header = fields;
      table.columns.assign(fields.size(), {});
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size())
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                          std::to_string(table.header.size()) + " fields, got " +
                          std::to_string(fields.size()),
                      line_no);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      char* end = nullptr;
      const double value = std::strtod(fields[i].c_str(), &end);
      if (end == fields[i].c_str() || *end != '\0')
        throw DataError("line " + std::to_string(line_no) +
                            ": cannot parse number '" + fields[i] + "'",
                        line_no);
      table.columns[i].push_back(value);
    }
  }
  if (!have_header) throw DataError("'" + path + "' has no header row");
  return table;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns,
               const std::vector<std::string>& comments) {
  if (columns.size() != header.size())
    throw InvalidArgument("write_csv: header/column count mismatch");
  const std::size_t rows = columns.empty() ? 0 : columns[0].size();
  for (const auto& c : columns)
    if (c.size() != rows) throw InvalidArgument("write_csv: ragged columns");

  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (const std::string& c : comments) out << "# " << c << "\n";
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  char buf[64];
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.12g", columns[i][r]);
      out << buf << (i + 1 < columns.size() ? "," : "\n");
    }
  }
  if (!out) throw DataError("write failed for '" + path + "'");
}

}  // namespace nanonmr
