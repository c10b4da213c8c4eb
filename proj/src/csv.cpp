#include "josim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace josim {

void CsvTable::add_column(std::string name, std::string unit,
                          std::vector<double> values) {
  if (!columns.empty() && values.size() != columns.front().size())
    throw std::invalid_argument("column '" + name + "' has mismatched length");
  names.push_back(std::move(name));
  units.push_back(std::move(unit));
  columns.push_back(std::move(values));
}

std::size_t CsvTable::n_rows() const {
  return columns.empty() ? 0 : columns.front().size();
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return columns[i];
  std::string available;
  for (const auto& n : names) available += (available.empty() ? "" : ", ") + n;
  throw std::invalid_argument("no column '" + name +
                              "'; available: " + available);
}

std::string to_csv(const CsvTable& table) {
  if (table.names.empty()) throw std::invalid_argument("empty table");
  std::string out;
  for (std::size_t i = 0; i < table.names.size(); ++i) {
    if (i) out += ',';
    out += table.names[i];
    if (!table.units[i].empty()) out += " [" + table.units[i] + "]";
  }
  out += '\n';
  char buf[40];
  for (std::size_t row = 0; row < table.n_rows(); ++row) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof buf, "%.12g", table.columns[i][row]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_csv(const CsvTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_csv(table);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);

  CsvTable table;
  std::istringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) {
    const auto br = cell.find(" [");
    std::string unit;
    if (br != std::string::npos && cell.back() == ']') {
      unit = cell.substr(br + 2, cell.size() - br - 3);
      cell = cell.substr(0, br);
    }
    table.names.push_back(cell);
    table.units.push_back(unit);
    table.columns.emplace_back();
  }

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t i = 0;
    while (std::getline(row, cell, ',')) {
      if (i >= table.columns.size())
        throw std::runtime_error("ragged csv row in " + path);
      table.columns[i++].push_back(std::stod(cell));
    }
    if (i != table.columns.size())
      throw std::runtime_error("ragged csv row in " + path);
  }
  return table;
}

}  // namespace josim
