#pragma once

#include <string>
#include <vector>

namespace josim {

// Column-oriented numeric table: one named column per physical quantity,
// units recorded in the header as "name [unit]".
struct CsvTable {
  std::vector<std::string> names;
  std::vector<std::string> units;
  std::vector<std::vector<double>> columns;

  void add_column(std::string name, std::string unit,
                  std::vector<double> values);
  std::size_t n_rows() const;
  const std::vector<double>& column(const std::string& name) const;
};

// Deterministic serialization: %.12g values, '\n' line endings, byte-exact
// for identical inputs.
std::string to_csv(const CsvTable& table);
void write_csv(const CsvTable& table, const std::string& path);

CsvTable read_csv(const std::string& path);

}  // namespace josim
