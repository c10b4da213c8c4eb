#pragma once

#include <string>
#include <vector>

#include "josim/csv.hpp"

namespace josim {

// Deterministic standalone SVG line plot: fixed 800x500 canvas, axes with
// tick labels, one polyline per y column.  Byte-identical output for
// identical inputs.
std::string render_plot(const CsvTable& table, const std::string& x_column,
                        const std::vector<std::string>& y_columns,
                        const std::string& title = "");

void write_plot(const CsvTable& table, const std::string& x_column,
                const std::vector<std::string>& y_columns,
                const std::string& path, const std::string& title = "");

}  // namespace josim
