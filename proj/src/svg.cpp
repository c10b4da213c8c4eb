#include "josim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace josim {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

const char* kPalette[] = {"#1f5fa8", "#c23b22", "#2e7d32",
                          "#7b1fa2", "#ef6c00", "#00695c"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Range {
  double lo, hi;
};

Range padded(double lo, double hi) {
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

std::vector<double> ticks(const Range& r, int n = 6) {
  std::vector<double> out;
  const double raw = (r.hi - r.lo) / n;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  const double start = std::ceil(r.lo / step) * step;
  for (double v = start; v <= r.hi + 1e-12 * step; v += step)
    out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  return out;
}

}  // namespace

std::string render_plot(const CsvTable& table, const std::string& x_column,
                        const std::vector<std::string>& y_columns,
                        const std::string& title) {
  if (y_columns.empty()) throw std::invalid_argument("no y columns given");
  const auto& x = table.column(x_column);
  if (x.empty()) throw std::invalid_argument("no data rows to plot");

  double ylo = 0, yhi = 0;
  bool first = true;
  for (const auto& name : y_columns) {
    const auto& y = table.column(name);
    for (double v : y) {
      if (first) {
        ylo = yhi = v;
        first = false;
      }
      ylo = std::min(ylo, v);
      yhi = std::max(yhi, v);
    }
  }
  const Range xr = padded(*std::min_element(x.begin(), x.end()),
                          *std::max_element(x.begin(), x.end()));
  const Range yr = padded(ylo, yhi);

  auto px = [&](double v) {
    return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * (kWidth - kLeft - kRight);
  };
  auto py = [&](double v) {
    return kHeight - kBottom -
           (v - yr.lo) / (yr.hi - yr.lo) * (kHeight - kTop - kBottom);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
         "height=\"500\" viewBox=\"0 0 800 500\">\n";
  svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
  if (!title.empty())
    svg += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" +
           title + "</text>\n";

  // axes
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kHeight - kBottom) +
         "\" x2=\"" + fmt(kWidth - kRight) + "\" y2=\"" +
         fmt(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" +
         fmt(kLeft) + "\" y2=\"" + fmt(kHeight - kBottom) +
         "\" stroke=\"black\"/>\n";
  for (double t : ticks(xr)) {
    const double X = px(t);
    svg += "<line x1=\"" + fmt(X) + "\" y1=\"" + fmt(kHeight - kBottom) +
           "\" x2=\"" + fmt(X) + "\" y2=\"" + fmt(kHeight - kBottom + 5) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(X) + "\" y=\"" + fmt(kHeight - kBottom + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">" +
           fmt(t) + "</text>\n";
  }
  for (double t : ticks(yr)) {
    const double Y = py(t);
    svg += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(Y) + "\" x2=\"" +
           fmt(kLeft) + "\" y2=\"" + fmt(Y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(Y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\">" +
           fmt(t) + "</text>\n";
  }
  // axis labels
  svg += "<text x=\"" + fmt((kLeft + kWidth - kRight) / 2) + "\" y=\"" +
         fmt(kHeight - 10) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" +
         x_column + "</text>\n";

  for (std::size_t c = 0; c < y_columns.size(); ++c) {
    const auto& y = table.column(y_columns[c]);
    std::string pts;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i) pts += ' ';
      pts += fmt(px(x[i])) + "," + fmt(py(y[i]));
    }
    const char* color = kPalette[c % (sizeof kPalette / sizeof *kPalette)];
    svg += std::string("<polyline fill=\"none\" stroke=\"") + color +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    // legend entry
    const double ly = kTop + 16.0 * c;
    svg += std::string("<line x1=\"") + fmt(kWidth - kRight - 150) +
           "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(kWidth - kRight - 125) +
           "\" y2=\"" + fmt(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(kWidth - kRight - 120) + "\" y=\"" +
           fmt(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + y_columns[c] +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_plot(const CsvTable& table, const std::string& x_column,
                const std::vector<std::string>& y_columns,
                const std::string& path, const std::string& title) {
  const std::string svg = render_plot(table, x_column, y_columns, title);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << svg;
}

}  // namespace josim
