#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csv.hpp"

namespace dirac2d::cli {

struct Series {
  std::string label;
  std::vector<std::optional<double>> y;  // one per x; nullopt breaks the line
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<Series> series;
};

// Self-contained SVG 1.1 document. Output depends only on the chart contents.
std::string render_svg(const LineChart& chart);

// First column is x; every other column is a series. Labels "E_n_m" become
// "n=.., m=..".
LineChart chart_from_csv(const CsvTable& table);

// 1-2-5 ticks covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

}  // namespace dirac2d::cli
