#include "svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace dirac2d::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string coord(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string series_label(const std::string& column) {
  // E_<n>_<m>
  if (column.size() > 2 && column.compare(0, 2, "E_") == 0) {
    const auto sep = column.find('_', 2);
    if (sep != std::string::npos)
      return "n=" + column.substr(2, sep - 2) + ", m=" + column.substr(sep + 1);
  }
  return column;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range padded(double lo, double hi) {
  if (!(lo < hi)) {
    const double pad = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
    return {lo - pad, hi + pad};
  }
  return {lo, hi};
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo) || target < 2) return {lo};
  const double raw = (hi - lo) / (target - 1);
  const int exponent = static_cast<int>(std::floor(std::log10(raw)));
  const double mag = std::pow(10.0, std::abs(exponent));
  // k * mult * 10^exponent, dividing for negative exponents so 0.6 prints as 0.6
  auto value = [&](double units) { return exponent < 0 ? units / mag : units * mag; };
  double mult = 1.0;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    mult = m;
    if (value(m) >= raw) break;
  }
  const double step = value(mult);
  std::vector<double> ticks;
  for (double k = std::ceil(lo / step); value(k * mult) <= hi + 1e-9 * step; k += 1.0) {
    ticks.push_back(value(k * mult) + 0.0);
  }
  return ticks;
}

std::string render_svg(const LineChart& chart) {
  double xmin = 0.0, xmax = 1.0;
  if (!chart.x.empty()) {
    const auto [a, b] = std::minmax_element(chart.x.begin(), chart.x.end());
    xmin = *a;
    xmax = *b;
  }
  double ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : chart.series) {
    for (const auto& v : s.y) {
      if (v && std::isfinite(*v)) {
        ymin = std::min(ymin, *v);
        ymax = std::max(ymax, *v);
      }
    }
  }
  if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
  const Range xr = padded(xmin, xmax);
  Range yr = padded(ymin, ymax);
  const double ypad = 0.05 * (yr.hi - yr.lo);
  yr = {yr.lo - ypad, yr.hi + ypad};

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + coord(kWidth) +
         "\" height=\"" + coord(kHeight) + "\" viewBox=\"0 0 " + coord(kWidth) + " " +
         coord(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + coord(kWidth) + "\" height=\"" + coord(kHeight) +
         "\" fill=\"#ffffff\"/>\n";
  out += "<text x=\"" + coord(kLeft + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(chart.title) + "</text>\n";

  // axes box
  out += "<rect x=\"" + coord(kLeft) + "\" y=\"" + coord(kTop) + "\" width=\"" + coord(pw) +
         "\" height=\"" + coord(ph) + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  for (double t : nice_ticks(xr.lo, xr.hi)) {
    const double x = px(t);
    out += "<line x1=\"" + coord(x) + "\" y1=\"" + coord(kTop + ph) + "\" x2=\"" + coord(x) +
           "\" y2=\"" + coord(kTop + ph + 5) + "\" stroke=\"#000000\"/>\n";
    out += "<text x=\"" + coord(x) + "\" y=\"" + coord(kTop + ph + 19) +
           "\" text-anchor=\"middle\">" + format_number(t, 6) + "</text>\n";
  }
  for (double t : nice_ticks(yr.lo, yr.hi)) {
    const double y = py(t);
    out += "<line x1=\"" + coord(kLeft - 5) + "\" y1=\"" + coord(y) + "\" x2=\"" + coord(kLeft) +
           "\" y2=\"" + coord(y) + "\" stroke=\"#000000\"/>\n";
    out += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(y) + "\" x2=\"" + coord(kLeft + pw) +
           "\" y2=\"" + coord(y) + "\" stroke=\"#dddddd\"/>\n";
    out += "<text x=\"" + coord(kLeft - 8) + "\" y=\"" + coord(y + 4) +
           "\" text-anchor=\"end\">" + format_number(t, 6) + "</text>\n";
  }
  out += "<text x=\"" + coord(kLeft + pw / 2) + "\" y=\"" + coord(kHeight - 14) +
         "\" text-anchor=\"middle\">" + escape(chart.x_label) + "</text>\n";
  out += "<text x=\"18\" y=\"" + coord(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         coord(kTop + ph / 2) + ")\">" + escape(chart.y_label) + "</text>\n";

  for (std::size_t s = 0; s < chart.series.size(); ++s) {
    const auto& series = chart.series[s];
    const std::string color = kPalette[s % std::size(kPalette)];
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"" +
               points + "\"/>\n";
        points.clear();
      }
    };
    const std::size_t count = std::min(series.y.size(), chart.x.size());
    for (std::size_t i = 0; i < count; ++i) {
      const auto& v = series.y[i];
      if (!v || !std::isfinite(*v)) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += coord(px(chart.x[i])) + "," + coord(py(*v));
    }
    flush();

    const double ly = kTop + 12 + 20.0 * static_cast<double>(s);
    const double lx = kLeft + pw + 15;
    out += "<line x1=\"" + coord(lx) + "\" y1=\"" + coord(ly) + "\" x2=\"" + coord(lx + 24) +
           "\" y2=\"" + coord(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + coord(lx + 30) + "\" y=\"" + coord(ly + 4) + "\">" +
           escape(series.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

LineChart chart_from_csv(const CsvTable& table) {
  if (table.header.size() < 2) throw std::runtime_error("plot: need an x column and at least one series");
  LineChart chart;
  chart.x_label = table.header[0];
  chart.y_label = "E";
  chart.title = "E versus " + table.header[0];
  for (std::size_t col = 1; col < table.header.size(); ++col)
    chart.series.push_back({series_label(table.header[col]), {}});
  for (const auto& row : table.rows) {
    const auto x = parse_cell(row[0]);
    if (!x) throw std::runtime_error("plot: empty x value");
    chart.x.push_back(*x);
    for (std::size_t col = 1; col < row.size(); ++col)
      chart.series[col - 1].y.push_back(parse_cell(row[col]));
  }
  return chart;
}

}  // namespace dirac2d::cli
