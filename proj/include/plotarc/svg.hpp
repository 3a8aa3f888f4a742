#pragma once

#include <string>
#include <utility>
#include <vector>

#include "plotarc/text_table.hpp"

namespace plotarc::svg {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
  std::string color;
};

struct GuideLine {
  double value = 0.0;
  std::string color = "#555555";
  std::string label;
};

// A fixed 800x500 line chart. Horizontal guides are dashed, vertical guides
// dotted. Output contains no ids or timestamps, so identical input gives
// identical bytes.
struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  double x_tick = 0.1, y_tick = 0.1;
  std::vector<Series> series;
  std::vector<GuideLine> horizontal;
  std::vector<GuideLine> vertical;
};

inline constexpr double kWidth = 800.0;
inline constexpr double kHeight = 500.0;

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> colors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  return colors;
}

inline std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string render(const LineChart& chart) {
  constexpr double left = 70, right = 180, top = 50, bottom = 60;
  const double pw = kWidth - left - right, ph = kHeight - top - bottom;
  auto fmt = [](double v) { return text::format_fixed(v, 2); };
  auto px = [&](double x) { return left + (x - chart.x_min) / (chart.x_max - chart.x_min) * pw; };
  auto py = [&](double y) { return top + ph - (y - chart.y_min) / (chart.y_max - chart.y_min) * ph; };
  auto line = [&](double x1, double y1, double x2, double y2, const std::string& stroke, const std::string& extra) {
    return "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" + fmt(y2) +
           "\" stroke=\"" + stroke + "\"" + extra + "/>\n";
  };
  auto label = [&](double x, double y, const std::string& s, const std::string& extra) {
    return "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\"" + extra + ">" + escape(s) + "</text>\n";
  };

  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
  out += label(kWidth / 2, 28, chart.title, " text-anchor=\"middle\" font-size=\"16\"");

  // axes and ticks
  out += line(left, top + ph, left + pw, top + ph, "black", "");
  out += line(left, top, left, top + ph, "black", "");
  const int nx = static_cast<int>((chart.x_max - chart.x_min) / chart.x_tick + 0.5);
  for (int i = 0; i <= nx; ++i) {
    const double v = chart.x_min + i * chart.x_tick;
    out += line(px(v), top + ph, px(v), top + ph + 5, "black", "");
    out += label(px(v), top + ph + 20, text::format_fixed(v, 2), " text-anchor=\"middle\"");
  }
  const int ny = static_cast<int>((chart.y_max - chart.y_min) / chart.y_tick + 0.5);
  for (int i = 0; i <= ny; ++i) {
    const double v = chart.y_min + i * chart.y_tick;
    out += line(left - 5, py(v), left, py(v), "black", "");
    out += line(left, py(v), left + pw, py(v), "#e5e5e5", "");
    out += label(left - 8, py(v) + 4, text::format_fixed(v, 1), " text-anchor=\"end\"");
  }
  out += label(left + pw / 2, kHeight - 15, chart.x_label, " text-anchor=\"middle\"");
  out += label(18, top + ph / 2, chart.y_label,
               " text-anchor=\"middle\" transform=\"rotate(-90 18 " + fmt(top + ph / 2) + ")\"");

  for (const auto& g : chart.horizontal)
    out += line(left, py(g.value), left + pw, py(g.value), g.color, " stroke-dasharray=\"8 5\"");
  for (const auto& g : chart.vertical)
    out += line(px(g.value), top, px(g.value), top + ph, g.color, " stroke-dasharray=\"2 3\"");

  for (const auto& s : chart.series) {
    if (s.points.empty()) continue;
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      if (i) out += ' ';
      out += fmt(px(s.points[i].first)) + "," + fmt(py(s.points[i].second));
    }
    out += "\"/>\n";
  }

  // legend
  double ly = top + 10;
  const double lx = left + pw + 15;
  for (const auto& s : chart.series) {
    out += line(lx, ly, lx + 25, ly, s.color, " stroke-width=\"2\"");
    out += label(lx + 32, ly + 4, s.name, "");
    ly += 20;
  }
  for (const auto& g : chart.horizontal) {
    if (g.label.empty()) continue;
    out += line(lx, ly, lx + 25, ly, g.color, " stroke-dasharray=\"8 5\"");
    out += label(lx + 32, ly + 4, g.label, "");
    ly += 20;
  }
  for (const auto& g : chart.vertical) {
    if (g.label.empty()) continue;
    out += line(lx + 12, ly - 8, lx + 12, ly + 8, g.color, " stroke-dasharray=\"2 3\"");
    out += label(lx + 32, ly + 4, g.label, "");
    ly += 20;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace plotarc::svg
