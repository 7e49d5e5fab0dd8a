#include "noma/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "noma/csv.hpp"

namespace noma {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b",
                                    "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c; break;
    }
  }
  return out;
}

struct Axis {
  double lo = 0;
  double hi = 1;
  std::vector<double> ticks;
};

Axis linear_axis(double lo, double hi) {
  Axis axis;
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  double span = hi - lo;
  double raw_step = span / 5.0;
  double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
  double norm = raw_step / mag;
  double step = (norm <= 1.0 ? 1.0 : norm <= 2.0 ? 2.0 : norm <= 5.0 ? 5.0 : 10.0) * mag;
  double tick0 = std::ceil(lo / step) * step;
  axis.lo = lo;
  axis.hi = hi;
  for (double t = tick0; t <= hi + 1e-12 * span; t += step) {
    axis.ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
  }
  return axis;
}

Axis log_axis(double lo, double hi) {
  Axis axis;
  double e_lo = std::floor(std::log10(lo));
  double e_hi = std::ceil(std::log10(hi));
  if (e_hi <= e_lo) e_hi = e_lo + 1;
  axis.lo = e_lo;
  axis.hi = e_hi;
  for (double e = e_lo; e <= e_hi + 1e-9; e += 1.0) axis.ticks.push_back(e);
  return axis;
}

}  // namespace

std::string render_line_chart(const std::vector<SvgSeries>& series,
                              const SvgChartOptions& options) {
  const int w = options.width;
  const int h = options.height;
  const double ml = 72, mr = 24, mt = 48, mb = 56;
  const double pw = w - ml - mr;
  const double ph = h - mt - mb;

  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  bool any = false;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (options.log_y && !(y > 0)) continue;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
      any = true;
    }
  }
  if (!any) {
    x_min = 0;
    x_max = 1;
    y_min = options.log_y ? 1e-3 : 0;
    y_max = 1;
  }

  Axis ax = linear_axis(x_min, x_max);
  Axis ay = options.log_y ? log_axis(y_min, y_max) : linear_axis(y_min, y_max);

  auto sx = [&](double x) { return ml + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto sy = [&](double y) {
    double v = options.log_y ? std::log10(y) : y;
    return mt + ph - (v - ay.lo) / (ay.hi - ay.lo) * ph;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h
      << "\">\n";
  svg << "<rect width=\"" << w << "\" height=\"" << h
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << w / 2.0 << "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << xml_escape(options.title) << "</text>\n";

  for (double t : ax.ticks) {
    double px = sx(t);
    svg << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(mt) << "\" x2=\""
        << fmt(px) << "\" y2=\"" << fmt(mt + ph)
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(mt + ph + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt(t) << "</text>\n";
  }
  for (double t : ay.ticks) {
    double value = options.log_y ? std::pow(10.0, t) : t;
    double py = sy(value);
    svg << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(py) << "\" x2=\""
        << fmt(ml + pw) << "\" y2=\"" << fmt(py)
        << "\" stroke=\"#dddddd\"/>\n";
    std::string label = options.log_y ? ("1e" + fmt(t)) : fmt(t);
    svg << "<text x=\"" << fmt(ml - 6) << "\" y=\"" << fmt(py + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << label << "</text>\n";
  }
  svg << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\""
      << fmt(pw) << "\" height=\"" << fmt(ph)
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  svg << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(h - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << xml_escape(options.x_label) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << fmt(mt + ph / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << fmt(mt + ph / 2) << ")\">" << xml_escape(options.y_label)
      << "</text>\n";

  int color_idx = 0;
  double legend_y = mt + 14;
  for (const auto& s : series) {
    const char* color = kPalette[color_idx % kPaletteSize];
    ++color_idx;
    std::ostringstream pts;
    bool first = true;
    for (const auto& [x, y] : s.points) {
      if (options.log_y && !(y > 0)) continue;
      if (!first) pts << ' ';
      pts << fmt(sx(x)) << ',' << fmt(sy(y));
      first = false;
    }
    if (!first) {
      svg << "<polyline points=\"" << pts.str()
          << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.8\"/>\n";
    }
    svg << "<line x1=\"" << fmt(ml + pw - 150) << "\" y1=\"" << fmt(legend_y)
        << "\" x2=\"" << fmt(ml + pw - 130) << "\" y2=\"" << fmt(legend_y)
        << "\" stroke=\"" << color << "\" stroke-width=\"1.8\"/>\n";
    svg << "<text x=\"" << fmt(ml + pw - 124) << "\" y=\"" << fmt(legend_y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << xml_escape(s.label) << "</text>\n";
    legend_y += 16;
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_line_chart(const std::string& path,
                      const std::vector<SvgSeries>& series,
                      const SvgChartOptions& options) {
  write_file(path, render_line_chart(series, options));
}

}  // namespace noma
