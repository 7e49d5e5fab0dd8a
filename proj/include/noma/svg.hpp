#pragma once

#include <string>
#include <utility>
#include <vector>

namespace noma {

struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct SvgChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  int width = 860;
  int height = 520;
};

// Minimal standalone line chart; points with non-positive y are dropped when
// log_y is set.
std::string render_line_chart(const std::vector<SvgSeries>& series,
                              const SvgChartOptions& options);

void write_line_chart(const std::string& path,
                      const std::vector<SvgSeries>& series,
                      const SvgChartOptions& options);

}  // namespace noma
