#pragma once

#include <string>
#include <vector>

namespace qfrag::cli {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

/// Log-log line plot as standalone SVG; non-positive points are skipped.
std::string render_loglog_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                              const std::vector<PlotSeries>& series);

}  // namespace qfrag::cli
