#pragma once

// Minimal line plots with a logarithmic x axis.

#include <string>
#include <vector>

namespace quill::experiments {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Series> series;
};

std::string render_svg(const Plot& plot);

} // namespace quill::experiments
