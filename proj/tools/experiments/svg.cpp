#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace quill::experiments {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;

  double t(double v) const {
    const double a = log ? std::log10(v) : v;
    return hi > lo ? (a - lo) / (hi - lo) : 0.5;
  }
};

} // namespace

std::string render_svg(const Plot& plot) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0) || !std::isfinite(s.y[i]) || (plot.log_y && !(s.y[i] > 0))) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) xmin = 1, xmax = 10, ymin = 0, ymax = 1;

  Axis ax{std::floor(std::log10(xmin)), std::ceil(std::log10(xmax)), true};
  if (ax.hi == ax.lo) ax.hi += 1;
  Axis ay;
  if (plot.log_y) {
    ay = {std::floor(std::log10(ymin)), std::ceil(std::log10(ymax)), true};
    if (ay.hi == ay.lo) ay.hi += 1;
  } else {
    const double pad = ymax > ymin ? 0.05 * (ymax - ymin) : 0.5;
    ay = {std::min(0.0, ymin - pad), ymax + pad, false};
  }

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + pw * ax.t(x); };
  auto py = [&](double y) { return kTop + ph * (1.0 - ay.t(y)); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
    << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
    << escape(plot.title) << "</text>\n";

  // decades on x, decades or 5 linear ticks on y
  for (double e = ax.lo; e <= ax.hi; e += 1) {
    const double x = px(std::pow(10.0, e));
    o << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(x) << "\" y2=\""
      << fmt(kTop + ph) << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + ph + 18)
      << "\" text-anchor=\"middle\">1e" << static_cast<int>(e) << "</text>\n";
  }
  const int ny = plot.log_y ? static_cast<int>(ay.hi - ay.lo) : 5;
  for (int i = 0; i <= ny; ++i) {
    const double v = plot.log_y ? std::pow(10.0, ay.lo + i) : ay.lo + (ay.hi - ay.lo) * i / ny;
    const double y = py(v);
    o << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kLeft + pw)
      << "\" y2=\"" << fmt(y) << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">"
      << (plot.log_y ? "1e" + std::to_string(static_cast<int>(ay.lo) + i) : tick_label(v))
      << "</text>\n";
  }
  o << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(pw)
    << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 16)
    << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  o << "<text transform=\"translate(20," << fmt(kTop + ph / 2)
    << ") rotate(-90)\" text-anchor=\"middle\">" << escape(plot.y_label) << "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* color = kColors[k % std::size(kColors)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\""
      << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0) || !std::isfinite(s.y[i]) || (plot.log_y && !(s.y[i] > 0))) continue;
      o << (first ? "" : " ") << fmt(px(s.x[i])) << "," << fmt(py(s.y[i]));
      first = false;
    }
    o << "\"/>\n";
    const double ly = kTop + 12 + 20 * static_cast<double>(k);
    o << "<line x1=\"" << fmt(kLeft + pw + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\""
      << fmt(kLeft + pw + 40) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    o << "<text x=\"" << fmt(kLeft + pw + 46) << "\" y=\"" << fmt(ly + 4) << "\">"
      << escape(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

} // namespace quill::experiments
