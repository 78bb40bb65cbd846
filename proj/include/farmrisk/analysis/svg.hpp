#pragma once

#include <string>
#include <vector>

namespace farmrisk {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  // Optional band, same length as y.
  std::vector<double> lo;
  std::vector<double> hi;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

// Small self-contained SVG charts; numbers are printed with fixed
// precision so files are reproducible.
std::string svg_scatter(const PlotSpec& spec, const std::vector<Series>& groups);
std::string svg_lines(const PlotSpec& spec, const std::vector<Series>& series);

struct Bar {
  std::string label;
  double value = 0.0;
  bool highlight = false;
};
std::string svg_bars(const PlotSpec& spec, const std::vector<Bar>& bars);

}  // namespace farmrisk
