#pragma once

// Minimal self-contained SVG charts (inline styles, no external assets).

#include <string>
#include <vector>

#include "multiamdahl/sweep.hpp"

namespace multiamdahl::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Marker {
  double x = 0.0;
  double y = 0.0;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<Series> series;
  std::vector<Marker> markers;  // drawn as dots joined by a red line
  double y_max = 0.0;           // 0 = auto
};

struct StackedChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<std::string> columns;
  std::vector<std::string> layers;
  std::vector<std::vector<double>> values;  // values[layer][column]
};

std::string render(const LineChart& chart);
std::string render(const StackedChart& chart);

// Normalized energy vs a_CPU / A, one line per s, optimum of each marked.
std::string energy_curves_figure(const CurveTable& table);

// Optimal area of every unit vs s (log axis); two lines for a two-unit chip.
std::string allocation_lines_figure(const SweepTable& table);

// Stacked allocation per s column; the delay-limit row is the last column.
std::string allocation_stack_figure(const SweepTable& table);

std::string xml_escape(const std::string& s);

}  // namespace multiamdahl::svg
