#include "multiamdahl/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace multiamdahl::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

const char* color(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;
  bool log_x;

  double px(double x) const {
    const double plot_w = kWidth - kLeft - kRight;
    const double t = log_x ? (std::log10(x) - std::log10(x0)) / (std::log10(x1) - std::log10(x0))
                           : (x - x0) / (x1 - x0);
    return kLeft + t * plot_w;
  }
  double py(double y) const {
    const double plot_h = kHeight - kTop - kBottom;
    return kTop + plot_h * (1.0 - (y - y0) / (y1 - y0));
  }
};

std::string open_svg(const std::string& title) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" style=\"fill:#ffffff\"/>\n";
  out += "<text x=\"" + num(kWidth / 2) +
         "\" y=\"22\" style=\"font-family:sans-serif;font-size:14px;text-anchor:middle\">" +
         xml_escape(title) + "</text>\n";
  return out;
}

std::string axes(const Frame& f, const std::string& x_label, const std::string& y_label,
                 const std::vector<double>& x_ticks) {
  const double bottom = kHeight - kBottom;
  const double right = kWidth - kRight;
  std::string out;
  out += "<g style=\"stroke:#000000;stroke-width:1;fill:none\">\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(right) +
         "\" y2=\"" + num(bottom) + "\"/>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(bottom) + "\"/>\n";
  out += "</g>\n";
  const std::string tick_style = "font-family:sans-serif;font-size:10px;";
  for (double t : x_ticks) {
    const double x = f.px(t);
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(bottom + 4) + "\" style=\"stroke:#000000\"/>\n";
    out += "<text x=\"" + num(x) + "\" y=\"" + num(bottom + 16) + "\" style=\"" + tick_style +
           "text-anchor:middle\">" + tick_label(t) + "</text>\n";
  }
  for (int k = 0; k <= 5; ++k) {
    const double v = f.y0 + (f.y1 - f.y0) * k / 5.0;
    const double y = f.py(v);
    out += "<line x1=\"" + num(kLeft - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(y) + "\" style=\"stroke:#000000\"/>\n";
    out += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 3) + "\" style=\"" + tick_style +
           "text-anchor:end\">" + tick_label(v) + "</text>\n";
  }
  out += "<text x=\"" + num((kLeft + right) / 2) + "\" y=\"" + num(kHeight - 18) +
         "\" style=\"font-family:sans-serif;font-size:12px;text-anchor:middle\">" +
         xml_escape(x_label) + "</text>\n";
  out += "<text x=\"18\" y=\"" + num((kTop + bottom) / 2) +
         "\" transform=\"rotate(-90 18 " + num((kTop + bottom) / 2) +
         ")\" style=\"font-family:sans-serif;font-size:12px;text-anchor:middle\">" +
         xml_escape(y_label) + "</text>\n";
  return out;
}

std::string legend(const std::vector<std::string>& labels) {
  std::string out;
  const double x = kWidth - kRight + 12;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(i);
    out += "<rect x=\"" + num(x) + "\" y=\"" + num(y - 8) +
           "\" width=\"12\" height=\"10\" style=\"fill:" + color(i) + "\"/>\n";
    out += "<text x=\"" + num(x + 18) + "\" y=\"" + num(y + 1) +
           "\" style=\"font-family:sans-serif;font-size:11px\">" + xml_escape(labels[i]) +
           "</text>\n";
  }
  return out;
}

std::vector<double> linear_ticks(double lo, double hi) {
  std::vector<double> t;
  for (int k = 0; k <= 5; ++k) t.push_back(lo + (hi - lo) * k / 5.0);
  return t;
}

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> t;
  for (double d = std::pow(10.0, std::floor(std::log10(lo))); d <= hi * 1.0001; d *= 10.0) {
    if (d >= lo * 0.9999) t.push_back(d);
  }
  if (t.size() < 2) t = {lo, hi};
  return t;
}

std::string fixed_percent(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g%%", 100.0 * s);
  return buf;
}

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render(const LineChart& chart) {
  double x0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  for (const auto& s : chart.series) {
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      x0 = std::min(x0, s.x[k]);
      x1 = std::max(x1, s.x[k]);
      y1 = std::max(y1, s.y[k]);
    }
  }
  if (!(x1 > x0)) {
    x0 = chart.log_x ? 0.1 : 0.0;
    x1 = 1.0;
  }
  double y0 = 0.0;
  if (chart.y_max > 0.0) y1 = chart.y_max;
  if (!(y1 > y0)) y1 = 1.0;
  const Frame f{x0, x1, y0, y1, chart.log_x};

  std::string out = open_svg(chart.title);
  out += axes(f, chart.x_label, chart.y_label,
              chart.log_x ? log_ticks(x0, x1) : linear_ticks(x0, x1));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const auto& s = chart.series[i];
    labels.push_back(s.label);
    std::string points;
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      const double y = std::min(s.y[k], y1);
      if (!points.empty()) points += " ";
      points += num(f.px(s.x[k])) + "," + num(f.py(y));
    }
    out += "<polyline points=\"" + points + "\" style=\"fill:none;stroke:" + color(i) +
           ";stroke-width:1.5\"/>\n";
  }
  if (!chart.markers.empty()) {
    std::string points;
    for (const auto& m : chart.markers) {
      if (!points.empty()) points += " ";
      points += num(f.px(m.x)) + "," + num(f.py(m.y));
    }
    out += "<polyline points=\"" + points +
           "\" style=\"fill:none;stroke:#d62728;stroke-width:1.5\"/>\n";
    for (const auto& m : chart.markers) {
      out += "<circle cx=\"" + num(f.px(m.x)) + "\" cy=\"" + num(f.py(m.y)) +
             "\" r=\"3\" style=\"fill:#d62728\"/>\n";
    }
  }
  out += legend(labels);
  out += "</svg>\n";
  return out;
}

std::string render(const StackedChart& chart) {
  const std::size_t cols = chart.columns.size();
  double top = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (const auto& layer : chart.values) sum += c < layer.size() ? layer[c] : 0.0;
    top = std::max(top, sum);
  }
  if (!(top > 0.0)) top = 1.0;
  const Frame f{-0.5, static_cast<double>(cols) - 0.5, 0.0, top, false};

  std::string out = open_svg(chart.title);
  out += axes(f, chart.x_label, chart.y_label, {});
  const double bottom = kHeight - kBottom;
  const double slot = (kWidth - kLeft - kRight) / static_cast<double>(std::max<std::size_t>(cols, 1));
  for (std::size_t c = 0; c < cols; ++c) {
    const double cx = f.px(static_cast<double>(c));
    double base = 0.0;
    for (std::size_t l = 0; l < chart.values.size(); ++l) {
      const double v = c < chart.values[l].size() ? chart.values[l][c] : 0.0;
      if (!std::isfinite(v) || v <= 0.0) continue;
      const double y_top = f.py(base + v);
      const double y_bot = f.py(base);
      out += "<rect x=\"" + num(cx - 0.4 * slot) + "\" y=\"" + num(y_top) + "\" width=\"" +
             num(0.8 * slot) + "\" height=\"" + num(y_bot - y_top) + "\" style=\"fill:" +
             color(l) + ";stroke:#ffffff;stroke-width:0.5\"/>\n";
      base += v;
    }
    out += "<text x=\"" + num(cx) + "\" y=\"" + num(bottom + 14) + "\" transform=\"rotate(45 " +
           num(cx) + " " + num(bottom + 14) +
           ")\" style=\"font-family:sans-serif;font-size:8px\">" + xml_escape(chart.columns[c]) +
           "</text>\n";
  }
  out += legend(chart.layers);
  out += "</svg>\n";
  return out;
}

std::string energy_curves_figure(const CurveTable& table) {
  LineChart chart;
  chart.title = "Normalized energy vs CPU area allocation";
  chart.x_label = "a_CPU / A";
  chart.y_label = "Normalized energy";
  for (const auto& c : table.curves) {
    Series s;
    s.label = "P_sys = " + fixed_percent(c.s);
    s.x = c.cpu_share;
    s.y = c.normalized;
    chart.series.push_back(std::move(s));
    chart.markers.push_back({c.argmin_share(), 1.0});
  }
  // Curves blow up near the floor; clip the y range.
  chart.y_max = 3.0;
  return render(chart);
}

std::string allocation_lines_figure(const SweepTable& table) {
  LineChart chart;
  chart.title = "Energy-optimal area allocation vs constant system power";
  chart.x_label = "P_sys (fraction of total power budget)";
  chart.y_label = "Area allocation (fraction of A)";
  chart.log_x = true;
  chart.y_max = 1.0;
  for (std::size_t u = 0; u < table.unit_names.size(); ++u) {
    Series s;
    s.label = table.unit_names[u];
    for (const auto& row : table.rows) {
      if (!row.ok() || row.delay_limit || !(row.s > 0.0)) continue;
      s.x.push_back(row.s);
      s.y.push_back(row.areas[u] / table.area_budget);
    }
    chart.series.push_back(std::move(s));
  }
  return render(chart);
}

std::string allocation_stack_figure(const SweepTable& table) {
  StackedChart chart;
  chart.title = "Energy-optimal allocation vs P_sys (last column: delay-optimal)";
  chart.x_label = "P_sys (fraction of total power budget)";
  chart.y_label = "Area allocation (fraction of A)";
  chart.layers = table.unit_names;
  chart.values.assign(table.unit_names.size(), {});
  for (const auto& row : table.rows) {
    chart.columns.push_back(row.delay_limit ? std::string("delay") : fixed_percent(row.s));
    for (std::size_t u = 0; u < table.unit_names.size(); ++u) {
      chart.values[u].push_back(row.ok() ? row.areas[u] / table.area_budget : 0.0);
    }
  }
  return render(chart);
}

}  // namespace multiamdahl::svg
