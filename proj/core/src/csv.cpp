#include "multiamdahl/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace multiamdahl {

namespace {

std::string header_line(const std::vector<std::string>& unit_names) {
  std::string line = "s,p_sys";
  for (const auto& name : unit_names) line += "," + name;
  line += ",objective,residual\n";
  return line;
}

std::string row_line(double s, double p_sys, const std::vector<double>& areas,
                     std::size_t units, double objective, double residual) {
  std::string line = format_number(s) + "," + format_number(p_sys);
  for (std::size_t i = 0; i < units; ++i) {
    line += ",";
    line += format_number(i < areas.size() ? areas[i] : NAN);
  }
  line += "," + format_number(objective) + "," + format_number(residual) + "\n";
  return line;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string sweep_csv(const SweepTable& table) {
  std::string out = header_line(table.unit_names);
  for (const auto& row : table.rows) {
    if (row.ok()) {
      out += row_line(row.s, row.p_sys, row.areas, table.unit_names.size(), row.objective,
                      row.kkt_residual);
    } else {
      out += row_line(row.s, row.p_sys, {}, table.unit_names.size(), NAN, NAN);
    }
  }
  return out;
}

std::string allocation_csv(const Scenario& scenario, double s, double p_sys,
                           const AllocationResult& result) {
  std::vector<std::string> names;
  for (const auto& u : scenario.units) names.push_back(u.name);
  return header_line(names) + row_line(s, p_sys, result.areas, names.size(),
                                       result.objective_value, result.max_marginal_residual);
}

std::string curve_csv(const CurveTable& table) {
  std::string out = "s,p_sys,cpu_share,normalized_energy,is_min\n";
  for (const auto& c : table.curves) {
    for (std::size_t k = 0; k < c.cpu_share.size(); ++k) {
      out += format_number(c.s) + "," + format_number(c.p_sys) + "," +
             format_number(c.cpu_share[k]) + "," + format_number(c.normalized[k]) + "," +
             (k == c.argmin ? "1" : "0") + "\n";
    }
  }
  return out;
}

std::string limit_csv(const LimitReport& report) {
  std::string out = "p_sys,gap\n";
  for (std::size_t i = 0; i < report.p_sys.size(); ++i) {
    out += format_number(report.p_sys[i]) + "," + format_number(report.gaps[i]) + "\n";
  }
  return out;
}

CsvTable parse_numeric_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      table.header = std::move(cells);
      first = false;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(std::strtod(c.c_str(), nullptr));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace multiamdahl
