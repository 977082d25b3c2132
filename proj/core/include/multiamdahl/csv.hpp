#pragma once

#include <string>
#include <vector>

#include "multiamdahl/model.hpp"
#include "multiamdahl/solver.hpp"
#include "multiamdahl/sweep.hpp"

namespace multiamdahl {

// 12 significant digits, "inf"/"nan" for non-finite values.
std::string format_number(double value);

// Columns: s, p_sys, one per unit (named after the unit), objective, residual.
std::string sweep_csv(const SweepTable& table);

// Same schema for a single solve.
std::string allocation_csv(const Scenario& scenario, double s, double p_sys,
                           const AllocationResult& result);

// Long format: s, p_sys, cpu_share, normalized_energy, is_min.
std::string curve_csv(const CurveTable& table);

// Columns: p_sys, gap.
std::string limit_csv(const LimitReport& report);

// Parses a CSV of numbers with one header row (the subset emitted above).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable parse_numeric_csv(const std::string& text);

}  // namespace multiamdahl
