#include "cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "CLI11.hpp"
#include "multiamdahl/config.hpp"
#include "multiamdahl/csv.hpp"
#include "multiamdahl/svg_plot.hpp"
#include "multiamdahl/sweep.hpp"

namespace multiamdahl::cli {

namespace {

const std::vector<std::string> kCommands = {"solve",        "sweep",      "curve",
                                            "limit-check",  "datacenter", "oracle-check",
                                            "verify",       "dump"};

const char* describe_command(const std::string& name) {
  if (name == "solve") return "Optimal allocation for one objective and power level";
  if (name == "sweep") return "Energy-optimal allocation across P_sys fractions";
  if (name == "curve") return "Normalized energy vs CPU area for a two-unit chip";
  if (name == "limit-check") return "Distance from the delay optimum as P_sys grows";
  if (name == "datacenter") return "Allocation across data-center constant power";
  if (name == "oracle-check") return "Compare the solver with the simplex-grid oracle";
  if (name == "verify") return "Check feasibility, stationarity and oracle gap of --areas";
  return "Write the scenario as JSON";
}

Scenario scenario_for(const RunConfig& config) {
  if (!config.preset.empty()) return load_scenario(config.preset);
  return load_scenario_file(config.config_path);
}

void write(const RunConfig& config, const std::string& name, const std::string& content) {
  write_text_file(config.out_dir / name, content);
}

// Fraction s and absolute power for single-point commands, in priority
// order --psys, first --s, --pconst, then the scenario's own setting.
std::pair<double, double> power_point(const RunConfig& config, const Scenario& scenario) {
  const double ref = scenario.reference_power();
  if (config.psys) return {*config.psys / (*config.psys + ref), *config.psys};
  if (!config.s_values.empty()) {
    const double s = config.s_values.front();
    return {s, SystemPowerSpec::fraction(s).resolve(ref)};
  }
  if (!config.pconst.empty()) {
    const double p = config.pconst.front();
    return {p / (p + ref), p};
  }
  const double p = scenario.system_power_absolute();
  return {p / (p + ref), p};
}

ObjectiveSpec objective_for(const RunConfig& config, const Scenario& scenario, double power) {
  const ObjectiveKind kind = config.objective.value_or(scenario.objective_kind);
  return {kind, power};
}

Scenario with_weight(const RunConfig& config, Scenario scenario) {
  if (config.w) scenario.dynamic_weight = *config.w;
  require_valid(scenario);
  return scenario;
}

std::string summary(const AllocationResult& r) {
  std::ostringstream os;
  os << "objective=" << format_number(r.objective_value)
     << " kkt_residual=" << format_number(r.max_marginal_residual)
     << " feasibility_gap=" << format_number(r.feasibility_gap) << " method=" << r.method;
  return os.str();
}

int cmd_solve(const RunConfig& config, std::ostream& out) {
  const Scenario scenario = with_weight(config, scenario_for(config));
  const auto [s, p] = power_point(config, scenario);
  const ObjectiveSpec spec = objective_for(config, scenario, p);
  const AllocationResult r = solve(scenario, spec, config.settings);
  const bool delay = spec.kind == ObjectiveKind::kDelay;
  write(config, "solve.csv",
        allocation_csv(scenario, delay ? 1.0 : s, delay ? INFINITY : p, r));
  out << "solve[" << to_string(spec.kind) << "]: " << summary(r) << "\n";
  return kOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Scenario scenario = scenario_for(config);
  const std::vector<double> s = config.s_values.empty() ? default_s_grid() : config.s_values;
  const SweepTable table = sweep_psys(scenario, s, config.settings);
  write(config, "sweep.csv", sweep_csv(table));
  if (config.plot) {
    if (scenario.size() == 2) {
      write(config, "fig4.svg", svg::allocation_lines_figure(table));
    } else {
      write(config, "fig6.svg", svg::allocation_stack_figure(table));
    }
  }
  int failed = 0;
  for (const auto& row : table.rows) {
    if (!row.ok()) {
      ++failed;
      err << "row s=" << format_number(row.s) << " failed: " << row.error << "\n";
    }
  }
  out << "sweep: rows=" << table.rows.size() << " failed=" << failed << "\n";
  return failed ? kSolverError : kOk;
}

int cmd_curve(const RunConfig& config, std::ostream& out) {
  const Scenario scenario = scenario_for(config);
  const std::vector<double> s =
      config.s_values.empty() ? std::vector<double>{0.02, 0.1, 0.4, 0.95} : config.s_values;
  const CurveTable table = curve_energy_vs_allocation(scenario, s, config.points, config.settings);
  write(config, "curve.csv", curve_csv(table));
  if (config.plot) write(config, "fig3.svg", svg::energy_curves_figure(table));
  out << "curve:";
  for (const auto& c : table.curves) {
    out << " s=" << format_number(c.s) << "->a_cpu=" << format_number(c.argmin_share());
  }
  out << "\n";
  return kOk;
}

int cmd_limit(const RunConfig& config, std::ostream& out) {
  const Scenario scenario = scenario_for(config);
  const std::vector<double> ladder =
      config.ladder.empty() ? std::vector<double>{10.0, 100.0, 1000.0, 10000.0} : config.ladder;
  const LimitReport report = limit_check(scenario, ladder, config.settings);
  write(config, "limit.csv", limit_csv(report));
  out << "limit-check: final_gap=" << format_number(report.final_gap)
      << " nonincreasing=" << (report.nonincreasing ? "yes" : "no")
      << " result=" << (report.passed ? "PASS" : "FAIL") << "\n";
  return report.passed ? kOk : kCheckFailed;
}

int cmd_datacenter(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Scenario scenario = scenario_for(config);
  const double w = config.w.value_or(scenario.dynamic_weight);
  const std::vector<double> pconst =
      config.pconst.empty() ? std::vector<double>{0.02, 0.1, 0.5, 2.0, 19.0} : config.pconst;
  const SweepTable table = datacenter_sweep(scenario, w, pconst, config.settings);
  write(config, "datacenter.csv", sweep_csv(table));
  if (config.plot) write(config, "datacenter.svg", svg::allocation_lines_figure(table));
  int failed = 0;
  for (const auto& row : table.rows) {
    if (!row.ok()) {
      ++failed;
      err << "row P_const=" << format_number(row.p_sys) << " failed: " << row.error << "\n";
    }
  }
  out << "datacenter: w=" << format_number(w) << " rows=" << table.rows.size()
      << " failed=" << failed << "\n";
  return failed ? kSolverError : kOk;
}

int cmd_oracle_check(const RunConfig& config, std::ostream& out) {
  const Scenario scenario = with_weight(config, scenario_for(config));
  const double ref = scenario.reference_power();
  std::vector<std::pair<double, double>> points;
  if (config.psys || config.s_values.empty()) {
    points.push_back(power_point(config, scenario));
  } else {
    for (double s : config.s_values) points.emplace_back(s, SystemPowerSpec::fraction(s).resolve(ref));
  }
  const double step =
      config.grid_step.value_or(config.settings.oracle_grid_step * scenario.area_budget);

  std::string csv =
      "s,p_sys,solver_objective,oracle_objective,gap,slack,max_coordinate_diff,grid_step\n";
  bool all_ok = true;
  for (const auto& [s, p] : points) {
    const ObjectiveSpec spec = objective_for(config, scenario, p);
    const AllocationResult r = solve(scenario, spec, config.settings);
    const OracleResult o = brute_force_oracle(scenario, spec, step, config.settings);
    double diff = 0.0;
    for (std::size_t i = 0; i < r.areas.size(); ++i) {
      diff = std::max(diff, std::abs(r.areas[i] - o.best.areas[i]));
    }
    const double gap = r.objective_value - o.best.objective_value;
    const double slack = o.slack();
    const bool ok = gap <= slack;
    all_ok = all_ok && ok;
    csv += format_number(s) + "," + format_number(p) + "," + format_number(r.objective_value) +
           "," + format_number(o.best.objective_value) + "," + format_number(gap) + "," +
           format_number(slack) + "," + format_number(diff) + "," + format_number(o.grid_step) +
           "\n";
    out << "oracle-check[" << to_string(spec.kind) << "] s=" << format_number(s) << ": "
        << summary(r) << " oracle_gap=" << format_number(gap)
        << " slack=" << format_number(slack) << " " << (ok ? "PASS" : "FAIL") << "\n";
  }
  write(config, "oracle.csv", csv);
  return all_ok ? kOk : kCheckFailed;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  const Scenario scenario = with_weight(config, scenario_for(config));
  if (config.areas.size() != scenario.size()) {
    throw ConfigError("--areas needs " + std::to_string(scenario.size()) + " values");
  }
  const auto [s, p] = power_point(config, scenario);
  const ObjectiveSpec spec = objective_for(config, scenario, p);
  AllocationResult candidate;
  candidate.areas = config.areas;
  const VerificationReport rep = verify(scenario, candidate, spec, config.settings);
  out << "verify[" << to_string(spec.kind) << "] s=" << format_number(s)
      << ": feasibility_gap=" << format_number(rep.feasibility_gap)
      << " kkt_residual=" << format_number(rep.kkt_residual)
      << " mean_marginal=" << format_number(rep.mean_abs_marginal)
      << " oracle_gap=" << format_number(rep.oracle_gap)
      << " slack=" << format_number(rep.oracle_slack) << " pinned=";
  for (std::size_t i = 0; i < rep.boundary_pinned.size(); ++i) {
    if (rep.boundary_pinned[i]) out << scenario.units[i].name << ";";
  }
  out << " result=" << (rep.passed() ? "PASS" : "FAIL") << "\n";
  return rep.passed() ? kOk : kCheckFailed;
}

int cmd_dump(const RunConfig& config, std::ostream& out) {
  const Scenario scenario = scenario_for(config);
  write(config, "scenario.json", dump_scenario_json(scenario));
  out << "dump: wrote " << (config.out_dir / "scenario.json").string() << "\n";
  return kOk;
}

}  // namespace

void check(const RunConfig& config) {
  if (std::find(kCommands.begin(), kCommands.end(), config.command) == kCommands.end()) {
    throw ConfigError("unknown command '" + config.command + "'");
  }
  if (config.preset.empty() == config.config_path.empty()) {
    throw ConfigError("give exactly one of --preset or --config");
  }
  config.settings.check();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    check(config);
    std::filesystem::create_directories(config.out_dir);
    if (config.command == "solve") return cmd_solve(config, out);
    if (config.command == "sweep") return cmd_sweep(config, out, err);
    if (config.command == "curve") return cmd_curve(config, out);
    if (config.command == "limit-check") return cmd_limit(config, out);
    if (config.command == "datacenter") return cmd_datacenter(config, out, err);
    if (config.command == "oracle-check") return cmd_oracle_check(config, out);
    if (config.command == "verify") return cmd_verify(config, out);
    return cmd_dump(config, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const ConvergenceError& e) {
    err << "solver did not converge: " << e.what() << "\n";
    return kSolverError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  }
}

int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal area allocation for heterogeneous chips (delay, energy, data-center)"};
  app.require_subcommand(1);

  RunConfig config;
  std::string objective;
  double feasibility_tol = config.settings.feasibility_tol;
  double marginal_tol = config.settings.marginal_tol;
  int max_iterations = config.settings.max_iterations;

  for (const auto& name : kCommands) {
    CLI::App* sub = app.add_subcommand(name, describe_command(name));
    sub->add_option("--preset", config.preset, "Built-in scenario: hpc or multi-accel");
    sub->add_option("--config", config.config_path, "Scenario JSON file");
    sub->add_option("--objective", objective, "delay, energy or datacenter")
        ->check(CLI::IsMember({"delay", "energy", "datacenter"}));
    sub->add_option("--s", config.s_values, "P_sys fractions of the total power budget")
        ->delimiter(',');
    sub->add_option("--psys", config.psys, "Absolute P_sys");
    sub->add_option("--w", config.w, "Data-center dynamic-power weight (>= 1)");
    sub->add_option("--pconst", config.pconst, "Data-center constant power values")
        ->delimiter(',');
    sub->add_option("--grid-step", config.grid_step, "Oracle grid step (area units)");
    sub->add_option("--ladder", config.ladder, "P_sys ladder for limit-check")->delimiter(',');
    sub->add_option("--areas", config.areas, "Allocation to verify")->delimiter(',');
    sub->add_option("--points", config.points, "Samples per energy curve");
    sub->add_flag("--plot", config.plot, "Also write SVG figures");
    sub->add_option("--out", config.out_dir, "Output directory");
    sub->add_option("--feasibility-tol", feasibility_tol, "Relative to A");
    sub->add_option("--marginal-tol", marginal_tol, "Relative to the mean marginal");
    sub->add_option("--max-iterations", max_iterations, "Bisection steps");
    sub->callback([&config, name] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kConfigError;
  }
  if (!objective.empty()) config.objective = parse_objective_kind(objective);
  config.settings.feasibility_tol = feasibility_tol;
  config.settings.marginal_tol = marginal_tol;
  config.settings.max_iterations = max_iterations;
  return run(config, out, err);
}

}  // namespace multiamdahl::cli
