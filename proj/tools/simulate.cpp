// Command-line driver: time traces, parameter sweeps and crossing searches.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eyield/error.hpp"
#include "eyield/experiment.hpp"
#include "eyield/io.hpp"

namespace {

using namespace eyield;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

struct Args {
  std::string network, bath, partition, init = "1,6", var = "none", values, out;
  bool resume = false, refine = false, trajectory = false;
  std::optional<double> horizon, rtol, atol, max_step;
  std::string columns;
  double refine_tol = 1e-3;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& s, const char* what) {
  std::vector<T> out;
  for (const auto& item : split(s)) {
    std::size_t used = 0;
    try {
      if constexpr (std::is_same_v<T, int>) out.push_back(std::stoi(item, &used));
      else out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ConfigError(std::string("--") + what + ": cannot parse '" + item + "'");
  }
  return out;
}

SweepConfig make_config(const Args& a, bool sweep) {
  SweepConfig c;
  c.network_path = a.network;
  c.bath_path = a.bath;
  c.partition_path = a.partition;
  c.initial_sites = parse_list<int>(a.init, "init");
  c.variable = sweep_variable_from_string(a.var);
  c.output_dir = a.out;
  c.resume = a.resume;
  c.write_trajectory = a.trajectory;
  if (sweep) {
    if (c.variable == SweepVariable::None) throw ConfigError("--var is required (reorg, dephasing or lambda)");
    if (!a.values.empty()) c.values = parse_list<double>(a.values, "values");
    else if (c.variable == SweepVariable::ReorgEnergy) c.values = default_reorg_grid();
    else throw ConfigError("--values is required for --var " + a.var);
  } else {
    if (c.variable != SweepVariable::None) throw ConfigError("trace does not take --var");
    c.solver.horizon = kTraceHorizon;
    c.solver.termination_population = 0.0;
  }
  if (a.horizon) c.solver.horizon = *a.horizon;
  if (a.rtol) c.solver.rtol = *a.rtol;
  if (a.atol) c.solver.atol = *a.atol;
  if (a.max_step) c.solver.max_step = *a.max_step;
  return c;
}

int report_sweep(const SweepOutcome& o) {
  std::cerr << "wrote " << o.results_path.string() << ": " << o.rows.size() << " computed, " << o.reused
            << " reused, " << o.failed << " failed\n";
  for (const auto& r : o.rows)
    if (!r.ok) std::cerr << "  failed at " << format_number(r.sweep_value) << ", site " << r.initial_site << ": "
                         << r.message << '\n';
  return o.failed ? kExitPartial : kExitOk;
}

int cmd_trace(const Args& a) {
  for (const auto& p : run_time_trace(make_config(a, false))) std::cerr << "wrote " << p.string() << '\n';
  return kExitOk;
}

int cmd_sweep(const Args& a) { return report_sweep(run_sweep(make_config(a, true))); }

int cmd_crossings(const Args& a) {
  const SweepConfig cfg = make_config(a, true);
  if (cfg.initial_sites.size() != 2) throw ConfigError("crossings needs exactly two initial sites");
  const int code = report_sweep(run_sweep(cfg));
  if (code != kExitOk) {
    std::cerr << "crossings skipped: the sweep has failed points\n";
    return code;
  }
  const ResultTable table = read_result_table(cfg.output_dir / "results.csv");
  std::vector<std::string> columns = split(a.columns);
  if (columns.empty())
    for (const auto& h : table.header)
      if (h == "eta" || h.rfind("phi_", 0) == 0) columns.push_back(h);

  std::optional<ExperimentInputs> inputs;
  if (a.refine) inputs = load_inputs(cfg);

  const std::filesystem::path path = cfg.output_dir / "crossings.csv";
  std::ofstream out(path);
  out << "column,site_a,site_b,status,crossing,grid_lower,grid_upper,refined\n";
  for (const auto& col : columns) {
    const ColumnCrossings c = crossing_finder(table, col);
    const std::string prefix = col + "," + std::to_string(c.site_a) + "," + std::to_string(c.site_b);
    if (c.result.identical) {
      out << prefix << ",identical,,,,\n";
      continue;
    }
    if (c.result.crossings.empty()) {
      out << prefix << ",none,,,,\n";
      continue;
    }
    for (std::size_t k = 0; k < c.result.crossings.size(); ++k) {
      const std::size_t i = c.result.intervals[k];
      const double lo = c.grid[i];
      const double hi = c.grid[std::min(i + 1, c.grid.size() - 1)];
      std::string refined;
      if (inputs && hi > lo) {
        auto diff = [&](double x) {
          const ResultRow ra = run_point(*inputs, cfg.variable, x, c.site_a, cfg.solver);
          const ResultRow rb = run_point(*inputs, cfg.variable, x, c.site_b, cfg.solver);
          if (!ra.ok || !rb.ok) throw Error("refinement point failed: " + (ra.ok ? rb.message : ra.message));
          const std::size_t idx = table.column(col);
          auto pick = [&](const ResultRow& r) {
            if (col == "eta") return r.eta;
            if (col == "eta_oracle") return r.eta_oracle;
            if (col == "phi_T") return r.phi_total;
            return r.phi_groups.at(idx - table.column("phi_T") - 1);
          };
          return pick(ra) - pick(rb);
        };
        refined = format_number(bisect_crossing(diff, lo, hi, a.refine_tol));
      }
      out << prefix << ",crossing," << format_number(c.result.crossings[k]) << ',' << format_number(lo) << ','
          << format_number(hi) << ',' << refined << '\n';
    }
  }
  std::cerr << "wrote " << path.string() << '\n';
  return kExitOk;
}

void add_common(CLI::App* app, Args& a, bool sweep) {
  app->add_option("--network", a.network, "Network JSON file")->required()->check(CLI::ExistingFile);
  app->add_option("--bath", a.bath, "Bath JSON file")->required()->check(CLI::ExistingFile);
  app->add_option("--partition", a.partition, "Pair partition JSON file")->required()->check(CLI::ExistingFile);
  app->add_option("--init", a.init, "Initial sites, comma separated")->capture_default_str();
  app->add_option("--out", a.out, "Output directory")->required();
  app->add_option("--horizon", a.horizon, "Integration horizon in ps");
  app->add_option("--rtol", a.rtol, "Relative tolerance");
  app->add_option("--atol", a.atol, "Absolute tolerance");
  app->add_option("--max-step", a.max_step, "Sample spacing and largest step in ps");
  if (sweep) {
    app->add_option("--var", a.var, "Swept quantity: reorg, dephasing or lambda")->required();
    app->add_option("--values", a.values, "Sweep values, comma separated, strictly increasing");
    app->add_flag("--resume", a.resume, "Keep ok rows of an existing results.csv and recompute the rest");
  } else {
    app->add_flag("--trajectory", a.trajectory, "Also write populations and coherence magnitudes");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-transfer yield and entanglement-yield simulator"};
  app.require_subcommand(1);
  Args a;
  auto* trace = app.add_subcommand("trace", "Time traces of the entanglement partition and trapping density");
  add_common(trace, a, false);
  auto* sweep = app.add_subcommand("sweep", "Quantum and entanglement yields over a parameter grid");
  add_common(sweep, a, true);
  auto* crossings = app.add_subcommand("crossings", "Sweep two initial sites and locate where their curves cross");
  add_common(crossings, a, true);
  crossings->add_option("--columns", a.columns, "Result columns to compare (default: eta and all phi columns)");
  crossings->add_flag("--refine-crossings", a.refine, "Bisect each crossing by re-running the simulator");
  crossings->add_option("--refine-tol", a.refine_tol, "Relative bracket width at which bisection stops")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*trace) return cmd_trace(a);
    if (*sweep) return cmd_sweep(a);
    return cmd_crossings(a);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPartial;
  }
}
