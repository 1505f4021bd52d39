#include "eyield/experiment.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "eyield/error.hpp"
#include "eyield/io.hpp"
#include "eyield/liouvillian.hpp"

namespace eyield {

namespace fs = std::filesystem;

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::None: return "none";
    case SweepVariable::ReorgEnergy: return "reorg";
    case SweepVariable::DephasingRate: return "dephasing";
    case SweepVariable::CorrelationLength: return "lambda";
  }
  return "none";
}

SweepVariable sweep_variable_from_string(const std::string& s) {
  if (s == "none") return SweepVariable::None;
  if (s == "reorg") return SweepVariable::ReorgEnergy;
  if (s == "dephasing") return SweepVariable::DephasingRate;
  if (s == "lambda") return SweepVariable::CorrelationLength;
  throw ConfigError("unknown sweep variable '" + s + "' (expected reorg, dephasing or lambda)");
}

std::string sweep_column_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::ReorgEnergy: return "reorg_energy_cm1";
    case SweepVariable::DephasingRate: return "dephasing_rate_per_ps";
    case SweepVariable::CorrelationLength: return "correlation_length_angstrom";
    case SweepVariable::None: break;
  }
  return "none";
}

ExperimentInputs load_inputs(const SweepConfig& cfg) {
  ExperimentInputs in{load_network(cfg.network_path), load_bath(cfg.bath_path), load_partition(cfg.partition_path)};
  in.partition.validate(in.network.n_sites());
  validate(cfg, in);
  return in;
}

void validate(const SweepConfig& cfg, const ExperimentInputs& inputs) {
  std::vector<std::string> bad;
  if (cfg.initial_sites.empty()) bad.push_back("no initial sites given");
  for (int s : cfg.initial_sites)
    if (s < 1 || static_cast<std::size_t>(s) > inputs.network.n_sites())
      bad.push_back("initial site " + std::to_string(s) + " outside 1.." + std::to_string(inputs.network.n_sites()));
  if (cfg.variable != SweepVariable::None) {
    if (cfg.values.empty()) bad.push_back("sweep values are empty");
    for (std::size_t i = 0; i < cfg.values.size(); ++i) {
      if (!std::isfinite(cfg.values[i])) bad.push_back("sweep value " + std::to_string(i + 1) + " is not finite");
      if (cfg.values[i] < 0.0) bad.push_back("sweep value " + format_number(cfg.values[i]) + " is negative");
      if (i > 0 && !(cfg.values[i] > cfg.values[i - 1])) bad.push_back("sweep values must be strictly increasing");
    }
    const bool dephasing = inputs.bath.model == BathModel::PureDephasing;
    if (cfg.variable == SweepVariable::DephasingRate && !dephasing)
      bad.push_back("a dephasing-rate sweep needs a bath with model 'dephasing'");
    if (cfg.variable == SweepVariable::ReorgEnergy && dephasing)
      bad.push_back("a reorganization-energy sweep needs a bath with model 'secular'");
    if (cfg.variable == SweepVariable::CorrelationLength && dephasing)
      bad.push_back("a correlation-length sweep needs a bath with model 'secular'");
    if (cfg.variable == SweepVariable::CorrelationLength && !inputs.network.has_geometry())
      bad.push_back("a correlation-length sweep needs site positions or distances");
  }
  if (!(cfg.solver.horizon > 0.0)) bad.push_back("horizon must be positive");
  if (!(cfg.solver.max_step > 0.0)) bad.push_back("max_step must be positive");
  if (!(cfg.solver.rtol > 0.0) || !(cfg.solver.atol > 0.0)) bad.push_back("tolerances must be positive");
  if (cfg.output_dir.empty()) bad.push_back("no output directory given");
  if (!bad.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& b : bad) msg += "\n  " + b;
    throw ConfigError(msg);
  }
}

BathSpec apply_sweep_value(const BathSpec& bath, SweepVariable variable, double value) {
  BathSpec b = bath;
  switch (variable) {
    case SweepVariable::ReorgEnergy: b.reorg_energy = value; break;
    case SweepVariable::DephasingRate: b.dephasing_rate = value; break;
    case SweepVariable::CorrelationLength: b.correlation_length = value; break;
    case SweepVariable::None: break;
  }
  validate(b);
  return b;
}

ResultRow run_point(const ExperimentInputs& inputs, SweepVariable variable, double value, int initial_site,
                    const EvolveOptions& solver) {
  ResultRow row;
  row.sweep_value = value;
  row.initial_site = initial_site;
  try {
    const BathSpec bath = apply_sweep_value(inputs.bath, variable, value);
    ClampReport clamp;
    const Liouvillian l = build_liouvillian(inputs.network, bath, {}, &clamp);
    row.clamped_eigenvalues = clamp.clamped_eigenvalues;
    row.most_negative_rate_ratio = clamp.most_negative_ratio;
    const auto rho0 = localized_state(initial_site, static_cast<int>(inputs.network.n_sites()));
    const YieldReport r = compute_yield_report(inputs.network, l, rho0, inputs.partition, solver);
    row.eta = r.quantum_yield;
    row.eta_oracle = r.yield_oracle;
    row.phi_total = r.entanglement_yield_total;
    row.phi_groups = r.entanglement_yield_groups;
    row.truncation_bound = r.truncation_bound;
    row.stats = r.stats;
    row.ok = true;
    for (const auto& w : r.warnings) row.message += (row.message.empty() ? "" : "; ") + w;
  } catch (const NonPositiveRatesError& e) {
    row.message = e.what();
  } catch (const Error& e) {
    row.message = e.what();
  } catch (const std::exception& e) {
    row.message = std::string("unexpected failure: ") + e.what();
  }
  return row;
}

std::vector<std::string> result_header(const SweepConfig& cfg, const PairPartition& partition) {
  std::vector<std::string> h{sweep_column_name(cfg.variable), "initial_site", "status", "eta", "eta_oracle", "phi_T"};
  for (const auto& l : partition.labels()) h.push_back("phi_" + l);
  for (const char* c : {"truncation_bound", "clamped_eigenvalues", "min_rate_ratio", "steps", "rejected_steps",
                        "final_time_ps", "message"})
    h.emplace_back(c);
  return h;
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + '"';
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

std::string point_key(double value, int site) { return format_number(value) + "," + std::to_string(site); }

}  // namespace

std::string format_row(const ResultRow& row, std::size_t n_groups) {
  std::ostringstream os;
  os << format_number(row.sweep_value) << ',' << row.initial_site << ',' << (row.ok ? "ok" : "failed");
  if (row.ok) {
    os << ',' << format_number(row.eta) << ',' << format_number(row.eta_oracle) << ','
       << format_number(row.phi_total);
    for (std::size_t g = 0; g < n_groups; ++g) os << ',' << format_number(row.phi_groups.at(g));
    os << ',' << format_number(row.truncation_bound) << ',' << row.clamped_eigenvalues << ','
       << format_number(row.most_negative_rate_ratio) << ',' << row.stats.steps << ',' << row.stats.rejected << ','
       << format_number(row.stats.final_time);
  } else {
    for (std::size_t i = 0; i < 3 + n_groups + 6; ++i) os << ',';
  }
  os << ',' << csv_quote(row.message);
  return os.str();
}

std::size_t default_worker_count() {
  if (const char* env = std::getenv("EYIELD_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
    throw ConfigError(std::string("EYIELD_WORKERS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 initialisation failed");
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::string hex;
  char b[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(b, sizeof b, "%02x", md[i]);
    hex += b;
  }
  return hex;
}

nlohmann::json config_echo(const SweepConfig& cfg, const ExperimentInputs& inputs) {
  auto file = [](const fs::path& p) {
    return nlohmann::json{{"path", fs::absolute(p).lexically_normal().string()}, {"sha256", sha256_file(p)}};
  };
  nlohmann::json values = nlohmann::json::array();
  for (double v : cfg.values) values.push_back(v);
  return {{"inputs",
           {{"network", file(cfg.network_path)},
            {"bath", file(cfg.bath_path)},
            {"partition", file(cfg.partition_path)}}},
          {"initial_sites", cfg.initial_sites},
          {"sweep", {{"variable", to_string(cfg.variable)}, {"column", sweep_column_name(cfg.variable)}, {"values", values}}},
          {"solver",
           {{"horizon_ps", cfg.solver.horizon},
            {"rtol", cfg.solver.rtol},
            {"atol", cfg.solver.atol},
            {"max_step_ps", cfg.solver.max_step},
            {"termination_population", cfg.solver.termination_population}}},
          {"resolved", {{"network", network_to_json(inputs.network)},
                        {"bath", bath_to_json(inputs.bath)},
                        {"partition", partition_to_json(inputs.partition)}}}};
}

namespace {

void write_config(const SweepConfig& cfg, const ExperimentInputs& inputs) {
  std::ofstream out(cfg.output_dir / "config.json");
  if (!out) throw ConfigError("cannot write '" + (cfg.output_dir / "config.json").string() + "'");
  out << config_echo(cfg, inputs).dump(2) << '\n';
}

// Lines of a previous results.csv whose status is ok, keyed by (value, site).
std::map<std::string, std::string> previous_ok_rows(const fs::path& path, const std::string& header) {
  std::map<std::string, std::string> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw ConfigError("--resume: '" + path.string() + "' has a different header; remove it or change --out");
  while (std::getline(in, line)) {
    const auto f = csv_split(line);
    if (f.size() >= 3 && f[2] == "ok") out[f[0] + "," + f[1]] = line;
  }
  return out;
}

}  // namespace

SweepOutcome run_sweep(const SweepConfig& cfg) {
  if (cfg.variable == SweepVariable::None) throw ConfigError("sweep: no sweep variable given");
  const ExperimentInputs inputs = load_inputs(cfg);
  fs::create_directories(cfg.output_dir);
  write_config(cfg, inputs);

  const std::size_t n_groups = inputs.partition.groups().size();
  const std::string header = join(result_header(cfg, inputs.partition));
  SweepOutcome outcome;
  outcome.results_path = cfg.output_dir / "results.csv";

  std::map<std::string, std::string> reuse;
  if (cfg.resume) reuse = previous_ok_rows(outcome.results_path, header);

  struct Job {
    double value;
    int site;
    std::optional<std::string> cached;
  };
  std::vector<Job> jobs;
  for (double v : cfg.values)
    for (int s : cfg.initial_sites) {
      auto it = reuse.find(point_key(v, s));
      jobs.push_back({v, s, it == reuse.end() ? std::nullopt : std::optional<std::string>(it->second)});
    }

  // Write to a temporary file and move it over results.csv at the end, so an
  // interrupted resume never destroys previously completed rows.
  const fs::path partial = cfg.output_dir / "results.csv.partial";
  std::ofstream out(partial);
  if (!out) throw ConfigError("cannot write '" + partial.string() + "'");
  out << header << '\n';

  std::vector<std::optional<ResultRow>> done(jobs.size());
  std::mutex mu;
  std::size_t next_job = 0;
  std::size_t next_write = 0;

  auto flush_ready = [&]() {
    while (next_write < jobs.size()) {
      const Job& j = jobs[next_write];
      if (j.cached) {
        out << *j.cached << '\n';
        ++outcome.reused;
      } else if (done[next_write]) {
        const ResultRow& r = *done[next_write];
        out << format_row(r, n_groups) << '\n';
        if (!r.ok) ++outcome.failed;
        outcome.rows.push_back(r);
      } else {
        break;
      }
      ++next_write;
    }
    out.flush();
  };

  auto worker = [&]() {
    for (;;) {
      std::size_t k;
      {
        std::lock_guard<std::mutex> lock(mu);
        while (next_job < jobs.size() && jobs[next_job].cached) ++next_job;
        if (next_job >= jobs.size()) return;
        k = next_job++;
      }
      ResultRow row = run_point(inputs, cfg.variable, jobs[k].value, jobs[k].site, cfg.solver);
      std::lock_guard<std::mutex> lock(mu);
      done[k] = std::move(row);
      flush_ready();
    }
  };

  const std::size_t n_workers = std::max<std::size_t>(1, cfg.workers ? cfg.workers : default_worker_count());
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  }
  flush_ready();
  out.close();
  fs::rename(partial, outcome.results_path);
  return outcome;
}

std::vector<fs::path> run_time_trace(const SweepConfig& cfg) {
  const ExperimentInputs inputs = load_inputs(cfg);
  fs::create_directories(cfg.output_dir);
  write_config(cfg, inputs);
  const Liouvillian l = build_liouvillian(inputs.network, inputs.bath);
  std::vector<fs::path> written;
  for (int site : cfg.initial_sites) {
    const fs::path trace_path = cfg.output_dir / ("trace_site" + std::to_string(site) + ".csv");
    std::ofstream trace(trace_path);
    if (!trace) throw ConfigError("cannot write '" + trace_path.string() + "'");
    ObservableTableWriter table(trace, inputs.network, inputs.partition);
    std::optional<std::ofstream> traj;
    std::optional<TrajectoryTableWriter> traj_table;
    if (cfg.write_trajectory) {
      const fs::path p = cfg.output_dir / ("trajectory_site" + std::to_string(site) + ".csv");
      traj.emplace(p);
      if (!*traj) throw ConfigError("cannot write '" + p.string() + "'");
      traj_table.emplace(*traj, static_cast<Eigen::Index>(inputs.network.n_sites()));
      written.push_back(p);
    }
    const auto rho0 = localized_state(site, static_cast<int>(inputs.network.n_sites()));
    propagate(rho0, l, cfg.solver, [&](double t, const DensityMatrix& rho) {
      table.observe(t, rho);
      if (traj_table) traj_table->observe(t, rho);
    });
    written.push_back(trace_path);
  }
  return written;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw DomainError("log_grid: need 0 < lo < hi and count >= 2");
  std::vector<double> g(count);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> default_reorg_grid() { return log_grid(1e-3, 50.0, 48); }

CrossingResult find_crossings(const std::vector<double>& grid, const std::vector<double>& a,
                              const std::vector<double>& b) {
  if (grid.size() != a.size() || grid.size() != b.size()) throw DomainError("find_crossings: mismatched grids");
  CrossingResult r;
  if (grid.empty()) return r;
  std::vector<double> d(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) d[i] = a[i] - b[i];
  if (std::all_of(d.begin(), d.end(), [](double x) { return x == 0.0; })) {
    r.identical = true;
    return r;
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (d[i] == 0.0) {
      // A touch at an interior grid point counts once; a touch at the first
      // point is not a crossing of the sampled range.
      if (i > 0 && d[i - 1] != 0.0) {
        r.crossings.push_back(grid[i]);
        r.intervals.push_back(i);
      }
      continue;
    }
    if (d[i] * d[i + 1] < 0.0) {
      r.crossings.push_back(grid[i] + (grid[i + 1] - grid[i]) * d[i] / (d[i] - d[i + 1]));
      r.intervals.push_back(i);
    }
  }
  return r;
}

std::size_t ResultTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw ConfigError("results table has no column '" + name + "'");
}

ResultTable read_result_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  ResultTable t;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("'" + path.string() + "' is empty");
  t.header = csv_split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = csv_split(line);
    if (f.size() != t.header.size())
      throw ParseError("'" + path.string() + "': row with " + std::to_string(f.size()) + " fields, header has " +
                       std::to_string(t.header.size()));
    t.rows.push_back(std::move(f));
  }
  return t;
}

ColumnCrossings crossing_finder(const ResultTable& table, const std::string& column) {
  const std::size_t c = table.column(column);
  const std::size_t status = table.column("status");
  const std::size_t site_col = table.column("initial_site");
  std::map<int, std::vector<std::pair<double, double>>> curves;
  for (const auto& row : table.rows) {
    if (row[status] != "ok") throw ConfigError("crossing_finder: table contains failed points; rerun with --resume");
    curves[std::stoi(row[site_col])].emplace_back(std::stod(row[0]), std::stod(row[c]));
  }
  if (curves.size() != 2)
    throw ConfigError("crossing_finder: need exactly two initial sites, table has " + std::to_string(curves.size()));
  ColumnCrossings out;
  out.column = column;
  auto it = curves.begin();
  out.site_a = it->first;
  auto ca = it->second;
  ++it;
  out.site_b = it->first;
  auto cb = it->second;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  if (ca.size() != cb.size()) throw DomainError("crossing_finder: mismatched grids");
  std::vector<double> a, b;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i].first != cb[i].first) throw DomainError("crossing_finder: mismatched grids");
    out.grid.push_back(ca[i].first);
    a.push_back(ca[i].second);
    b.push_back(cb[i].second);
  }
  out.result = find_crossings(out.grid, a, b);
  return out;
}

double bisect_crossing(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
                       int max_iterations) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw DomainError("bisect_crossing: no sign change on the bracket");
  for (int i = 0; i < max_iterations && hi - lo > rel_tol * std::abs(hi); ++i) {
    // Geometric midpoint for brackets spanning decades on a log grid.
    const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) * 0.5;
}

}  // namespace eyield
