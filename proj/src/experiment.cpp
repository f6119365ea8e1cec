#include "shf/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace shf {
namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& msg) {
  throw Error(ErrorCode::kConfig, field + ": " + msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& field, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty() || !std::isfinite(v)) {
    config_error(field, "expected a number, got '" + text + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& field, const std::string& text) {
  std::uint64_t v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    config_error(field, "expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& field, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  config_error(field, "expected true or false, got '" + text + "'");
}

std::vector<double> parse_list(const std::string& field, const std::string& text) {
  std::vector<double> out;
  const auto parts = split(text, ',');
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out.push_back(parse_double(field + "[" + std::to_string(i) + "]", parts[i]));
  }
  if (out.empty()) config_error(field, "expected a non-empty list");
  return out;
}

template <class T>
T checked_count(const std::string& field, const std::string& text) {
  const std::uint64_t v = parse_uint(field, text);
  if (v > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) {
    config_error(field, "value out of range");
  }
  return static_cast<T>(v);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::ofstream open_output(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  return out;
}

void write_traces(const std::string& dir,
                  const std::map<std::string, TraceRows>& traces) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create directory '" + dir + "'");
  for (const auto& [name, rows] : traces) {
    auto out = open_output((std::filesystem::path(dir) / (name + ".csv")).string());
    write_trace_csv(out, rows);
  }
}

std::string averages_path(const OutputSpec& out) {
  if (!out.averages.empty()) return out.averages;
  if (out.csv.empty()) return "";
  std::filesystem::path p(out.csv);
  const std::string stem = p.stem().string();
  return (p.parent_path() / (stem + "_avg.csv")).string();
}

SystemParams params_for(const ExperimentConfig& cfg, std::optional<double> value) {
  SystemParams p = cfg.params;
  if (value) {
    if (cfg.sweep.param == "T") p.duration = *value;
    if (cfg.sweep.param == "V") p.max_speed = *value;
  }
  return p;
}

std::string cell_label(const ExperimentConfig& cfg, std::optional<double> value,
                       std::size_t trial) {
  std::string s;
  if (value) s = cfg.sweep.param + "=" + format_number(*value) + " ";
  return s + "trial " + std::to_string(trial);
}

template <class Fn>
void run_parallel(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count || failed.load()) return;
          try {
            fn(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
            return;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::string describe_rows(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  for (const auto& r : rows) {
    out << r.algorithm << ": ";
    if (r.min_energy) {
      out << "min_energy_j=" << format_number(*r.min_energy)
          << " hover_count=" << r.hover_count << " x_i=" << format_number(r.x_i)
          << " x_f=" << format_number(r.x_f);
      if (r.gap) out << " gap=" << format_number(*r.gap);
    } else {
      out << "failed";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kOptimal: return "optimal";
    case Algorithm::kHeuristic: return "heuristic";
    case Algorithm::kSca: return "sca";
    case Algorithm::kUpperBound: return "upper_bound";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::kOptimal, Algorithm::kHeuristic, Algorithm::kSca,
                      Algorithm::kUpperBound}) {
    if (name == algorithm_name(a)) return a;
  }
  config_error("algorithms", "unknown algorithm '" + name + "'");
}

bool ExperimentConfig::has(Algorithm a) const {
  return std::find(algorithms.begin(), algorithms.end(), a) != algorithms.end();
}

void ExperimentConfig::validate() const {
  auto positive = [](const char* field, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) config_error(field, "must be positive");
  };
  positive("beta0_db", params.beta0);
  positive("p_dbm", params.power);
  positive("altitude_m", params.altitude);
  positive("max_speed_mps", params.max_speed);
  positive("duration_s", params.duration);
  if (topology.positions.empty()) {
    if (topology.k == 0) config_error("topology.k", "must be at least 1");
    positive("topology.d", topology.d);
  }
  if (algorithms.empty()) config_error("algorithms", "must list at least one");
  if (!sweep.param.empty()) {
    if (sweep.param != "T" && sweep.param != "V") {
      config_error("sweep.param", "must be T or V");
    }
    for (std::size_t i = 0; i < sweep.values.size(); ++i) {
      positive(("sweep.values[" + std::to_string(i) + "]").c_str(), sweep.values[i]);
    }
  }
  if (trials == 0) config_error("trials", "must be at least 1");
  positive("planner.d_min", planner.d_min);
  positive("planner.gap_tol", planner.gap_tol);
  if (planner.refine) {
    positive("planner.refine_radius", planner.refine_radius);
    positive("planner.refine_step", planner.refine_step);
  }
  if (sca_dt < 0.0) config_error("sca.dt", "must be positive");
  if (sca.max_iterations < 1) config_error("sca.max_iterations", "must be at least 1");
  positive("verify.dx", verify.dx);
  positive("verify.dt", verify.dt);
  if (verify.restarts == 0) config_error("verify.restarts", "must be at least 1");
}

void apply_setting(ExperimentConfig& cfg, const std::string& key,
                   const std::string& raw) {
  const std::string value = trim(raw);
  const std::string& k = key;
  if (k == "beta0_db") {
    cfg.params.beta0 = db_to_linear(parse_double(k, value));
  } else if (k == "p_dbm") {
    cfg.params.power = dbm_to_watts(parse_double(k, value));
  } else if (k == "altitude_m") {
    cfg.params.altitude = parse_double(k, value);
  } else if (k == "max_speed_mps") {
    cfg.params.max_speed = parse_double(k, value);
  } else if (k == "duration_s") {
    cfg.params.duration = parse_double(k, value);
  } else if (k == "topology.positions") {
    std::vector<double> pos = parse_list(k, value);
    std::sort(pos.begin(), pos.end());
    cfg.topology.positions = std::move(pos);
  } else if (k == "topology.k") {
    cfg.topology.k = checked_count<std::size_t>(k, value);
  } else if (k == "topology.d") {
    cfg.topology.d = parse_double(k, value);
  } else if (k == "topology.seed") {
    cfg.topology.seed = parse_uint(k, value);
  } else if (k == "algorithms") {
    cfg.algorithms.clear();
    for (const auto& name : split(value, ',')) {
      const Algorithm a = parse_algorithm(name);
      if (!cfg.has(a)) cfg.algorithms.push_back(a);
    }
  } else if (k == "sweep.param") {
    if (value == "duration_s") {
      cfg.sweep.param = "T";
    } else if (value == "max_speed_mps") {
      cfg.sweep.param = "V";
    } else {
      cfg.sweep.param = value;
    }
  } else if (k == "sweep.values") {
    cfg.sweep.values = parse_list(k, value);
  } else if (k == "trials") {
    cfg.trials = checked_count<std::size_t>(k, value);
  } else if (k == "workers") {
    cfg.workers = checked_count<unsigned>(k, value);
  } else if (k == "planner.d_min") {
    cfg.planner.d_min = parse_double(k, value);
  } else if (k == "planner.gap_tol") {
    cfg.planner.gap_tol = parse_double(k, value);
  } else if (k == "planner.refine") {
    cfg.planner.refine = parse_bool(k, value);
  } else if (k == "planner.refine_radius") {
    cfg.planner.refine_radius = parse_double(k, value);
  } else if (k == "planner.refine_step") {
    cfg.planner.refine_step = parse_double(k, value);
  } else if (k == "planner.warm_start") {
    cfg.planner.warm_start = parse_bool(k, value);
  } else if (k == "planner.workers") {
    cfg.planner.workers = checked_count<unsigned>(k, value);
  } else if (k == "sca.dt") {
    cfg.sca_dt = parse_double(k, value);
  } else if (k == "sca.max_iterations") {
    cfg.sca.max_iterations = checked_count<int>(k, value);
  } else if (k == "sca.rel_tol") {
    cfg.sca.rel_tol = parse_double(k, value);
  } else if (k == "verify.dx") {
    cfg.verify.dx = parse_double(k, value);
  } else if (k == "verify.dt") {
    cfg.verify.dt = parse_double(k, value);
  } else if (k == "verify.restarts") {
    cfg.verify.restarts = checked_count<std::size_t>(k, value);
  } else if (k == "verify.seed") {
    cfg.verify.seed = parse_uint(k, value);
  } else if (k == "output.summary") {
    cfg.output.summary = value;
  } else if (k == "output.traces") {
    cfg.output.traces = value;
  } else if (k == "output.csv") {
    cfg.output.csv = value;
  } else if (k == "output.averages") {
    cfg.output.averages = value;
  } else if (k == "output.timing") {
    cfg.output.timing = parse_bool(k, value);
  } else {
    config_error(k, "unknown key");
  }
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfig, where + "expected 'key = value'");
    }
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfig, where + e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, source + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config '" + path + "'");
  return parse_config(in, path);
}

std::uint64_t trial_seed(const TopologySpec& spec, std::size_t trial) {
  return mix_seed(spec.seed, trial);
}

Topology make_topology(const TopologySpec& spec, std::size_t trial) {
  if (!spec.positions.empty()) return Topology::from_unsorted(spec.positions);
  Rng rng(trial_seed(spec, trial));
  std::vector<double> pos(spec.k);
  for (double& x : pos) x = rng.uniform(0.0, spec.d);
  return Topology::from_unsorted(std::move(pos));
}

TrialOutcome run_trial(const ExperimentConfig& cfg, const SystemParams& params,
                       const Topology& topo, bool want_traces) {
  TrialOutcome out;
  std::optional<HeuristicResult> heuristic;
  std::string heuristic_error;
  double heuristic_time = 0.0;
  auto get_heuristic = [&]() -> const HeuristicResult* {
    if (!heuristic && heuristic_error.empty()) {
      const auto t0 = Clock::now();
      try {
        heuristic = heuristic_shf(params, topo, cfg.planner);
      } catch (const Error& e) {
        heuristic_error = e.what();
      }
      heuristic_time = seconds_since(t0);
    }
    return heuristic ? &*heuristic : nullptr;
  };

  for (Algorithm a : cfg.algorithms) {
    ResultRow row;
    row.algorithm = algorithm_name(a);
    const auto t0 = Clock::now();
    try {
      switch (a) {
        case Algorithm::kOptimal: {
          const SolveReport rep = solve_p1(params, topo, cfg.planner);
          row.min_energy = rep.min_energy;
          row.gap = rep.certificate.gap;
          row.hover_count = rep.trajectory.hover_count();
          row.x_i = rep.best_window.lo;
          row.x_f = rep.best_window.hi;
          if (want_traces) out.traces[row.algorithm] = sample_trace(rep.trajectory);
          break;
        }
        case Algorithm::kUpperBound: {
          const P2Solution sol = solve_speed_free(params, topo, cfg.planner);
          row.min_energy = sol.certificate.dual_value;
          row.gap = sol.certificate.gap;
          row.hover_count = sol.schedule.points.size();
          row.x_i = sol.schedule.points.front();
          row.x_f = sol.schedule.points.back();
          break;
        }
        case Algorithm::kHeuristic: {
          const HeuristicResult* h = get_heuristic();
          if (!h) throw Error(ErrorCode::kSolverFailure, heuristic_error);
          row.min_energy = h->min_energy;
          row.hover_count = h->trajectory.hover_count();
          row.x_i = h->trajectory.start();
          row.x_f = h->trajectory.end();
          if (want_traces) out.traces[row.algorithm] = sample_trace(h->trajectory);
          break;
        }
        case Algorithm::kSca: {
          const HeuristicResult* h = get_heuristic();
          if (!h) throw Error(ErrorCode::kSolverFailure, heuristic_error);
          const double dt =
              cfg.sca_dt > 0.0 ? cfg.sca_dt : cfg.planner.d_min / params.max_speed;
          const ScaBaseline s = sca_baseline(params, topo, h->trajectory, dt, cfg.sca);
          row.min_energy = s.min_energy;
          row.x_i = s.knots.front().second;
          row.x_f = s.knots.back().second;
          if (want_traces) out.traces[row.algorithm] = sample_polyline(s.knots);
          break;
        }
      }
    } catch (const Error& e) {
      out.failures.push_back(row.algorithm + ": " + e.what());
    }
    if (cfg.output.timing) {
      row.runtime_s = seconds_since(t0);
      if (a == Algorithm::kHeuristic) row.runtime_s = heuristic_time;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

RunReport run_solve(const ExperimentConfig& cfg) {
  cfg.validate();
  const Topology topo = make_topology(cfg.topology, 0);
  TrialOutcome t = run_trial(cfg, cfg.params, topo, !cfg.output.traces.empty());
  RunReport rep;
  for (auto& r : t.rows) r.seed = cfg.topology.positions.empty() ? trial_seed(cfg.topology, 0) : 0;
  rep.rows = std::move(t.rows);
  rep.failures = std::move(t.failures);
  rep.averages = average_rows(rep.rows);
  if (!cfg.output.summary.empty()) {
    auto out = open_output(cfg.output.summary);
    write_summary_csv(out, rep.rows);
  }
  if (!cfg.output.traces.empty()) write_traces(cfg.output.traces, t.traces);
  rep.text = describe_rows(rep.rows);
  for (const auto& f : rep.failures) rep.text += "error: " + f + "\n";
  rep.passed = rep.failures.empty();
  return rep;
}

RunReport run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.sweep.param.empty() || cfg.sweep.values.empty()) {
    throw Error(ErrorCode::kConfig, "sweep.param: a sweep needs sweep.param and sweep.values");
  }
  const std::size_t nv = cfg.sweep.values.size();
  const std::size_t cells = nv * cfg.trials;
  std::vector<TrialOutcome> results(cells);
  run_parallel(cells, cfg.workers, [&](std::size_t c) {
    const double value = cfg.sweep.values[c / cfg.trials];
    const std::size_t trial = c % cfg.trials;
    const Topology topo = make_topology(cfg.topology, trial);
    results[c] = run_trial(cfg, params_for(cfg, value), topo, false);
  });

  RunReport rep;
  for (std::size_t c = 0; c < cells; ++c) {
    const double value = cfg.sweep.values[c / cfg.trials];
    const std::size_t trial = c % cfg.trials;
    const std::uint64_t seed =
        cfg.topology.positions.empty() ? trial_seed(cfg.topology, trial) : 0;
    for (auto& r : results[c].rows) {
      r.sweep_value = value;
      r.trial = trial;
      r.seed = seed;
      rep.rows.push_back(std::move(r));
    }
    for (const auto& f : results[c].failures) {
      rep.failures.push_back(cell_label(cfg, value, trial) + " " + f);
    }
  }
  rep.averages = average_rows(rep.rows);
  if (!cfg.output.csv.empty()) {
    auto out = open_output(cfg.output.csv);
    write_summary_csv(out, rep.rows);
    auto avg = open_output(averages_path(cfg.output));
    write_averages_csv(avg, rep.averages);
  }
  std::ostringstream text;
  text << "sweep over " << cfg.sweep.param << ", " << cfg.trials << " trial(s)\n";
  for (const auto& a : rep.averages) {
    text << cfg.sweep.param << "=" << format_number(*a.sweep_value) << " "
         << a.algorithm << " mean_min_energy_j=" << format_number(a.mean_min_energy)
         << " n=" << a.count << "\n";
  }
  for (const auto& f : rep.failures) text << "error: " << f << "\n";
  rep.text = text.str();
  rep.passed = rep.failures.empty();
  return rep;
}

VerifyOutcome verify_instance(const SystemParams& params, const Topology& topo,
                              const PlannerConfig& planner,
                              const VerifySpec& spec, const ScaOptions& sca) {
  VerifyOutcome v;
  const SolveReport rep = solve_p1(params, topo, planner);
  v.optimal = rep.min_energy;
  std::vector<double> lambda = rep.certificate.lambda_star;
  double sum = 0.0;
  for (double& l : lambda) {
    l = std::max(l, 0.0);
    sum += l;
  }
  for (double& l : lambda) l /= sum;
  v.lambda = lambda;
  const GridSpec grid = GridSpec::covering(topo, spec.dx, spec.dt);
  const DpResult dp = dp_weighted_max(params, topo, SimplexWeights(lambda), grid);
  v.dp_value = dp.value;
  v.slack = dp.slack;
  v.upper = dp.value + dp.slack;
  v.lower = multistart_lower_bound(params, topo, spec.dt, spec.restarts, spec.seed, sca).best;
  v.width = (v.upper - v.lower) / v.optimal;
  v.ordered = v.lower <= v.optimal && v.optimal <= v.upper;
  return v;
}

RunReport run_verify(const ExperimentConfig& cfg) {
  cfg.validate();
  const Topology topo = make_topology(cfg.topology, 0);
  const VerifyOutcome v =
      verify_instance(cfg.params, topo, cfg.planner, cfg.verify, cfg.sca);
  RunReport rep;
  std::ostringstream text;
  text << "lower_bound_j=" << format_number(v.lower) << "\n"
       << "optimal_j=" << format_number(v.optimal) << "\n"
       << "dp_weighted_j=" << format_number(v.dp_value) << "\n"
       << "slack_j=" << format_number(v.slack) << "\n"
       << "upper_bound_j=" << format_number(v.upper) << "\n"
       << "width=" << format_number(v.width) << "\n"
       << "ordered=" << (v.ordered ? "yes" : "no") << "\n";
  rep.passed = v.ordered && v.width <= 0.02;
  text << (rep.passed ? "sandwich ok" : "sandwich FAILED") << "\n";
  rep.text = text.str();
  return rep;
}

std::vector<AverageRow> average_rows(const std::vector<ResultRow>& rows) {
  std::vector<AverageRow> out;
  for (const auto& r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const AverageRow& a) {
      return a.sweep_value == r.sweep_value && a.algorithm == r.algorithm;
    });
    if (it == out.end()) {
      out.push_back(AverageRow{r.sweep_value, r.algorithm, 0.0, 0});
      it = out.end() - 1;
    }
    if (r.min_energy) {
      it->mean_min_energy += *r.min_energy;
      ++it->count;
    }
  }
  for (auto& a : out) {
    a.mean_min_energy = a.count ? a.mean_min_energy / static_cast<double>(a.count) : NAN;
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

const char* kSummaryHeader =
    "sweep_value,trial,seed,algorithm,min_energy_j,runtime_s,gap,hover_count,x_i,x_f";

std::string opt(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::optional<double> parse_opt(const std::string& field, const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(field, s);
}

}  // namespace

void write_summary_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kSummaryHeader << "\n";
  for (const auto& r : rows) {
    out << opt(r.sweep_value) << ',' << r.trial << ',' << r.seed << ','
        << r.algorithm << ',' << opt(r.min_energy) << ','
        << format_number(r.runtime_s) << ',' << opt(r.gap) << ','
        << r.hover_count << ',' << format_number(r.x_i) << ','
        << format_number(r.x_f) << "\n";
  }
}

std::vector<ResultRow> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kSummaryHeader) {
    throw Error(ErrorCode::kIo, "summary CSV: unexpected header");
  }
  std::vector<ResultRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) {
      throw Error(ErrorCode::kIo,
                  "summary CSV line " + std::to_string(lineno) + ": expected 10 fields");
    }
    try {
      ResultRow r;
      r.sweep_value = parse_opt("sweep_value", f[0]);
      r.trial = parse_uint("trial", f[1]);
      r.seed = parse_uint("seed", f[2]);
      r.algorithm = f[3];
      r.min_energy = parse_opt("min_energy_j", f[4]);
      r.runtime_s = parse_double("runtime_s", f[5]);
      r.gap = parse_opt("gap", f[6]);
      r.hover_count = parse_uint("hover_count", f[7]);
      r.x_i = parse_double("x_i", f[8]);
      r.x_f = parse_double("x_f", f[9]);
      rows.push_back(std::move(r));
    } catch (const Error& e) {
      throw Error(ErrorCode::kIo,
                  "summary CSV line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

void write_averages_csv(std::ostream& out, const std::vector<AverageRow>& rows) {
  out << "sweep_value,algorithm,mean_min_energy_j,trials\n";
  for (const auto& a : rows) {
    out << opt(a.sweep_value) << ',' << a.algorithm << ','
        << format_number(a.mean_min_energy) << ',' << a.count << "\n";
  }
}

}  // namespace shf
