#pragma once

// Experiment harness behind the command line tool: configuration files,
// seeded random topologies, single solves, parameter sweeps over T or V,
// oracle verification and CSV output.
//
// Config files hold one `key = value` per line; `#` starts a comment, lists
// are comma separated. Keys:
//
//   beta0_db, p_dbm, altitude_m, max_speed_mps, duration_s
//   topology.positions            explicit node positions, or
//   topology.k, topology.d, topology.seed
//   algorithms                    optimal, heuristic, sca, upper_bound
//   sweep.param (T | V), sweep.values, trials, workers
//   planner.d_min, planner.gap_tol, planner.refine, planner.refine_radius,
//   planner.refine_step, planner.warm_start, planner.workers
//   sca.dt, sca.max_iterations, sca.rel_tol
//   verify.dx, verify.dt, verify.restarts, verify.seed
//   output.summary, output.traces, output.csv, output.averages,
//   output.timing

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shf/baselines.hpp"
#include "shf/oracle.hpp"
#include "shf/planner.hpp"

namespace shf {

enum class Algorithm { kOptimal, kHeuristic, kSca, kUpperBound };

const char* algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

struct TopologySpec {
  std::vector<double> positions;  // explicit; empty means random
  std::size_t k = 5;
  double d = 20.0;
  std::uint64_t seed = 1;
};

struct SweepSpec {
  std::string param;  // "T" or "V"; empty for a single point
  std::vector<double> values;
};

struct OutputSpec {
  std::string summary;
  std::string traces;  // directory, one <algorithm>.csv per algorithm
  std::string csv;
  std::string averages;  // defaults to csv with an _avg suffix
  bool timing = false;   // runtime_s is written as 0 unless set
};

struct VerifySpec {
  double dx = 0.05;
  double dt = 0.05;
  std::size_t restarts = 32;
  std::uint64_t seed = 7;
};

struct ExperimentConfig {
  SystemParams params;
  TopologySpec topology;
  std::vector<Algorithm> algorithms{Algorithm::kOptimal, Algorithm::kHeuristic,
                                    Algorithm::kSca, Algorithm::kUpperBound};
  SweepSpec sweep;
  std::size_t trials = 1;
  unsigned workers = 1;  // sweep cells solved concurrently
  PlannerConfig planner;
  ScaOptions sca;
  double sca_dt = 0.0;  // 0: d_min / V
  VerifySpec verify;
  OutputSpec output;

  /// Throws Error(kConfig) naming the offending field.
  void validate() const;
  bool has(Algorithm a) const;
};

/// Applies one `key = value` setting; throws Error(kConfig) on unknown keys
/// or malformed values.
void apply_setting(ExperimentConfig& cfg, const std::string& key,
                   const std::string& value);

ExperimentConfig parse_config(std::istream& in, const std::string& source);
ExperimentConfig load_config(const std::string& path);

/// Seed of trial i: the base seed mixed with i.
std::uint64_t trial_seed(const TopologySpec& spec, std::size_t trial);

/// Explicit positions, or K uniform draws on [0, D] (in draw order, then
/// sorted) from Rng(trial_seed(spec, trial)).
Topology make_topology(const TopologySpec& spec, std::size_t trial);

struct ResultRow {
  std::optional<double> sweep_value;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::optional<double> min_energy;  // empty when the cell failed
  double runtime_s = 0.0;
  std::optional<double> gap;  // duality gap where a certificate exists
  std::size_t hover_count = 0;
  double x_i = 0.0;
  double x_f = 0.0;
};

struct AverageRow {
  std::optional<double> sweep_value;
  std::string algorithm;
  double mean_min_energy = 0.0;
  std::size_t count = 0;
};

struct RunReport {
  std::vector<ResultRow> rows;
  std::vector<AverageRow> averages;
  std::vector<std::string> failures;  // "<cell>: <message>"
  std::string text;                   // human-readable summary
  bool passed = true;                 // verify and selftest verdicts
};

struct TrialOutcome {
  std::vector<ResultRow> rows;
  std::vector<std::string> failures;
  std::map<std::string, TraceRows> traces;  // by algorithm name
};

/// Runs every requested algorithm on one instance.
TrialOutcome run_trial(const ExperimentConfig& cfg, const SystemParams& params,
                       const Topology& topo, bool want_traces);

RunReport run_solve(const ExperimentConfig& cfg);
RunReport run_sweep(const ExperimentConfig& cfg);

struct VerifyOutcome {
  double optimal = 0.0;
  double lower = 0.0;  // multistart
  double dp_value = 0.0;
  double slack = 0.0;
  double upper = 0.0;  // dp_value + slack
  double width = 0.0;  // (upper - lower) / optimal
  std::vector<double> lambda;
  bool ordered = false;  // lower <= optimal <= upper
};

VerifyOutcome verify_instance(const SystemParams& params, const Topology& topo,
                              const PlannerConfig& planner,
                              const VerifySpec& spec,
                              const ScaOptions& sca = {});

/// Oracle sandwich on trial 0 of the configured topology. `passed` requires
/// the ordering and a width of at most 2%.
RunReport run_verify(const ExperimentConfig& cfg);

std::vector<AverageRow> average_rows(const std::vector<ResultRow>& rows);

/// Fixed-format decimal with 12 significant digits.
std::string format_number(double v);

void write_summary_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_summary_csv(std::istream& in);
void write_averages_csv(std::ostream& out, const std::vector<AverageRow>& rows);

}  // namespace shf
