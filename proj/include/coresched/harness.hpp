#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coresched/model.hpp"
#include "coresched/schedulers.hpp"

namespace coresched {

// One experiment sweep: the cartesian product of the m axis, the K axis (or
// trace thresholds) and the optional heterogeneity axis, each point repeated
// for `trials` generated instances.
struct Scenario {
  std::string name = "scenario";
  std::vector<int> m_list;
  std::vector<int> k_list;
  int ports = 10;
  std::string mixture = "default";
  std::string trace_path;               // non-empty switches to trace mode
  std::vector<long long> thresholds;    // trace mode axis; defaults to {0}
  std::vector<int> h_list;              // empty means identical network
  int trials = 100;
  uint64_t seed = 0;
  std::vector<SchedulerKind> schedulers;
  bool collect_cdf = false;  // discrete simulation is costly; opt in

  void validate() const;  // throws std::invalid_argument
};

// Key-value text, one "key = value" per line, '#' comments. Lists are
// space-separated. Keys: name, N, m, K, trials, seed, schedulers, mixture,
// h, trace, thresholds.
Scenario parse_scenario(std::istream& is);
Scenario parse_scenario_file(const std::string& path);

struct ReportRow {
  std::string point;
  SchedulerKind scheduler;
  int trial;
  Rat makespan;
  Rat port_lb;
  Rat combined_lb;
  double ratio_port;
  double ratio_combined;
};

struct RowError {
  std::string point;
  SchedulerKind scheduler;
  int trial;
  std::string message;
};

struct CdfRow {
  std::string point;
  SchedulerKind scheduler;
  int trial;
  int core;  // 1-based
  long long completion;
};

struct ExperimentReport {
  std::string scenario;
  std::vector<ReportRow> rows;
  std::vector<CdfRow> cdf;
  std::vector<RowError> errors;
};

// Runs every (point, trial, scheduler) cell. Trials execute in parallel
// (jobs = 0 picks the hardware count) and merge in deterministic order; each
// trial's instance comes from derive_seed(seed, hash(point label), trial), so
// a row depends only on the seed and its own cell: re-running any (point,
// trial) in isolation reproduces it. Scheduler/network mismatches become
// RowErrors and the run continues. Worst-case guarantees (FLS/FLPT against
// (3 - 2/m) x combined lb, CLS against 2m x port lb, identical networks) are
// hard assertions: a violation throws.
ExperimentReport run_scenario(const Scenario& scenario, int jobs = 0);

struct QuartileSummary {
  double q1, q2, q3, min, max;
};

// Type-7 linear-interpolation quantiles (the spreadsheet default), so box
// plots are reproducible. Throws on empty input.
QuartileSummary quartiles(std::vector<double> samples);

struct AggregateRow {
  std::string point;
  SchedulerKind scheduler;
  size_t count;
  double mean_ratio_port;
  double mean_ratio_combined;
  QuartileSummary ratio_port_quartiles;
};

// Per (point, scheduler) in first-appearance order; recomputable from rows.
std::vector<AggregateRow> aggregate(const ExperimentReport& report);

// Columns: scenario,point,scheduler,trial,makespan,port_lb,combined_lb,
// ratio_port,ratio_combined. Makespans and bounds are exact rationals (p/q).
void emit_csv(const ExperimentReport& report, std::ostream& os);
// Columns: scenario,point,scheduler,trial,core,completion.
void emit_cdf(const ExperimentReport& report, std::ostream& os);

std::string format_ratio(double value);

}  // namespace coresched
