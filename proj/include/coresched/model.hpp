#pragma once

#include <map>
#include <utility>
#include <vector>

#include "coresched/rational.hpp"

namespace coresched {

// One flow: `size` integral data units (MB at 1 MB per time unit) to move
// from input port `input` to output port `output`, owned by coflow `coflow`.
// Ports are 1-based; (input, output, coflow) is unique within an Instance and
// size >= 1 (zero demands are never materialized).
struct Flow {
  int input = 0;
  int output = 0;
  int coflow = 0;
  long long size = 0;
};

// A coflow is complete when its last flow finishes.
struct Coflow {
  int id = 0;
  std::vector<Flow> flows;

  // Per-port totals of this coflow: key i -> sum of sizes entering port i
  // (resp. leaving port j). Only touched ports appear.
  std::map<int, long long> input_loads() const;
  std::map<int, long long> output_loads() const;
  long long max_port_load() const;
};

// m parallel N x N non-blocking switch cores. `speeds` has one factor per
// core; an identical network is exactly "all speeds equal 1".
struct NetworkSpec {
  int cores = 1;
  int ports = 1;
  std::vector<Rat> speeds;

  static NetworkSpec identical(int cores, int ports);
  static NetworkSpec heterogeneous(int ports, std::vector<Rat> speeds);

  bool is_identical() const;
  bool uniform_speeds() const;  // all equal, not necessarily 1
  Rat total_speed() const;
  Rat max_speed() const;
};

struct Instance {
  NetworkSpec network;
  std::vector<Coflow> coflows;

  size_t flow_count() const;
  // All flows in instance order: coflows in order, flows within each coflow
  // in order. This is the processing order the list schedulers see.
  std::vector<Flow> flattened_flows() const;
  // Throws std::invalid_argument on out-of-range ports, duplicate coflow ids,
  // duplicate (input, output, coflow) triples or non-positive sizes.
  void validate() const;
};

enum class Granularity { FlowLevel, CoflowLevel };

// Flow -> core (or coflow -> core) mapping plus the per-port per-core load
// ledgers the schedulers maintain incrementally. Cores are 0-based here;
// all I/O formats print them 1-based.
struct Assignment {
  Granularity granularity = Granularity::FlowLevel;
  std::vector<int> flow_core;    // [flat flow index] -> core, -1 if unassigned
  std::vector<int> coflow_core;  // [coflow index] -> core; coflow-level only
  std::vector<std::vector<Rat>> load_in;   // [core][port 1..N]
  std::vector<std::vector<Rat>> load_out;  // [core][port 1..N]

  bool complete() const;
};

struct MakespanResult {
  std::vector<Rat> per_core;       // completion time per core
  Rat overall;                     // max over cores == max over coflows
  std::map<int, Rat> per_coflow;   // coflow id -> C_k
};

struct PortLoads {
  std::vector<long long> in;   // index by port 1..N
  std::vector<long long> out;
};

// Total demand per input/output port across all coflows. Exact integers;
// an empty instance yields all zeros.
PortLoads port_loads(const Instance& instance);

// Rebuilds both ledgers from the core mapping alone. Exact equality with the
// incrementally maintained ledgers is an invariant of every scheduler.
std::pair<std::vector<std::vector<Rat>>, std::vector<std::vector<Rat>>> recompute_loads(
    const Assignment& assignment, const Instance& instance);

}  // namespace coresched
