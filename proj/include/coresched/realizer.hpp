#pragma once

#include <iosfwd>
#include <vector>

#include "coresched/model.hpp"

namespace coresched {

// One time slice of a core: a partial bipartite matching (each port used at
// most once) served for `duration` time units. `flow` indexes into the flow
// list the slice set was built from (local list for realize_core, flat
// instance index for realize).
struct SliceEntry {
  int input = 0;
  int output = 0;
  int flow = 0;
};

struct CoreScheduleSlice {
  std::vector<SliceEntry> matching;
  Rat duration;
};

struct CoreRealization {
  std::vector<CoreScheduleSlice> slices;
  std::vector<Rat> finish;  // parallel to the input flow list
  Rat total;                // == max port load / speed, exactly
  size_t rounds = 0;        // matchings in the padded-matrix decomposition
};

// Decomposes the aggregate demand of `flows` into matchings. The demand
// matrix is padded with slack so every row and column sums to T = max port
// load; a perfect matching on the padded support always exists while demand
// remains (Hall), and each round subtracts the bottleneck cell, so `rounds`
// stays within the Birkhoff bound of n^2 - 2n + 2. Emitted slices refine the
// rounds at flow and slack boundaries so that per-flow service is exact:
// a flow's slice durations sum to size/speed. Slack never appears in emitted
// matchings or finish times. Throws on non-positive demands or speed.
CoreRealization realize_core(const std::vector<Flow>& flows, const Rat& speed);

struct RealizedSchedule {
  std::vector<std::vector<CoreScheduleSlice>> per_core;  // entries hold flat flow indices
  std::vector<Rat> finish;                               // [flat flow index]
  std::vector<Rat> core_total;                           // [core]
  Rat overall;
  std::map<int, Rat> per_coflow;  // coflow id -> C_k
};

// Proof-by-construction that the assignment's ledger makespan is achievable:
// realize_core per core, finish times stitched back onto instance flows.
// overall equals predicted_makespan(assignment).overall exactly.
RealizedSchedule realize(const Assignment& assignment, const Instance& instance);

struct DiscreteSimResult {
  std::vector<long long> core_completion;  // [core], in whole time steps
  std::vector<long long> finish_step;      // [flat flow index]
};

// Greedy per-time-unit simulator: each step builds a maximal matching over
// unfinished flows in largest-remaining-first order and serves one unit (s_h
// units for integral speeds). Statistics backend for core-completion CDFs;
// maximal != maximum, so it may finish later than realize and is reported
// separately. Throws for non-integral speeds.
DiscreteSimResult simulate_discrete(const Assignment& assignment, const Instance& instance);

// One line per slice: core,start,duration,i->j@k[,...], rationals as p/q.
void dump_schedule(const RealizedSchedule& schedule, const Instance& instance, std::ostream& os);

}  // namespace coresched
