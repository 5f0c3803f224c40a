#include "doctest.h"

#include <map>
#include <sstream>

#include "coresched/realizer.hpp"
#include "coresched/schedulers.hpp"
#include "test_util.hpp"

using namespace coresched;
using testutil::make_instance;

namespace {

// Independent recomputation of served volume and finish times by walking the
// slice list; keeps the checks honest against realize's own bookkeeping.
struct SliceScan {
  std::map<int, Rat> served;  // flow index -> duration-weighted service
  std::map<int, Rat> finish;  // flow index -> end of last slice containing it
};

SliceScan scan_slices(const std::vector<CoreScheduleSlice>& slices, const Rat& speed) {
  SliceScan scan;
  Rat clock;
  for (const CoreScheduleSlice& slice : slices) {
    clock += slice.duration;
    std::map<int, bool> seen_in, seen_out;
    for (const SliceEntry& e : slice.matching) {
      CHECK(seen_in.emplace(e.input, true).second);    // distinct inputs
      CHECK(seen_out.emplace(e.output, true).second);  // distinct outputs
      scan.served[e.flow] += slice.duration * speed;
      scan.finish[e.flow] = clock;
    }
  }
  return scan;
}

}  // namespace

TEST_CASE("realize_core: a single flow is one slice") {
  const CoreRealization core = realize_core({{1, 1, 1, 7}}, Rat(1));
  REQUIRE(core.slices.size() == 1);
  CHECK(core.slices[0].duration == Rat(7));
  REQUIRE(core.slices[0].matching.size() == 1);
  CHECK(core.slices[0].matching[0].input == 1);
  CHECK(core.slices[0].matching[0].output == 1);
  CHECK(core.total == Rat(7));
  CHECK(core.finish[0] == Rat(7));
}

TEST_CASE("realize_core: disjoint ports run in parallel") {
  const CoreRealization core = realize_core({{1, 1, 1, 2}, {2, 2, 2, 2}}, Rat(1));
  REQUIRE(core.slices.size() == 1);
  CHECK(core.slices[0].duration == Rat(2));
  CHECK(core.slices[0].matching.size() == 2);
  CHECK(core.total == Rat(2));
}

TEST_CASE("realize_core: the 2x2 all-ones matrix needs two unit slices") {
  const CoreRealization core =
      realize_core({{1, 1, 1, 1}, {1, 2, 2, 1}, {2, 1, 3, 1}, {2, 2, 4, 1}}, Rat(1));
  CHECK(core.total == Rat(2));
  CHECK(core.slices.size() == 2);
  CHECK(core.rounds == 2);
  for (const CoreScheduleSlice& slice : core.slices) CHECK(slice.duration == Rat(1));
  const SliceScan scan = scan_slices(core.slices, Rat(1));
  for (int f = 0; f < 4; ++f) CHECK(scan.served.at(f) == Rat(1));
}

TEST_CASE("realize_core: speed scales durations and finishes") {
  const CoreRealization core = realize_core({{1, 1, 1, 7}}, Rat(2));
  CHECK(core.total == Rat(7, 2));
  CHECK(core.finish[0] == Rat(7, 2));
  CHECK(core.slices[0].duration == Rat(7, 2));
}

TEST_CASE("realize_core rejects bad input") {
  CHECK_THROWS_AS(realize_core({{1, 1, 1, 0}}, Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(realize_core({{1, 1, 1, 3}}, Rat(0)), std::invalid_argument);
}

TEST_CASE("realize_core: optimality, conservation and the slice bound hold randomly") {
  Rng rng(707);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(10));
    const size_t cells = 1 + rng.below(static_cast<uint64_t>(n) * static_cast<uint64_t>(n));
    std::map<std::pair<int, int>, long long> demand;
    for (size_t c = 0; c < cells; ++c) {
      const int i = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(n)));
      const int j = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(n)));
      demand[{i, j}] += 1 + static_cast<long long>(rng.below(50));
    }
    std::vector<Flow> flows;
    std::vector<long long> in_load(static_cast<size_t>(n) + 1, 0),
        out_load(static_cast<size_t>(n) + 1, 0);
    int id = 1;
    for (const auto& [cell, size] : demand) {
      flows.push_back({cell.first, cell.second, id++, size});
      in_load[static_cast<size_t>(cell.first)] += size;
      out_load[static_cast<size_t>(cell.second)] += size;
    }
    long long t_max = 0;
    for (long long v : in_load) t_max = std::max(t_max, v);
    for (long long v : out_load) t_max = std::max(t_max, v);

    const CoreRealization core = realize_core(flows, Rat(1));
    CHECK(core.total == Rat(t_max));  // BvN optimality: exactly the max port load
    CHECK(core.rounds <= static_cast<size_t>(n) * static_cast<size_t>(n) -
                             2 * static_cast<size_t>(n) + 2);
    CHECK(core.rounds <= core.slices.size());
    Rat sum;
    for (const auto& slice : core.slices) sum += slice.duration;
    CHECK(sum == core.total);
    const SliceScan scan = scan_slices(core.slices, Rat(1));
    for (size_t f = 0; f < flows.size(); ++f) {
      CHECK(scan.served.at(static_cast<int>(f)) == Rat(flows[f].size));
      CHECK(scan.finish.at(static_cast<int>(f)) == core.finish[f]);
    }
  }
}

TEST_CASE("realize: the symmetric split finishes both coflows at 5") {
  const Instance inst = make_instance(2, 2, {{1, 1, 1, 5}, {1, 1, 2, 5}});
  const RealizedSchedule sched = realize(fls(inst), inst);
  CHECK(sched.overall == Rat(5));
  CHECK(sched.per_coflow.at(1) == Rat(5));
  CHECK(sched.per_coflow.at(2) == Rat(5));
}

TEST_CASE("realize agrees with the ledger makespan on the CLS hand trace") {
  const Instance inst = make_instance(
      2, 2, {{1, 1, 1, 6}, {1, 2, 2, 2}, {2, 1, 2, 2}, {1, 1, 3, 3}});
  const Assignment a = cls(inst);
  const RealizedSchedule sched = realize(a, inst);
  CHECK(sched.overall == Rat(6));
  CHECK(sched.overall == predicted_makespan(a, inst).overall);
}

TEST_CASE("realize matches predicted overall across 1000 random FLPT runs") {
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const Instance inst = testutil::random_small_instance(rng, 3, 3, 10, 5, 12);
    const Assignment a = flpt(inst);
    const RealizedSchedule sched = realize(a, inst);
    CHECK(sched.overall == predicted_makespan(a, inst).overall);
  }
}

TEST_CASE("per-coflow completions: finish map equals a fresh slice scan") {
  Rng rng(808);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = testutil::random_small_instance(rng, 3, 4, 12, 5, 15);
    const Assignment a = flpt_h(inst);
    const RealizedSchedule sched = realize(a, inst);
    std::map<int, Rat> by_scan;
    for (size_t h = 0; h < sched.per_core.size(); ++h) {
      const SliceScan scan = scan_slices(sched.per_core[h], inst.network.speeds[h]);
      const auto flat = inst.flattened_flows();
      for (const auto& [flow, finish] : scan.finish) {
        const int coflow = flat[static_cast<size_t>(flow)].coflow;
        auto [it, inserted] = by_scan.emplace(coflow, finish);
        if (!inserted) it->second = rat_max(it->second, finish);
      }
    }
    for (const auto& [coflow, finish] : by_scan) CHECK(sched.per_coflow.at(coflow) == finish);
  }
}

TEST_CASE("schedule dump format is pinned") {
  {
    const Instance inst = make_instance(1, 1, {{1, 1, 1, 7}});
    std::ostringstream os;
    dump_schedule(realize(fls(inst), inst), inst, os);
    CHECK(os.str() == "1,0,7,1->1@1\n");
  }
  {
    // speed 2: rational start/duration in p/q form
    const Instance inst = make_instance(1, 1, {{1, 1, 1, 7}}, {Rat(2)});
    std::ostringstream os;
    dump_schedule(realize(flpt_h(inst), inst), inst, os);
    CHECK(os.str() == "1,0,7/2,1->1@1\n");
  }
}

TEST_CASE("simulate_discrete: unit examples") {
  {
    const Instance inst = make_instance(1, 1, {{1, 1, 1, 3}});
    const DiscreteSimResult sim = simulate_discrete(fls(inst), inst);
    CHECK(sim.core_completion[0] == 3);
  }
  {
    const Instance inst =
        make_instance(1, 2, {{1, 1, 1, 1}, {1, 2, 2, 1}, {2, 1, 3, 1}, {2, 2, 4, 1}});
    const DiscreteSimResult sim = simulate_discrete(fls(inst), inst);
    CHECK(sim.core_completion[0] == 2);
  }
  {
    // two cores, everything lands on core 0: the empty core completes at 0
    const Instance inst = make_instance(2, 2, {{1, 1, 1, 4}, {2, 2, 1, 4}});
    const DiscreteSimResult sim = simulate_discrete(fls(inst), inst);
    CHECK(sim.core_completion[0] == 4);
    CHECK(sim.core_completion[1] == 0);
  }
}

TEST_CASE("simulate_discrete never beats the realized schedule") {
  Rng rng(909);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = testutil::random_small_instance(rng, 3, 4, 14, 5, 9);
    const Assignment a = flpt(inst);
    const RealizedSchedule sched = realize(a, inst);
    const DiscreteSimResult sim = simulate_discrete(a, inst);
    for (size_t h = 0; h < sched.core_total.size(); ++h)
      CHECK(Rat(sim.core_completion[h]) >= sched.core_total[h]);
  }
}

TEST_CASE("simulate_discrete rejects fractional speeds") {
  const Instance inst = make_instance(2, 1, {{1, 1, 1, 4}}, {Rat(1), Rat(3, 2)});
  CHECK_THROWS_AS(simulate_discrete(flpt_h(inst), inst), std::invalid_argument);
}

TEST_CASE("simulate_discrete serves integral speeds faster") {
  const Instance inst = make_instance(1, 1, {{1, 1, 1, 7}}, {Rat(2)});
  const DiscreteSimResult sim = simulate_discrete(flpt_h(inst), inst);
  CHECK(sim.core_completion[0] == 4);  // ceil(7 / 2)
}
