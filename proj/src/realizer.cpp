#include "coresched/realizer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <stdexcept>

namespace coresched {

namespace {

constexpr int kSlack = -1;

struct Segment {
  long long remaining;
  int flow;  // local flow index, or kSlack
};

struct Cell {
  int row;  // dense row index
  int col;  // dense col index
  int input;
  int output;
  long long total = 0;
  std::deque<Segment> segments;  // real flows in input order, slack last
};

// Kuhn augmenting-path matching over live cells.
struct Matcher {
  int n;
  const std::vector<Cell>& cells;
  const std::vector<std::vector<int>>& adj;  // row -> cell indices
  std::vector<int> match_row;                // row -> cell index or -1
  std::vector<int> match_col;                // col -> cell index or -1
  std::vector<int> visited;
  int stamp = 0;

  Matcher(int n_, const std::vector<Cell>& cells_, const std::vector<std::vector<int>>& adj_)
      : n(n_), cells(cells_), adj(adj_), match_row(static_cast<size_t>(n_), -1),
        match_col(static_cast<size_t>(n_), -1), visited(static_cast<size_t>(n_), -1) {}

  bool augment(int row) {
    for (int ci : adj[static_cast<size_t>(row)]) {
      const Cell& c = cells[static_cast<size_t>(ci)];
      if (c.total == 0) continue;
      const size_t col = static_cast<size_t>(c.col);
      if (visited[col] == stamp) continue;
      visited[col] = stamp;
      if (match_col[col] == -1 || augment(cells[static_cast<size_t>(match_col[col])].row)) {
        match_row[static_cast<size_t>(row)] = ci;
        match_col[col] = ci;
        return true;
      }
    }
    return false;
  }

  // Re-establish a perfect matching; only rows whose matched cell died need
  // augmenting. Guaranteed to succeed while row/col sums stay equal.
  void repair() {
    for (int r = 0; r < n; ++r) {
      const int ci = match_row[static_cast<size_t>(r)];
      if (ci >= 0 && cells[static_cast<size_t>(ci)].total > 0) continue;
      if (ci >= 0) {
        match_col[static_cast<size_t>(cells[static_cast<size_t>(ci)].col)] = -1;
        match_row[static_cast<size_t>(r)] = -1;
      }
      ++stamp;
      if (!augment(r)) throw std::logic_error("realize_core: no perfect matching (bug)");
    }
  }
};

}  // namespace

CoreRealization realize_core(const std::vector<Flow>& flows, const Rat& speed) {
  if (!(Rat(0) < speed)) throw std::invalid_argument("realize_core: speed must be positive");
  CoreRealization out;
  out.finish.assign(flows.size(), Rat(0));
  out.total = Rat(0);
  if (flows.empty()) return out;

  // Dense row/col indices for the ports actually used.
  std::map<int, int> row_of, col_of;
  for (const Flow& f : flows) {
    if (f.size < 1) throw std::invalid_argument("realize_core: demands must be >= 1");
    row_of.emplace(f.input, 0);
    col_of.emplace(f.output, 0);
  }
  int next = 0;
  for (auto& [port, idx] : row_of) idx = next++;
  const int rows_active = next;
  next = 0;
  for (auto& [port, idx] : col_of) idx = next++;
  const int cols_active = next;
  const int n = std::max(rows_active, cols_active);

  std::vector<long long> row_sum(static_cast<size_t>(n), 0);
  std::vector<long long> col_sum(static_cast<size_t>(n), 0);
  std::vector<Cell> cells;
  std::map<std::pair<int, int>, int> cell_of;
  size_t real_segments = 0;

  for (size_t fi = 0; fi < flows.size(); ++fi) {
    const Flow& f = flows[fi];
    const int r = row_of[f.input];
    const int c = col_of[f.output];
    auto [it, inserted] = cell_of.emplace(std::make_pair(r, c), static_cast<int>(cells.size()));
    if (inserted) cells.push_back({r, c, f.input, f.output, 0, {}});
    Cell& cell = cells[static_cast<size_t>(it->second)];
    cell.total += f.size;
    cell.segments.push_back({f.size, static_cast<int>(fi)});
    row_sum[static_cast<size_t>(r)] += f.size;
    col_sum[static_cast<size_t>(c)] += f.size;
    ++real_segments;
  }

  long long t_max = 0;
  for (long long v : row_sum) t_max = std::max(t_max, v);
  for (long long v : col_sum) t_max = std::max(t_max, v);

  // Pad every deficient row against a deficient column; total deficits match
  // by construction, so the two-pointer walk always pairs them off.
  size_t slack_segments = 0;
  {
    int r = 0, c = 0;
    while (r < n && c < n) {
      if (row_sum[static_cast<size_t>(r)] == t_max) {
        ++r;
        continue;
      }
      if (col_sum[static_cast<size_t>(c)] == t_max) {
        ++c;
        continue;
      }
      const long long amount =
          std::min(t_max - row_sum[static_cast<size_t>(r)], t_max - col_sum[static_cast<size_t>(c)]);
      auto [it, inserted] = cell_of.emplace(std::make_pair(r, c), static_cast<int>(cells.size()));
      if (inserted) cells.push_back({r, c, 0, 0, 0, {}});
      Cell& cell = cells[static_cast<size_t>(it->second)];
      cell.total += amount;
      cell.segments.push_back({amount, kSlack});
      ++slack_segments;
      row_sum[static_cast<size_t>(r)] += amount;
      col_sum[static_cast<size_t>(c)] += amount;
    }
  }

  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (size_t ci = 0; ci < cells.size(); ++ci)
    adj[static_cast<size_t>(cells[ci].row)].push_back(static_cast<int>(ci));

  Matcher matcher(n, cells, adj);
  long long served = 0;  // units completed on this core so far
  while (served < t_max) {
    matcher.repair();
    // A round serves one matching for the bottleneck cell's whole remainder;
    // the loop below emits it in sub-slices capped at segment boundaries so
    // per-flow service stays exact.
    long long delta = t_max - served;
    bool cell_died = false;
    for (int r = 0; r < n; ++r) {
      const Cell& cell = cells[static_cast<size_t>(matcher.match_row[static_cast<size_t>(r)])];
      delta = std::min(delta, cell.segments.front().remaining);
    }

    CoreScheduleSlice slice;
    slice.duration = Rat(delta) / speed;
    for (int r = 0; r < n; ++r) {
      Cell& cell = cells[static_cast<size_t>(matcher.match_row[static_cast<size_t>(r)])];
      Segment& seg = cell.segments.front();
      if (seg.flow != kSlack) slice.matching.push_back({cell.input, cell.output, seg.flow});
      seg.remaining -= delta;
      cell.total -= delta;
      if (seg.remaining == 0) {
        if (seg.flow != kSlack)
          out.finish[static_cast<size_t>(seg.flow)] = Rat(served + delta) / speed;
        cell.segments.pop_front();
        if (cell.segments.empty()) cell_died = true;
      }
    }
    served += delta;
    out.slices.push_back(std::move(slice));
    if (cell_died) ++out.rounds;  // the matching changes only when a cell empties
  }

  for (const Cell& cell : cells)
    if (!cell.segments.empty() || cell.total != 0)
      throw std::logic_error("realize_core: leftover demand (bug)");

  // Birkhoff bound: every round empties at least one support cell, so the
  // decomposition has at most n^2 - 2n + 2 matchings. The emitted slice list
  // additionally splits at the segment ends inside a round.
  const size_t nn = static_cast<size_t>(n);
  const size_t total_segments = real_segments + slack_segments;
  if (out.rounds > nn * nn - 2 * nn + 2)
    throw std::logic_error("realize_core: Birkhoff round bound exceeded (bug)");
  if (out.slices.size() > (nn * nn - 2 * nn + 2) + (total_segments - cells.size()))
    throw std::logic_error("realize_core: slice bound exceeded (bug)");

  out.total = Rat(t_max) / speed;
  return out;
}

RealizedSchedule realize(const Assignment& assignment, const Instance& instance) {
  if (assignment.flow_core.size() != instance.flow_count() || !assignment.complete())
    throw std::invalid_argument("realize: incomplete assignment");
  const int m = instance.network.cores;
  const auto flat = instance.flattened_flows();

  RealizedSchedule sched;
  sched.per_core.resize(static_cast<size_t>(m));
  sched.core_total.assign(static_cast<size_t>(m), Rat(0));
  sched.finish.assign(flat.size(), Rat(0));

  std::vector<std::vector<Flow>> core_flows(static_cast<size_t>(m));
  std::vector<std::vector<size_t>> core_flat(static_cast<size_t>(m));
  for (size_t idx = 0; idx < flat.size(); ++idx) {
    const size_t h = static_cast<size_t>(assignment.flow_core[idx]);
    core_flows[h].push_back(flat[idx]);
    core_flat[h].push_back(idx);
  }

  for (int h = 0; h < m; ++h) {
    const size_t hh = static_cast<size_t>(h);
    CoreRealization core = realize_core(core_flows[hh], instance.network.speeds[hh]);
    for (auto& slice : core.slices)
      for (auto& entry : slice.matching)
        entry.flow = static_cast<int>(core_flat[hh][static_cast<size_t>(entry.flow)]);
    sched.per_core[hh] = std::move(core.slices);
    sched.core_total[hh] = core.total;
    sched.overall = rat_max(sched.overall, core.total);
    for (size_t k = 0; k < core_flat[hh].size(); ++k)
      sched.finish[core_flat[hh][k]] = core.finish[k];
  }

  size_t idx = 0;
  for (const Coflow& c : instance.coflows) {
    Rat ck;
    for (size_t k = 0; k < c.flows.size(); ++k, ++idx) ck = rat_max(ck, sched.finish[idx]);
    sched.per_coflow[c.id] = ck;
  }
  return sched;
}

DiscreteSimResult simulate_discrete(const Assignment& assignment, const Instance& instance) {
  if (assignment.flow_core.size() != instance.flow_count() || !assignment.complete())
    throw std::invalid_argument("simulate_discrete: incomplete assignment");
  for (const Rat& s : instance.network.speeds)
    if (!s.is_integer())
      throw std::invalid_argument("simulate_discrete: non-integral speeds unsupported");

  const int m = instance.network.cores;
  const auto flat = instance.flattened_flows();
  DiscreteSimResult result;
  result.core_completion.assign(static_cast<size_t>(m), 0);
  result.finish_step.assign(flat.size(), 0);

  struct SimFlow {
    size_t flat_index;
    int input;
    int output;
    long long remaining;
  };

  for (int h = 0; h < m; ++h) {
    const size_t hh = static_cast<size_t>(h);
    const long long speed = instance.network.speeds[hh].num();
    std::vector<SimFlow> active;
    for (size_t idx = 0; idx < flat.size(); ++idx)
      if (assignment.flow_core[idx] == h)
        active.push_back({idx, flat[idx].input, flat[idx].output, flat[idx].size});
    // Largest remaining first; after each step served flows all shrink by the
    // same amount, so a single merge keeps the ordering without re-sorting.
    std::stable_sort(active.begin(), active.end(),
                     [](const SimFlow& a, const SimFlow& b) { return a.remaining > b.remaining; });

    long long step = 0;
    std::vector<char> in_busy(static_cast<size_t>(instance.network.ports) + 1);
    std::vector<char> out_busy(static_cast<size_t>(instance.network.ports) + 1);
    std::vector<SimFlow> served, skipped;
    while (!active.empty()) {
      ++step;
      std::fill(in_busy.begin(), in_busy.end(), 0);
      std::fill(out_busy.begin(), out_busy.end(), 0);
      served.clear();
      skipped.clear();
      for (SimFlow& f : active) {
        if (!in_busy[static_cast<size_t>(f.input)] && !out_busy[static_cast<size_t>(f.output)]) {
          in_busy[static_cast<size_t>(f.input)] = 1;
          out_busy[static_cast<size_t>(f.output)] = 1;
          f.remaining -= std::min(speed, f.remaining);
          if (f.remaining == 0) {
            result.finish_step[f.flat_index] = step;
            result.core_completion[hh] = step;
          } else {
            served.push_back(f);
          }
        } else {
          skipped.push_back(f);
        }
      }
      // merge two sorted runs
      active.clear();
      std::merge(served.begin(), served.end(), skipped.begin(), skipped.end(),
                 std::back_inserter(active),
                 [](const SimFlow& a, const SimFlow& b) { return a.remaining > b.remaining; });
    }
  }
  return result;
}

void dump_schedule(const RealizedSchedule& schedule, const Instance& instance, std::ostream& os) {
  const auto flat = instance.flattened_flows();
  for (size_t h = 0; h < schedule.per_core.size(); ++h) {
    Rat start;
    for (const CoreScheduleSlice& slice : schedule.per_core[h]) {
      os << (h + 1) << ',' << start.str() << ',' << slice.duration.str();
      for (const SliceEntry& e : slice.matching)
        os << ',' << e.input << "->" << e.output << '@' << flat[static_cast<size_t>(e.flow)].coflow;
      os << '\n';
      start += slice.duration;
    }
  }
}

}  // namespace coresched
