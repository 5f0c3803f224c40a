#include "coresched/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace coresched {

namespace {

// One schedulable unit: a flow, or a whole coflow's port-load profile.
struct Item {
  std::vector<std::pair<int, long long>> in_loads;   // (port, units)
  std::vector<std::pair<int, long long>> out_loads;  // (port, units)
};

long long checked_pow(long long base, size_t exp, long long cap) {
  long long v = 1;
  for (size_t i = 0; i < exp; ++i) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

struct Search {
  const std::vector<Item>& items;
  const NetworkSpec& net;
  std::vector<std::vector<long long>> in_load, out_load;  // [core][port]
  std::vector<int> choice, best_choice;
  Rat best;
  bool have_best = false;
  long long explored = 0;

  Search(const std::vector<Item>& items_, const NetworkSpec& net_)
      : items(items_), net(net_),
        in_load(static_cast<size_t>(net_.cores),
                std::vector<long long>(static_cast<size_t>(net_.ports) + 1, 0)),
        out_load(in_load), choice(items_.size(), -1), best_choice(items_.size(), -1) {}

  Rat evaluate() const {
    Rat worst;
    for (int h = 0; h < net.cores; ++h) {
      const size_t hh = static_cast<size_t>(h);
      long long mx = 0;
      for (long long v : in_load[hh]) mx = std::max(mx, v);
      for (long long v : out_load[hh]) mx = std::max(mx, v);
      worst = rat_max(worst, Rat(mx) / net.speeds[hh]);
    }
    return worst;
  }

  void apply(const Item& item, size_t h, long long sign) {
    for (const auto& [port, units] : item.in_loads)
      in_load[h][static_cast<size_t>(port)] += sign * units;
    for (const auto& [port, units] : item.out_loads)
      out_load[h][static_cast<size_t>(port)] += sign * units;
  }

  void run(size_t depth, bool pin_first) {
    if (depth == items.size()) {
      ++explored;
      const Rat value = evaluate();
      if (!have_best || value < best) {
        best = value;
        best_choice = choice;
        have_best = true;
      }
      return;
    }
    const int limit = (depth == 0 && pin_first) ? 1 : net.cores;
    for (int h = 0; h < limit; ++h) {
      choice[depth] = h;
      apply(items[depth], static_cast<size_t>(h), +1);
      run(depth + 1, pin_first);
      apply(items[depth], static_cast<size_t>(h), -1);
    }
    choice[depth] = -1;
  }
};

Assignment witness_from_cores(const Instance& instance, Granularity granularity,
                              const std::vector<int>& item_cores) {
  Assignment a;
  a.granularity = granularity;
  a.flow_core.assign(instance.flow_count(), -1);
  size_t flat = 0;
  if (granularity == Granularity::FlowLevel) {
    for (size_t i = 0; i < a.flow_core.size(); ++i) a.flow_core[i] = item_cores[i];
  } else {
    a.coflow_core = item_cores;
    for (size_t ci = 0; ci < instance.coflows.size(); ++ci)
      for (size_t k = 0; k < instance.coflows[ci].flows.size(); ++k)
        a.flow_core[flat++] = item_cores[ci];
  }
  auto [in, out] = recompute_loads(a, instance);
  a.load_in = std::move(in);
  a.load_out = std::move(out);
  return a;
}

OracleResult search_items(const Instance& instance, const std::vector<Item>& items,
                          const OracleLimits& limits, Granularity granularity, const char* what) {
  const long long states = checked_pow(instance.network.cores, items.size(), limits.max_states);
  if (states > limits.max_states)
    throw std::runtime_error(std::string("oracle: ") + what + " state space exceeds limit of " +
                             std::to_string(limits.max_states) + " states");

  Search search(items, instance.network);
  const bool pin_first = limits.symmetry_pruning && instance.network.uniform_speeds() &&
                         instance.network.cores > 1 && !items.empty();
  search.run(0, pin_first);
  // run() evaluates at least the empty assignment, so a best always exists

  OracleResult result;
  result.optimum = search.best;
  result.witness = witness_from_cores(instance, granularity, search.best_choice);
  result.explored = search.explored;
  return result;
}

}  // namespace

OracleResult brute_force_flow(const Instance& instance, const OracleLimits& limits) {
  std::vector<Item> items;
  for (const Coflow& c : instance.coflows)
    for (const Flow& f : c.flows) items.push_back({{{f.input, f.size}}, {{f.output, f.size}}});
  return search_items(instance, items, limits, Granularity::FlowLevel, "flow-level");
}

OracleResult brute_force_coflow(const Instance& instance, const OracleLimits& limits) {
  std::vector<Item> items;
  for (const Coflow& c : instance.coflows) {
    Item item;
    for (const auto& [port, load] : c.input_loads()) item.in_loads.push_back({port, load});
    for (const auto& [port, load] : c.output_loads()) item.out_loads.push_back({port, load});
    items.push_back(std::move(item));
  }
  return search_items(instance, items, limits, Granularity::CoflowLevel, "coflow-level");
}

}  // namespace coresched
