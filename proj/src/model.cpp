#include "coresched/model.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

namespace coresched {

std::map<int, long long> Coflow::input_loads() const {
  std::map<int, long long> loads;
  for (const Flow& f : flows) loads[f.input] += f.size;
  return loads;
}

std::map<int, long long> Coflow::output_loads() const {
  std::map<int, long long> loads;
  for (const Flow& f : flows) loads[f.output] += f.size;
  return loads;
}

long long Coflow::max_port_load() const {
  long long best = 0;
  for (const auto& [port, load] : input_loads()) best = std::max(best, load);
  for (const auto& [port, load] : output_loads()) best = std::max(best, load);
  return best;
}

NetworkSpec NetworkSpec::identical(int cores, int ports) {
  NetworkSpec n;
  n.cores = cores;
  n.ports = ports;
  n.speeds.assign(static_cast<size_t>(cores), Rat(1));
  return n;
}

NetworkSpec NetworkSpec::heterogeneous(int ports, std::vector<Rat> speeds) {
  NetworkSpec n;
  n.cores = static_cast<int>(speeds.size());
  n.ports = ports;
  n.speeds = std::move(speeds);
  return n;
}

bool NetworkSpec::is_identical() const {
  for (const Rat& s : speeds)
    if (s != Rat(1)) return false;
  return true;
}

bool NetworkSpec::uniform_speeds() const {
  for (const Rat& s : speeds)
    if (s != speeds.front()) return false;
  return true;
}

Rat NetworkSpec::total_speed() const {
  Rat sum;
  for (const Rat& s : speeds) sum += s;
  return sum;
}

Rat NetworkSpec::max_speed() const {
  Rat best;
  for (const Rat& s : speeds) best = rat_max(best, s);
  return best;
}

size_t Instance::flow_count() const {
  size_t n = 0;
  for (const Coflow& c : coflows) n += c.flows.size();
  return n;
}

std::vector<Flow> Instance::flattened_flows() const {
  std::vector<Flow> flat;
  flat.reserve(flow_count());
  for (const Coflow& c : coflows)
    for (const Flow& f : c.flows) flat.push_back(f);
  return flat;
}

void Instance::validate() const {
  if (network.cores < 1) throw std::invalid_argument("instance: need at least one core");
  if (network.ports < 1) throw std::invalid_argument("instance: need at least one port");
  if (static_cast<int>(network.speeds.size()) != network.cores)
    throw std::invalid_argument("instance: speeds length must equal core count");
  for (const Rat& s : network.speeds)
    if (!(Rat(0) < s)) throw std::invalid_argument("instance: speeds must be positive");
  std::set<int> ids;
  std::set<std::tuple<int, int, int>> triples;
  for (const Coflow& c : coflows) {
    if (!ids.insert(c.id).second)
      throw std::invalid_argument("instance: duplicate coflow id " + std::to_string(c.id));
    for (const Flow& f : c.flows) {
      if (f.coflow != c.id) throw std::invalid_argument("instance: flow coflow id mismatch");
      if (f.input < 1 || f.input > network.ports || f.output < 1 || f.output > network.ports)
        throw std::invalid_argument("instance: port index out of range");
      if (f.size < 1) throw std::invalid_argument("instance: flow sizes must be >= 1");
      if (!triples.insert({f.input, f.output, f.coflow}).second)
        throw std::invalid_argument("instance: duplicate flow triple");
    }
  }
}

bool Assignment::complete() const {
  for (int h : flow_core)
    if (h < 0) return false;
  return true;
}

PortLoads port_loads(const Instance& instance) {
  PortLoads loads;
  loads.in.assign(static_cast<size_t>(instance.network.ports) + 1, 0);
  loads.out.assign(static_cast<size_t>(instance.network.ports) + 1, 0);
  for (const Coflow& c : instance.coflows) {
    for (const Flow& f : c.flows) {
      loads.in[static_cast<size_t>(f.input)] += f.size;
      loads.out[static_cast<size_t>(f.output)] += f.size;
    }
  }
  return loads;
}

std::pair<std::vector<std::vector<Rat>>, std::vector<std::vector<Rat>>> recompute_loads(
    const Assignment& assignment, const Instance& instance) {
  const int m = instance.network.cores;
  const size_t ports = static_cast<size_t>(instance.network.ports) + 1;
  std::vector<std::vector<Rat>> in(static_cast<size_t>(m), std::vector<Rat>(ports));
  std::vector<std::vector<Rat>> out(static_cast<size_t>(m), std::vector<Rat>(ports));
  const auto flat = instance.flattened_flows();
  for (size_t idx = 0; idx < flat.size(); ++idx) {
    const int h = assignment.flow_core.at(idx);
    if (h < 0) continue;
    const Rat units = Rat(flat[idx].size) / instance.network.speeds[static_cast<size_t>(h)];
    in[static_cast<size_t>(h)][static_cast<size_t>(flat[idx].input)] += units;
    out[static_cast<size_t>(h)][static_cast<size_t>(flat[idx].output)] += units;
  }
  return {in, out};
}

}  // namespace coresched
