#include "coresched/lowerbound.hpp"

#include <algorithm>
#include <stdexcept>

namespace coresched {

namespace {

long long max_port_load_all(const Instance& instance) {
  const PortLoads loads = port_loads(instance);
  long long best = 0;
  for (long long v : loads.in) best = std::max(best, v);
  for (long long v : loads.out) best = std::max(best, v);
  return best;
}

long long max_flow_size(const Instance& instance) {
  long long best = 0;
  for (const Coflow& c : instance.coflows)
    for (const Flow& f : c.flows) best = std::max(best, f.size);
  return best;
}

}  // namespace

LowerBounds lb_identical(const Instance& instance) {
  if (!instance.network.is_identical())
    throw std::invalid_argument("lb_identical requires an identical network");
  LowerBounds lb;
  lb.port_lb = Rat(max_port_load_all(instance)) / Rat(instance.network.cores);
  lb.flow_lb = Rat(max_flow_size(instance));
  lb.combined = rat_max(lb.port_lb, lb.flow_lb);
  return lb;
}

LowerBounds lb_heterogeneous(const Instance& instance) {
  LowerBounds lb;
  const long long max_flow = max_flow_size(instance);
  lb.port_lb = Rat(max_port_load_all(instance)) / instance.network.total_speed();
  lb.flow_lb = max_flow == 0 ? Rat(0) : Rat(max_flow) / instance.network.max_speed();
  lb.combined = rat_max(lb.port_lb, lb.flow_lb);
  return lb;
}

}  // namespace coresched
