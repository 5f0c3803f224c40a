#pragma once

#include "coresched/model.hpp"

namespace coresched {

// Lower bounds on the optimal makespan.
//
// port_lb:  max port load divided by the aggregate core speed. This is the
//           denominator used for reported ratios, so figures from different
//           runs stay comparable.
// flow_lb:  the best completion any single indivisible flow can achieve
//           (largest size over the fastest core).
// combined: max of the two; the denominator for the worst-case bound
//           checks, which need flow_lb as well.
struct LowerBounds {
  Rat port_lb;
  Rat flow_lb;
  Rat combined;
};

// Identical network (all speeds 1): port_lb = max port load / m.
LowerBounds lb_identical(const Instance& instance);

// Any speeds: port_lb = max port load / sum(s_l); flow_lb = max size / max(s_l).
// With unit speeds this equals lb_identical exactly.
LowerBounds lb_heterogeneous(const Instance& instance);

}  // namespace coresched
