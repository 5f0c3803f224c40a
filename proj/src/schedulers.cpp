#include "coresched/schedulers.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace coresched {

namespace {

struct SparsePortLoad {
  int port;
  long long load;
};

// L_{i,k} / L_{j,k} as sparse (port, load) lists, ascending by port.
std::vector<SparsePortLoad> sparse_loads(const std::map<int, long long>& loads) {
  std::vector<SparsePortLoad> out;
  out.reserve(loads.size());
  for (const auto& [port, load] : loads) out.push_back({port, load});
  return out;
}

Assignment make_flow_assignment(const Instance& instance) {
  Assignment a;
  a.granularity = Granularity::FlowLevel;
  a.flow_core.assign(instance.flow_count(), -1);
  const size_t ports = static_cast<size_t>(instance.network.ports) + 1;
  a.load_in.assign(static_cast<size_t>(instance.network.cores), std::vector<Rat>(ports));
  a.load_out.assign(static_cast<size_t>(instance.network.cores), std::vector<Rat>(ports));
  return a;
}

void require_identical(const Instance& instance, const char* name) {
  if (!instance.network.is_identical())
    throw std::invalid_argument(std::string(name) + " requires an identical network");
}

std::vector<size_t> size_descending_order(const std::vector<Flow>& flows) {
  std::vector<size_t> order(flows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return flows[a].size > flows[b].size; });
  return order;
}

Assignment flow_list_schedule(const Instance& instance, bool lpt_order, bool self_term) {
  const int m = instance.network.cores;
  const auto& speeds = instance.network.speeds;
  const auto flows = instance.flattened_flows();
  Assignment a = make_flow_assignment(instance);

  std::vector<size_t> order;
  if (lpt_order) {
    order = size_descending_order(flows);
  } else {
    order.resize(flows.size());
    std::iota(order.begin(), order.end(), 0);
  }

  for (size_t idx : order) {
    const Flow& f = flows[idx];
    const size_t in = static_cast<size_t>(f.input);
    const size_t out = static_cast<size_t>(f.output);
    int best = 0;
    Rat best_val;
    for (int h = 0; h < m; ++h) {
      const size_t hh = static_cast<size_t>(h);
      Rat val = a.load_in[hh][in] + a.load_out[hh][out];
      if (self_term) val += Rat(f.size) / speeds[hh];
      if (h == 0 || val < best_val) {
        best = h;
        best_val = val;
      }
    }
    const size_t bh = static_cast<size_t>(best);
    const Rat units = Rat(f.size) / speeds[bh];
    a.load_in[bh][in] += units;
    a.load_out[bh][out] += units;
    a.flow_core[idx] = best;
  }
  return a;
}

Assignment coflow_list_schedule(const Instance& instance, bool scale_by_speed) {
  const int m = instance.network.cores;
  const auto& speeds = instance.network.speeds;
  Assignment a = make_flow_assignment(instance);
  a.granularity = Granularity::CoflowLevel;
  a.coflow_core.assign(instance.coflows.size(), -1);

  // Running max over all ports of each core's ledger, so the argmin scan only
  // touches the ports the candidate coflow uses.
  std::vector<Rat> max_in(static_cast<size_t>(m));
  std::vector<Rat> max_out(static_cast<size_t>(m));

  size_t flat = 0;
  for (size_t ci = 0; ci < instance.coflows.size(); ++ci) {
    const Coflow& coflow = instance.coflows[ci];
    const auto lin = sparse_loads(coflow.input_loads());
    const auto lout = sparse_loads(coflow.output_loads());

    int best = 0;
    Rat best_val;
    for (int h = 0; h < m; ++h) {
      const size_t hh = static_cast<size_t>(h);
      const Rat scale = scale_by_speed ? Rat(1) / speeds[hh] : Rat(1);
      Rat in_max = max_in[hh];
      for (const auto& [port, load] : lin)
        in_max = rat_max(in_max, a.load_in[hh][static_cast<size_t>(port)] + Rat(load) * scale);
      Rat out_max = max_out[hh];
      for (const auto& [port, load] : lout)
        out_max = rat_max(out_max, a.load_out[hh][static_cast<size_t>(port)] + Rat(load) * scale);
      const Rat val = in_max + out_max;
      if (h == 0 || val < best_val) {
        best = h;
        best_val = val;
      }
    }

    const size_t bh = static_cast<size_t>(best);
    const Rat scale = scale_by_speed ? Rat(1) / speeds[bh] : Rat(1);
    for (const auto& [port, load] : lin) {
      Rat& cell = a.load_in[bh][static_cast<size_t>(port)];
      cell += Rat(load) * scale;
      max_in[bh] = rat_max(max_in[bh], cell);
    }
    for (const auto& [port, load] : lout) {
      Rat& cell = a.load_out[bh][static_cast<size_t>(port)];
      cell += Rat(load) * scale;
      max_out[bh] = rat_max(max_out[bh], cell);
    }
    a.coflow_core[ci] = best;
    for (size_t k = 0; k < coflow.flows.size(); ++k) a.flow_core[flat++] = best;
  }
  return a;
}

}  // namespace

const char* to_string(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::FLS: return "FLS";
    case SchedulerKind::FLPT: return "FLPT";
    case SchedulerKind::CLS: return "CLS";
    case SchedulerKind::FLPT_H: return "FLPT_H";
    case SchedulerKind::CLS_H: return "CLS_H";
    case SchedulerKind::WEAVER: return "WEAVER";
  }
  return "?";
}

std::optional<SchedulerKind> scheduler_from_string(const std::string& name) {
  std::string up;
  for (char c : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (up == "FLS") return SchedulerKind::FLS;
  if (up == "FLPT") return SchedulerKind::FLPT;
  if (up == "CLS") return SchedulerKind::CLS;
  if (up == "FLPT_H" || up == "FLPT-H") return SchedulerKind::FLPT_H;
  if (up == "CLS_H" || up == "CLS-H") return SchedulerKind::CLS_H;
  if (up == "WEAVER") return SchedulerKind::WEAVER;
  return std::nullopt;
}

bool requires_identical(SchedulerKind kind) {
  return kind == SchedulerKind::FLS || kind == SchedulerKind::FLPT || kind == SchedulerKind::CLS;
}

Assignment fls(const Instance& instance) {
  require_identical(instance, "FLS");
  return flow_list_schedule(instance, /*lpt_order=*/false, /*self_term=*/false);
}

Assignment flpt(const Instance& instance) {
  require_identical(instance, "FLPT");
  return flow_list_schedule(instance, /*lpt_order=*/true, /*self_term=*/false);
}

Assignment cls(const Instance& instance) {
  require_identical(instance, "CLS");
  return coflow_list_schedule(instance, /*scale_by_speed=*/false);
}

Assignment flpt_h(const Instance& instance) {
  return flow_list_schedule(instance, /*lpt_order=*/true, /*self_term=*/true);
}

Assignment cls_h(const Instance& instance) {
  return coflow_list_schedule(instance, /*scale_by_speed=*/true);
}

Assignment weaver(const Instance& instance) {
  const int m = instance.network.cores;
  const auto& speeds = instance.network.speeds;
  const auto flows = instance.flattened_flows();
  Assignment a = make_flow_assignment(instance);

  // coflow id -> index, plus the coflow-local ledgers behind Gamma_k.
  std::map<int, size_t> coflow_index;
  for (size_t ci = 0; ci < instance.coflows.size(); ++ci)
    coflow_index[instance.coflows[ci].id] = ci;
  const size_t n_coflows = instance.coflows.size();
  std::vector<std::vector<std::map<int, Rat>>> cin(n_coflows),
      cout(n_coflows);  // [coflow][core][port]
  for (size_t ci = 0; ci < n_coflows; ++ci) {
    cin[ci].resize(static_cast<size_t>(m));
    cout[ci].resize(static_cast<size_t>(m));
  }
  std::vector<Rat> gamma(n_coflows);

  for (size_t idx : size_descending_order(flows)) {
    const Flow& f = flows[idx];
    const size_t ci = coflow_index.at(f.coflow);
    const size_t in = static_cast<size_t>(f.input);
    const size_t out = static_cast<size_t>(f.output);

    int gamma_core = 0;
    Rat gamma_best;
    for (int h = 0; h < m; ++h) {
      const size_t hh = static_cast<size_t>(h);
      const Rat units = Rat(f.size) / speeds[hh];
      Rat g = gamma[ci];
      auto it = cin[ci][hh].find(f.input);
      g = rat_max(g, (it == cin[ci][hh].end() ? Rat(0) : it->second) + units);
      it = cout[ci][hh].find(f.output);
      g = rat_max(g, (it == cout[ci][hh].end() ? Rat(0) : it->second) + units);
      if (h == 0 || g < gamma_best) {
        gamma_core = h;
        gamma_best = g;
      }
    }

    int target;
    if (gamma_best > gamma[ci]) {
      // Critical: every core would push the coflow's completion out, so pick
      // the one that pushes it least.
      target = gamma_core;
    } else {
      int best = 0;
      Rat best_val;
      for (int h = 0; h < m; ++h) {
        const size_t hh = static_cast<size_t>(h);
        const Rat val = a.load_in[hh][in] + a.load_out[hh][out] + Rat(f.size) / speeds[hh];
        if (h == 0 || val < best_val) {
          best = h;
          best_val = val;
        }
      }
      target = best;
    }

    const size_t th = static_cast<size_t>(target);
    const Rat units = Rat(f.size) / speeds[th];
    a.load_in[th][in] += units;
    a.load_out[th][out] += units;
    Rat& ci_cell = cin[ci][th][f.input];
    ci_cell += units;
    Rat& co_cell = cout[ci][th][f.output];
    co_cell += units;
    gamma[ci] = rat_max(gamma[ci], rat_max(ci_cell, co_cell));
    a.flow_core[idx] = target;
  }
  return a;
}

Assignment run_scheduler(SchedulerKind kind, const Instance& instance) {
  switch (kind) {
    case SchedulerKind::FLS: return fls(instance);
    case SchedulerKind::FLPT: return flpt(instance);
    case SchedulerKind::CLS: return cls(instance);
    case SchedulerKind::FLPT_H: return flpt_h(instance);
    case SchedulerKind::CLS_H: return cls_h(instance);
    case SchedulerKind::WEAVER: return weaver(instance);
  }
  throw std::logic_error("unknown scheduler");
}

MakespanResult predicted_makespan(const Assignment& assignment, const Instance& instance) {
  if (assignment.flow_core.size() != instance.flow_count() || !assignment.complete())
    throw std::invalid_argument("predicted_makespan: incomplete assignment");
  MakespanResult r;
  const int m = instance.network.cores;
  r.per_core.assign(static_cast<size_t>(m), Rat(0));
  for (int h = 0; h < m; ++h) {
    const size_t hh = static_cast<size_t>(h);
    for (const Rat& v : assignment.load_in[hh]) r.per_core[hh] = rat_max(r.per_core[hh], v);
    for (const Rat& v : assignment.load_out[hh]) r.per_core[hh] = rat_max(r.per_core[hh], v);
    r.overall = rat_max(r.overall, r.per_core[hh]);
  }
  size_t flat = 0;
  for (const Coflow& c : instance.coflows) {
    Rat ck;
    for (size_t k = 0; k < c.flows.size(); ++k, ++flat) {
      const size_t h = static_cast<size_t>(assignment.flow_core[flat]);
      ck = rat_max(ck, assignment.load_in[h][static_cast<size_t>(c.flows[k].input)]);
      ck = rat_max(ck, assignment.load_out[h][static_cast<size_t>(c.flows[k].output)]);
    }
    r.per_coflow[c.id] = ck;
  }
  return r;
}

}  // namespace coresched
