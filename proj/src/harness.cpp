#include "coresched/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "coresched/lowerbound.hpp"
#include "coresched/realizer.hpp"
#include "coresched/rng.hpp"
#include "coresched/workload.hpp"

namespace coresched {

namespace {

struct Point {
  int m;
  int k;          // synthetic mode
  long long thr;  // trace mode
  int h;          // -1 for identical
  std::string label;
  uint64_t label_hash;  // seeds depend on the point content, not its position
};

uint64_t fold_label(const std::string& label) {
  uint64_t h = 0x243f6a8885a308d3ull;
  for (unsigned char c : label) h = splitmix64(h ^ c);
  return h;
}

std::vector<Point> enumerate_points(const Scenario& sc) {
  std::vector<Point> points;
  const bool trace_mode = !sc.trace_path.empty();
  const std::vector<long long> thr_axis =
      trace_mode ? (sc.thresholds.empty() ? std::vector<long long>{0} : sc.thresholds)
                 : std::vector<long long>{0};
  const std::vector<int> k_axis = trace_mode ? std::vector<int>{0} : sc.k_list;
  const std::vector<int> h_axis = sc.h_list.empty() ? std::vector<int>{-1} : sc.h_list;
  for (int m : sc.m_list) {
    for (int k : k_axis) {
      for (long long thr : thr_axis) {
        for (int h : h_axis) {
          Point p{m, k, thr, h, {}, 0};
          std::ostringstream label;
          label << "m=" << m;
          if (trace_mode)
            label << ";thr=" << thr;
          else
            label << ";K=" << k;
          if (h >= 0) label << ";h=" << h;
          p.label = label.str();
          p.label_hash = fold_label(p.label);
          points.push_back(std::move(p));
        }
      }
    }
  }
  return points;
}

struct TrialOutput {
  std::vector<ReportRow> rows;
  std::vector<CdfRow> cdf;
  std::vector<RowError> errors;
};

void check_worst_case_bounds(SchedulerKind kind, int m, const Rat& makespan, const LowerBounds& lb) {
  if (kind == SchedulerKind::FLS || kind == SchedulerKind::FLPT) {
    // T <= (3 - 2/m) * lb  <=>  m*T <= (3m - 2) * lb
    if (Rat(m) * makespan > Rat(3LL * m - 2) * lb.combined)
      throw std::logic_error(std::string(to_string(kind)) +
                             " exceeded the (3 - 2/m) list-scheduling bound");
  } else if (kind == SchedulerKind::CLS) {
    if (makespan > Rat(2LL * m) * lb.port_lb)
      throw std::logic_error("CLS exceeded the 2m bound");
  }
}

TrialOutput run_trial(const Scenario& sc, const Point& point, int trial,
                      const std::vector<Coflow>* trace_coflows, int trace_ports) {
  TrialOutput out;
  Rng rng(derive_seed(sc.seed, point.label_hash, static_cast<uint64_t>(trial)));

  Instance instance;
  if (trace_coflows) {
    instance.network = NetworkSpec::identical(point.m, trace_ports);
    instance.coflows = filter_by_flow_count(*trace_coflows, point.thr);
  } else {
    instance =
        gen_instance(point.k, sc.ports, point.m, Mixture::by_name(sc.mixture, sc.ports), rng);
  }
  if (point.h >= 0)
    instance.network =
        NetworkSpec::heterogeneous(instance.network.ports, gen_speeds(point.m, point.h, rng));

  const bool identical = instance.network.is_identical();
  const LowerBounds lb = identical ? lb_identical(instance) : lb_heterogeneous(instance);

  for (SchedulerKind kind : sc.schedulers) {
    if (requires_identical(kind) && !identical) {
      out.errors.push_back({point.label, kind, trial,
                            std::string(to_string(kind)) + " requires an identical network"});
      continue;
    }
    const Assignment assignment = run_scheduler(kind, instance);
    const MakespanResult predicted = predicted_makespan(assignment, instance);
    const RealizedSchedule realized = realize(assignment, instance);
    if (realized.overall != predicted.overall)
      throw std::logic_error("realized makespan differs from ledger makespan (bug)");
    if (lb.port_lb == Rat(0)) {
      out.errors.push_back({point.label, kind, trial, "zero lower bound (empty instance)"});
      continue;
    }
    if (identical) check_worst_case_bounds(kind, point.m, realized.overall, lb);

    ReportRow row;
    row.point = point.label;
    row.scheduler = kind;
    row.trial = trial;
    row.makespan = realized.overall;
    row.port_lb = lb.port_lb;
    row.combined_lb = lb.combined;
    row.ratio_port = (realized.overall / lb.port_lb).to_double();
    row.ratio_combined = (realized.overall / lb.combined).to_double();
    out.rows.push_back(std::move(row));

    if (sc.collect_cdf && identical) {
      const DiscreteSimResult sim = simulate_discrete(assignment, instance);
      for (int h = 0; h < instance.network.cores; ++h)
        out.cdf.push_back(
            {point.label, kind, trial, h + 1, sim.core_completion[static_cast<size_t>(h)]});
    }
  }
  return out;
}

}  // namespace

void Scenario::validate() const {
  if (trials < 1) throw std::invalid_argument("scenario: trials must be >= 1");
  if (m_list.empty()) throw std::invalid_argument("scenario: m axis is empty");
  if (trace_path.empty() && k_list.empty())
    throw std::invalid_argument("scenario: K axis is empty");
  if (schedulers.empty()) throw std::invalid_argument("scenario: no schedulers listed");
  if (ports < 1) throw std::invalid_argument("scenario: N must be >= 1");
  for (int m : m_list)
    if (m < 1) throw std::invalid_argument("scenario: m must be >= 1");
  for (int h : h_list)
    if (h < 1) throw std::invalid_argument("scenario: h must be >= 1");
}

Scenario parse_scenario(std::istream& is) {
  Scenario sc;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const size_t eq = line.find('=');
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw std::runtime_error("scenario:" + std::to_string(line_no) + ": expected 'key = value'");
    auto trim = [](std::string s) {
      const size_t a = s.find_first_not_of(" \t\r\n");
      const size_t b = s.find_last_not_of(" \t\r\n");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::istringstream vs(value);
    if (key == "name") {
      sc.name = value;
    } else if (key == "N") {
      vs >> sc.ports;
    } else if (key == "m") {
      int v;
      while (vs >> v) sc.m_list.push_back(v);
    } else if (key == "K") {
      int v;
      while (vs >> v) sc.k_list.push_back(v);
    } else if (key == "h") {
      int v;
      while (vs >> v) sc.h_list.push_back(v);
    } else if (key == "thresholds") {
      long long v;
      while (vs >> v) sc.thresholds.push_back(v);
    } else if (key == "trials") {
      vs >> sc.trials;
    } else if (key == "seed") {
      vs >> sc.seed;
    } else if (key == "mixture") {
      sc.mixture = value;
    } else if (key == "trace") {
      sc.trace_path = value;
    } else if (key == "schedulers") {
      std::string name;
      while (vs >> name) {
        auto kind = scheduler_from_string(name);
        if (!kind)
          throw std::runtime_error("scenario:" + std::to_string(line_no) +
                                   ": unknown scheduler '" + name + "'");
        sc.schedulers.push_back(*kind);
      }
    } else {
      throw std::runtime_error("scenario:" + std::to_string(line_no) + ": unknown key '" + key +
                               "'");
    }
  }
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
  return parse_scenario(in);
}

ExperimentReport run_scenario(const Scenario& scenario, int jobs) {
  scenario.validate();
  const std::vector<Point> points = enumerate_points(scenario);

  std::vector<Coflow> trace_coflows;
  int trace_ports = 0;
  const bool trace_mode = !scenario.trace_path.empty();
  if (trace_mode) trace_coflows = parse_trace_file(scenario.trace_path, &trace_ports);

  struct Task {
    const Point* point;
    int trial;
  };
  std::vector<Task> tasks;
  tasks.reserve(points.size() * static_cast<size_t>(scenario.trials));
  for (const Point& p : points)
    for (int t = 0; t < scenario.trials; ++t) tasks.push_back({&p, t});

  std::vector<TrialOutput> outputs(tasks.size());
  std::atomic<size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        outputs[i] = run_trial(scenario, *tasks[i].point, tasks[i].trial,
                               trace_mode ? &trace_coflows : nullptr, trace_ports);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  int n_threads = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(tasks.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentReport report;
  report.scenario = scenario.name;
  for (TrialOutput& out : outputs) {
    for (auto& r : out.rows) report.rows.push_back(std::move(r));
    for (auto& r : out.cdf) report.cdf.push_back(std::move(r));
    for (auto& r : out.errors) report.errors.push_back(std::move(r));
  }
  return report;
}

QuartileSummary quartiles(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("quartiles: empty sample set");
  std::sort(samples.begin(), samples.end());
  const size_t n = samples.size();
  auto type7 = [&](double p) {
    const double pos = p * static_cast<double>(n - 1);
    const size_t lo = static_cast<size_t>(pos);
    const size_t hi = std::min(lo + 1, n - 1);
    const double frac = pos - static_cast<double>(lo);
    return samples[lo] + (samples[hi] - samples[lo]) * frac;
  };
  return {type7(0.25), type7(0.5), type7(0.75), samples.front(), samples.back()};
}

std::vector<AggregateRow> aggregate(const ExperimentReport& report) {
  std::vector<AggregateRow> out;
  std::map<std::pair<std::string, SchedulerKind>, size_t> index;
  std::vector<std::vector<double>> port_samples, combined_samples;
  for (const ReportRow& row : report.rows) {
    auto key = std::make_pair(row.point, row.scheduler);
    auto [it, inserted] = index.emplace(key, out.size());
    if (inserted) {
      out.push_back({row.point, row.scheduler, 0, 0.0, 0.0, {}});
      port_samples.emplace_back();
      combined_samples.emplace_back();
    }
    port_samples[it->second].push_back(row.ratio_port);
    combined_samples[it->second].push_back(row.ratio_combined);
  }
  for (size_t i = 0; i < out.size(); ++i) {
    const auto& ps = port_samples[i];
    const auto& cs = combined_samples[i];
    out[i].count = ps.size();
    out[i].mean_ratio_port = std::accumulate(ps.begin(), ps.end(), 0.0) / static_cast<double>(ps.size());
    out[i].mean_ratio_combined =
        std::accumulate(cs.begin(), cs.end(), 0.0) / static_cast<double>(cs.size());
    out[i].ratio_port_quartiles = quartiles(ps);
  }
  return out;
}

std::string format_ratio(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

void emit_csv(const ExperimentReport& report, std::ostream& os) {
  os << "scenario,point,scheduler,trial,makespan,port_lb,combined_lb,ratio_port,ratio_combined\n";
  for (const ReportRow& row : report.rows) {
    os << report.scenario << ',' << row.point << ',' << to_string(row.scheduler) << ','
       << row.trial << ',' << row.makespan.str() << ',' << row.port_lb.str() << ','
       << row.combined_lb.str() << ',' << format_ratio(row.ratio_port) << ','
       << format_ratio(row.ratio_combined) << '\n';
  }
}

void emit_cdf(const ExperimentReport& report, std::ostream& os) {
  os << "scenario,point,scheduler,trial,core,completion\n";
  for (const CdfRow& row : report.cdf) {
    os << report.scenario << ',' << row.point << ',' << to_string(row.scheduler) << ','
       << row.trial << ',' << row.core << ',' << row.completion << '\n';
  }
}

}  // namespace coresched
