#include <algorithm>
#include <climits>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "coresched/harness.hpp"
#include "coresched/lowerbound.hpp"
#include "coresched/oracle.hpp"
#include "coresched/realizer.hpp"
#include "coresched/rng.hpp"
#include "coresched/schedulers.hpp"
#include "coresched/workload.hpp"

namespace {

using namespace coresched;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

int cmd_gen(uint64_t seed, int coflows, int ports, int cores, const std::string& mixture,
            int heterogeneity, const std::string& out_path) {
  Rng rng(seed);
  Instance instance = gen_instance(coflows, ports, cores, Mixture::by_name(mixture, ports), rng);
  if (heterogeneity > 0)
    instance.network = NetworkSpec::heterogeneous(ports, gen_speeds(cores, heterogeneity, rng));
  auto out = open_output(out_path);
  write_instance(instance, out);
  std::cout << "wrote " << instance.coflows.size() << " coflows, " << instance.flow_count()
            << " flows to " << out_path << "\n";
  return 0;
}

int cmd_run(const std::string& config, uint64_t seed, const std::string& csv_path,
            const std::string& cdf_path, int jobs) {
  Scenario scenario = parse_scenario_file(config);
  scenario.seed = seed;
  scenario.collect_cdf = !cdf_path.empty();
  ExperimentReport report = run_scenario(scenario, jobs);
  {
    auto out = open_output(csv_path);
    emit_csv(report, out);
  }
  if (!cdf_path.empty()) {
    auto out = open_output(cdf_path);
    emit_cdf(report, out);
  }
  for (const RowError& e : report.errors)
    std::cerr << "note: " << e.point << " " << to_string(e.scheduler) << " trial " << e.trial
              << ": " << e.message << "\n";
  std::cout << "point,scheduler,trials,mean_ratio_port,q1,q2,q3,min,max\n";
  for (const AggregateRow& a : aggregate(report)) {
    const QuartileSummary& q = a.ratio_port_quartiles;
    std::cout << a.point << ',' << to_string(a.scheduler) << ',' << a.count << ','
              << format_ratio(a.mean_ratio_port) << ',' << format_ratio(q.q1) << ','
              << format_ratio(q.q2) << ',' << format_ratio(q.q3) << ',' << format_ratio(q.min)
              << ',' << format_ratio(q.max) << "\n";
  }
  return 0;
}

int cmd_trace(const std::string& path, long long threshold, int cores,
              const std::string& out_path) {
  int ports = 0;
  std::vector<Coflow> coflows = parse_trace_file(path, &ports);
  coflows = filter_by_flow_count(std::move(coflows), threshold);

  size_t max_flows = 0;
  size_t min_flows = coflows.empty() ? 0 : coflows.front().flows.size();
  long long max_size = 0;
  long long min_size = coflows.empty() ? 0 : LLONG_MAX;
  size_t total_flows = 0;
  for (const Coflow& c : coflows) {
    max_flows = std::max(max_flows, c.flows.size());
    min_flows = std::min(min_flows, c.flows.size());
    total_flows += c.flows.size();
    for (const Flow& f : c.flows) {
      max_size = std::max(max_size, f.size);
      min_size = std::min(min_size, f.size);
    }
  }
  if (coflows.empty()) min_size = 0;
  std::cout << "coflows=" << coflows.size() << " ports=" << ports << " flows=" << total_flows
            << " flows_max=" << max_flows << " flows_min=" << min_flows
            << " size_max=" << max_size << " size_min=" << min_size << "\n";

  if (!out_path.empty()) {
    Instance instance;
    instance.network = NetworkSpec::identical(cores, ports);
    instance.coflows = std::move(coflows);
    instance.validate();
    auto out = open_output(out_path);
    write_instance(instance, out);
  }
  return 0;
}

int cmd_oracle(const std::string& in_path, const std::string& level, long long max_states) {
  Instance instance = read_instance_file(in_path);
  OracleLimits limits;
  if (max_states > 0) limits.max_states = max_states;
  OracleResult result;
  if (level == "flow")
    result = brute_force_flow(instance, limits);
  else if (level == "coflow")
    result = brute_force_coflow(instance, limits);
  else
    throw std::runtime_error("oracle level must be 'flow' or 'coflow'");
  std::cout << "optimum=" << result.optimum.str() << " explored=" << result.explored << "\n";
  return 0;
}

int cmd_realize(const std::string& in_path, const std::string& scheduler, bool dump) {
  Instance instance = read_instance_file(in_path);
  auto kind = scheduler_from_string(scheduler);
  if (!kind) throw std::runtime_error("unknown scheduler '" + scheduler + "'");
  const Assignment assignment = run_scheduler(*kind, instance);
  const RealizedSchedule schedule = realize(assignment, instance);
  const bool identical = instance.network.is_identical();
  const LowerBounds lb = identical ? lb_identical(instance) : lb_heterogeneous(instance);
  std::cout << "scheduler=" << to_string(*kind) << " makespan=" << schedule.overall.str()
            << " port_lb=" << lb.port_lb.str() << " combined_lb=" << lb.combined.str() << "\n";
  for (size_t h = 0; h < schedule.core_total.size(); ++h)
    std::cout << "core " << (h + 1) << ": completion=" << schedule.core_total[h].str()
              << " slices=" << schedule.per_core[h].size() << "\n";
  if (dump) dump_schedule(schedule, instance, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coflow makespan scheduling on parallel switch cores"};
  app.require_subcommand(1);

  // gen
  uint64_t seed = 0;
  int coflows = 25, ports = 10, cores = 5, heterogeneity = 0;
  std::string mixture = "default", gen_out;
  auto* gen = app.add_subcommand("gen", "generate a synthetic instance file");
  gen->add_option("--seed", seed, "RNG seed")->required();
  gen->add_option("-K,--coflows", coflows, "number of coflows");
  gen->add_option("-N,--ports", ports, "ports per switch core");
  gen->add_option("-m,--cores", cores, "number of cores");
  gen->add_option("--mixture", mixture, "default | dense | combined");
  gen->add_option("--het", heterogeneity, "heterogeneity factor h; 0 keeps the network identical");
  gen->add_option("-o,--out", gen_out, "output instance file")->required();

  // run
  std::string config, csv_path = "report.csv", cdf_path;
  int jobs = 0;
  auto* run = app.add_subcommand("run", "run a scenario sweep and emit CSV");
  run->add_option("--config", config, "scenario config file")->required();
  run->add_option("--seed", seed, "RNG seed (overrides any seed in the config)")->required();
  run->add_option("--csv", csv_path, "output CSV path");
  run->add_option("--cdf", cdf_path, "also emit per-core completion CDF rows");
  run->add_option("--jobs", jobs, "worker threads (0 = hardware)");

  // trace
  std::string trace_path, trace_out;
  long long threshold = 0;
  auto* trace = app.add_subcommand("trace", "parse a coflow benchmark trace and print stats");
  trace->add_option("--file", trace_path, "trace file")->required();
  trace->add_option("--threshold", threshold, "drop coflows with fewer flows");
  trace->add_option("-m,--cores", cores, "cores for the emitted instance");
  trace->add_option("-o,--out", trace_out, "write the filtered instance here");

  // oracle
  std::string in_path, level = "flow";
  long long max_states = 0;
  auto* oracle = app.add_subcommand("oracle", "brute-force a small instance");
  oracle->add_option("--in", in_path, "instance file")->required();
  oracle->add_option("--level", level, "flow | coflow");
  oracle->add_option("--max-states", max_states, "state budget override");

  // realize
  std::string scheduler = "FLPT";
  bool dump = false;
  auto* realize_cmd = app.add_subcommand("realize", "schedule an instance and prove the makespan");
  realize_cmd->add_option("--in", in_path, "instance file")->required();
  realize_cmd->add_option("--scheduler", scheduler, "FLS|FLPT|CLS|FLPT_H|CLS_H|WEAVER");
  realize_cmd->add_flag("--dump", dump, "print one line per schedule slice");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(seed, coflows, ports, cores, mixture, heterogeneity, gen_out);
    if (run->parsed()) return cmd_run(config, seed, csv_path, cdf_path, jobs);
    if (trace->parsed()) return cmd_trace(trace_path, threshold, cores, trace_out);
    if (oracle->parsed()) return cmd_oracle(in_path, level, max_states);
    if (realize_cmd->parsed()) return cmd_realize(in_path, scheduler, dump);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
