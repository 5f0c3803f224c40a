#include "coresched/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace coresched {

namespace {

int ceil_sqrt(int n) {
  int r = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while (r * r < n) ++r;
  while (r > 1 && (r - 1) * (r - 1) >= n) --r;
  return r;
}

[[noreturn]] void trace_error(int line, const std::string& what) {
  throw std::runtime_error("trace:" + std::to_string(line) + ": " + what);
}

// First w distinct values of a partial Fisher-Yates shuffle of 1..N.
std::vector<int> sample_ports(int ports, int count, Rng& rng) {
  std::vector<int> all(static_cast<size_t>(ports));
  std::iota(all.begin(), all.end(), 1);
  for (int t = 0; t < count; ++t) {
    const int swap_with = t + static_cast<int>(rng.below(static_cast<uint64_t>(ports - t)));
    std::swap(all[static_cast<size_t>(t)], all[static_cast<size_t>(swap_with)]);
  }
  all.resize(static_cast<size_t>(count));
  return all;
}

}  // namespace

Mixture Mixture::standard(int ports) {
  const int wide_min = std::min(5, ports);
  Mixture m;
  m.entries = {
      {{1, std::min(5, ports), 1, 10}, 41},
      {{1, std::min(5, ports), 10, 1000}, 29},
      {{wide_min, ports, 1, 10}, 9},
      {{wide_min, ports, 10, 1000}, 21},
  };
  return m;
}

Mixture Mixture::dense(int ports) {
  Mixture m;
  m.entries = {{{ceil_sqrt(ports), ports, 1, 100}, 100}};
  return m;
}

Mixture Mixture::combined(int ports) {
  Mixture m;
  m.entries = {
      {{ceil_sqrt(ports), ports, 1, 100}, 50},
      {{1, ceil_sqrt(ports), 1, 100}, 50},
  };
  return m;
}

Mixture Mixture::by_name(const std::string& name, int ports) {
  if (name == "default" || name == "standard") return standard(ports);
  if (name == "dense") return dense(ports);
  if (name == "combined") return combined(ports);
  throw std::invalid_argument("unknown mixture '" + name + "'");
}

void Mixture::validate() const {
  int sum = 0;
  for (const MixtureEntry& e : entries) {
    if (e.weight < 0) throw std::invalid_argument("mixture: negative weight");
    if (e.desc.w_min < 1 || e.desc.w_min > e.desc.w_max)
      throw std::invalid_argument("mixture: bad width bounds");
    if (e.desc.l_min < 1 || e.desc.l_min > e.desc.l_max)
      throw std::invalid_argument("mixture: bad size bounds");
    sum += e.weight;
  }
  if (sum != 100) throw std::invalid_argument("mixture: weights must sum to 100");
}

const CoflowDescription& Mixture::pick(Rng& rng) const {
  const int r = static_cast<int>(rng.below(100));
  int acc = 0;
  for (const MixtureEntry& e : entries) {
    acc += e.weight;
    if (r < acc) return e.desc;
  }
  return entries.back().desc;
}

Coflow gen_coflow(const CoflowDescription& desc, int ports, int id, Rng& rng) {
  if (desc.w_min < 1 || desc.w_min > desc.w_max || desc.w_max > ports)
    throw std::invalid_argument("gen_coflow: width bounds out of range");
  if (desc.l_min < 1 || desc.l_min > desc.l_max)
    throw std::invalid_argument("gen_coflow: size bounds out of range");
  const int w1 = static_cast<int>(rng.uniform_int(desc.w_min, desc.w_max));
  const int w2 = static_cast<int>(rng.uniform_int(desc.w_min, desc.w_max));
  const std::vector<int> inputs = sample_ports(ports, w1, rng);
  const std::vector<int> outputs = sample_ports(ports, w2, rng);
  Coflow c;
  c.id = id;
  c.flows.reserve(static_cast<size_t>(w1) * static_cast<size_t>(w2));
  for (int i : inputs)
    for (int j : outputs) c.flows.push_back({i, j, id, rng.uniform_int(desc.l_min, desc.l_max)});
  return c;
}

Instance gen_instance(int coflows, int ports, int cores, const Mixture& mixture, Rng& rng) {
  mixture.validate();
  Instance inst;
  inst.network = NetworkSpec::identical(cores, ports);
  inst.coflows.reserve(static_cast<size_t>(coflows));
  for (int k = 1; k <= coflows; ++k)
    inst.coflows.push_back(gen_coflow(mixture.pick(rng), ports, k, rng));
  return inst;
}

std::vector<Rat> gen_speeds(int cores, int heterogeneity, Rng& rng) {
  if (heterogeneity < 1 || heterogeneity > cores)
    throw std::invalid_argument("gen_speeds: need 1 <= h <= m");
  std::vector<Rat> speeds;
  speeds.reserve(static_cast<size_t>(cores));
  if (heterogeneity == cores) {
    speeds.assign(static_cast<size_t>(cores), Rat(1));
    return speeds;
  }
  // ceiling of the grid: the largest multiple of 1/64 that is <= m/h
  const long long top = 64LL * cores / heterogeneity;
  const double span = static_cast<double>(cores) / heterogeneity - 1.0;
  for (int l = 0; l < cores; ++l) {
    const double x = 1.0 + rng.uniform01() * span;
    long long grid = std::llround(x * 64.0);
    grid = std::max(64LL, std::min(grid, top));
    speeds.push_back(Rat(grid, 64));
  }
  return speeds;
}

std::vector<Coflow> parse_trace(std::istream& in, int* ports_out) {
  std::string line;
  int line_no = 0;
  auto next_line = [&](bool required) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    if (required) trace_error(line_no + 1, "unexpected end of file");
    return false;
  };

  next_line(true);
  std::istringstream header(line);
  int num_racks = 0, num_coflows = 0;
  if (!(header >> num_racks >> num_coflows) || num_racks < 1 || num_coflows < 0)
    trace_error(line_no, "bad header, expected '<numRacks> <numCoflows>'");

  std::vector<Coflow> coflows;
  coflows.reserve(static_cast<size_t>(num_coflows));
  std::map<int, bool> seen_ids;

  for (int c = 0; c < num_coflows; ++c) {
    next_line(true);
    std::istringstream ls(line);
    int id = 0;
    long long arrival = 0;
    int num_mappers = 0;
    if (!(ls >> id >> arrival >> num_mappers) || num_mappers < 1)
      trace_error(line_no, "bad coflow prefix, expected '<id> <arrival> <numMappers> ...'");
    if (!seen_ids.emplace(id, true).second) trace_error(line_no, "duplicate coflow id");

    std::vector<int> mappers(static_cast<size_t>(num_mappers));
    for (int i = 0; i < num_mappers; ++i) {
      if (!(ls >> mappers[static_cast<size_t>(i)])) trace_error(line_no, "missing mapper rack");
      if (mappers[static_cast<size_t>(i)] < 0 || mappers[static_cast<size_t>(i)] >= num_racks)
        trace_error(line_no, "mapper rack out of range");
    }

    int num_reducers = 0;
    if (!(ls >> num_reducers) || num_reducers < 1) trace_error(line_no, "bad reducer count");

    Coflow coflow;
    coflow.id = id;
    std::map<std::pair<int, int>, size_t> flow_of;  // merge duplicate (i,j) pairs
    for (int r = 0; r < num_reducers; ++r) {
      std::string token;
      if (!(ls >> token)) trace_error(line_no, "missing reducer entry");
      const size_t colon = token.find(':');
      if (colon == std::string::npos) trace_error(line_no, "reducer entry needs 'rack:sizeMB'");
      int rack = 0;
      long long size_mb = 0;
      try {
        size_t used = 0;
        rack = std::stoi(token.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("");
        const std::string size_str = token.substr(colon + 1);
        size_mb = std::stoll(size_str, &used);
        if (used != size_str.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        trace_error(line_no, "malformed reducer entry '" + token + "'");
      }
      if (rack < 0 || rack >= num_racks) trace_error(line_no, "reducer rack out of range");
      if (size_mb < 0) trace_error(line_no, "negative reducer size");
      if (size_mb == 0) continue;  // no demand, no flow
      const long long per_mapper = (size_mb + num_mappers - 1) / num_mappers;
      for (int mapper : mappers) {
        const int input = mapper + 1;
        const int output = rack + 1;
        auto [it, inserted] = flow_of.emplace(std::make_pair(input, output), coflow.flows.size());
        if (inserted)
          coflow.flows.push_back({input, output, id, per_mapper});
        else
          coflow.flows[it->second].size += per_mapper;
      }
    }
    std::string extra;
    if (ls >> extra) trace_error(line_no, "trailing data '" + extra + "'");
    coflows.push_back(std::move(coflow));
  }
  if (next_line(false)) trace_error(line_no, "trailing data after last coflow");

  if (ports_out) *ports_out = num_racks;
  return coflows;
}

std::vector<Coflow> parse_trace_file(const std::string& path, int* ports_out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file '" + path + "'");
  return parse_trace(in, ports_out);
}

std::vector<Coflow> filter_by_flow_count(std::vector<Coflow> coflows, long long threshold) {
  if (threshold < 0) throw std::invalid_argument("filter_by_flow_count: negative threshold");
  coflows.erase(std::remove_if(coflows.begin(), coflows.end(),
                               [&](const Coflow& c) {
                                 return static_cast<long long>(c.flows.size()) < threshold;
                               }),
                coflows.end());
  return coflows;
}

void write_instance(const Instance& instance, std::ostream& os) {
  os << instance.network.ports << ' ' << instance.network.cores << '\n';
  for (const Coflow& c : instance.coflows)
    for (const Flow& f : c.flows)
      os << f.coflow << ' ' << f.input << ' ' << f.output << ' ' << f.size << '\n';
  os << "s:";
  for (const Rat& s : instance.network.speeds) os << ' ' << s.str();
  os << '\n';
}

Instance read_instance(std::istream& is) {
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) -> void {
    throw std::runtime_error("instance:" + std::to_string(line_no) + ": " + what);
  };

  int ports = 0, cores = 0;
  if (!std::getline(is, line)) fail("missing header");
  ++line_no;
  {
    std::istringstream hs(line);
    if (!(hs >> ports >> cores) || ports < 1 || cores < 1) fail("bad header, expected 'N m'");
  }

  Instance inst;
  inst.network = NetworkSpec::identical(cores, ports);
  std::map<int, size_t> coflow_index;
  bool saw_speeds = false;

  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (line.rfind("s:", 0) == 0) {
      std::istringstream ss(line.substr(2));
      std::vector<Rat> speeds;
      std::string token;
      while (ss >> token) {
        auto r = Rat::parse(token);
        if (!r || !(Rat(0) < *r)) fail("bad speed '" + token + "'");
        speeds.push_back(*r);
      }
      if (static_cast<int>(speeds.size()) != cores) fail("speeds line must list m entries");
      inst.network = NetworkSpec::heterogeneous(ports, std::move(speeds));
      saw_speeds = true;
      continue;
    }
    if (saw_speeds) fail("flow lines after speeds line");
    std::istringstream fs(line);
    int k = 0, i = 0, j = 0;
    long long size = 0;
    if (!(fs >> k >> i >> j >> size)) fail("bad flow line, expected 'k i j size'");
    auto [it, inserted] = coflow_index.emplace(k, inst.coflows.size());
    if (inserted) inst.coflows.push_back({k, {}});
    inst.coflows[it->second].flows.push_back({i, j, k, size});
  }
  inst.validate();
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  return read_instance(in);
}

}  // namespace coresched
