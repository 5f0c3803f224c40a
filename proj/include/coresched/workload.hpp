#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coresched/model.hpp"
#include "coresched/rng.hpp"

namespace coresched {

// (w_min, w_max, l_min, l_max): a coflow touches w1 x w2 port pairs with
// w1, w2 uniform on [w_min, w_max] and per-flow sizes uniform on
// [l_min, l_max].
struct CoflowDescription {
  int w_min = 1;
  int w_max = 1;
  long long l_min = 1;
  long long l_max = 1;
};

struct MixtureEntry {
  CoflowDescription desc;
  int weight;  // percent
};

struct Mixture {
  std::vector<MixtureEntry> entries;

  // The standard synthetic mix: (1,5,1,10)@41, (1,5,10,1000)@29,
  // (5,N,1,10)@9, (5,N,10,1000)@21.
  static Mixture standard(int ports);
  // Dense coflows only: (ceil(sqrt(N)), N, 1, 100).
  static Mixture dense(int ports);
  // 50/50 dense and sparse, sparse being (1, ceil(sqrt(N)), 1, 100).
  static Mixture combined(int ports);
  static Mixture by_name(const std::string& name, int ports);  // throws on unknown

  void validate() const;  // weights must sum to 100
  const CoflowDescription& pick(Rng& rng) const;
};

// w1 distinct input ports and w2 distinct output ports, chosen uniformly
// without replacement; one flow per chosen pair. Throws if w_max > N.
Coflow gen_coflow(const CoflowDescription& desc, int ports, int id, Rng& rng);

// K coflows with descriptions drawn by mixture weight; identical network.
Instance gen_instance(int coflows, int ports, int cores, const Mixture& mixture, Rng& rng);

// Speed factors uniform on [1, m/h], snapped to the 1/64 grid so downstream
// arithmetic stays exact. h == m yields all-ones. Throws unless 1 <= h <= m.
std::vector<Rat> gen_speeds(int cores, int heterogeneity, Rng& rng);

// Coflow benchmark text format: header "<numRacks> <numCoflows>", then per
// coflow "<id> <arrivalMillis> <numMappers> <rack...> <numReducers>
// <rack:sizeMB ...>". Every reducer entry becomes one flow per mapper rack of
// size ceil(sizeMB / numMappers); arrival times are dropped (all release
// times are 0) and 0-based racks map to ports 1..numRacks. Malformed input
// raises std::runtime_error with the offending line number.
std::vector<Coflow> parse_trace(std::istream& in, int* ports_out);
std::vector<Coflow> parse_trace_file(const std::string& path, int* ports_out);

// Keeps coflows with at least `threshold` flows.
std::vector<Coflow> filter_by_flow_count(std::vector<Coflow> coflows, long long threshold);

// Native instance text: "N m" header, one "k i j size" line per flow, then a
// trailing speeds line "s: s1 s2 ..." with rationals as p/q.
void write_instance(const Instance& instance, std::ostream& os);
Instance read_instance(std::istream& is);
Instance read_instance_file(const std::string& path);

}  // namespace coresched
