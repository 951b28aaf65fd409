#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ftcut/graph.hpp"
#include "ftcut/oracle.hpp"

namespace fixtures {

struct Named {
  std::string name;
  ftcut::Multigraph g;
};

inline constexpr std::uint64_t kGenSeed = 5;

inline Named make(const std::string& spec) {
  return {spec, ftcut::generate(ftcut::GeneratorSpec::parse(spec), kGenSeed)};
}

inline std::vector<Named> make_all(const std::vector<std::string>& specs) {
  std::vector<Named> out;
  for (const auto& s : specs) out.push_back(make(s));
  return out;
}

/// n <= 16, lambda <= 3 connected fixtures.
inline std::vector<std::string> small_specs() {
  return {"cycle:4",     "cycle:5",        "cycle:6",         "cycle:8",
          "path:5",      "star:5",         "complete:4",      "two-triangles",
          "cliques:4,1", "cliques:4,2",    "cliques:4,3",     "petersen",
          "grid:3x3",    "grid:3x4",       "grid:2x5",        "wheel:5",
          "wheel:6",     "lower-bound:2,2", "lower-bound:3,2", "random-lambda:12,1,0.3",
          "random-lambda:12,2,0.3", "random-lambda:12,3,0.4", "random-lambda:16,3,0.3"};
}

inline std::uint32_t edge_lambda(const ftcut::Multigraph& g) {
  return static_cast<std::uint32_t>(ftcut::min_cut_oracle(g, std::nullopt, std::nullopt, 4).value);
}

inline std::uint32_t ceil_log2(std::size_t n) {
  std::uint32_t r = 0;
  while ((std::size_t{1} << r) < n) ++r;
  return r;
}

/// Edges whose removal alone disconnects g.
inline std::set<ftcut::EdgeId> bridges(const ftcut::Multigraph& g) {
  std::set<ftcut::EdgeId> out;
  for (const auto& e : g.edges())
    if (ftcut::disconnects(g, {e.id})) out.insert(e.id);
  return out;
}

/// Length of a shortest cycle through e (0 when e is a bridge).
inline std::uint32_t shortest_cycle_through(const ftcut::Multigraph& g, ftcut::EdgeId e) {
  const auto& ed = g.edge(e);
  const auto d = ftcut::dist_under_faults(g, ed.u, ed.v, ftcut::FaultSet::of_edges({e}));
  return d == ftcut::kUnreachable ? 0 : d + 1;
}

inline std::vector<ftcut::EdgeId> all_edge_ids(const ftcut::Multigraph& g) {
  std::vector<ftcut::EdgeId> out;
  for (const auto& e : g.edges()) out.push_back(e.id);
  return out;
}

}  // namespace fixtures
