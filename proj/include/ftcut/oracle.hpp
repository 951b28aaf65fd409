#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ftcut/graph.hpp"

namespace ftcut {

// Centralized brute-force oracles. Nothing in here is distributed; these are
// the independent reference answers the algorithms are checked against.

/// BFS hop distances from `src` with the fault set deleted. Unreached nodes
/// (and faulted vertices) get kUnreachable.
std::vector<std::uint32_t> bfs_distances(const Multigraph& g, NodeId src, const FaultSet& faults = {});

/// dist(u, v, G \ F); kUnreachable when disconnected or an endpoint is faulted.
std::uint32_t dist_under_faults(const Multigraph& g, NodeId u, NodeId v, const FaultSet& faults);

/// Largest finite BFS distance from v.
std::uint32_t eccentricity(const Multigraph& g, NodeId v);
/// Largest finite eccentricity (0 for edgeless graphs).
std::uint32_t diameter(const Multigraph& g);
bool is_connected(const Multigraph& g);

/// True if deleting `removed` leaves s and t in different components (or, with
/// no pair given, leaves the graph disconnected).
bool disconnects(const Multigraph& g, const std::vector<EdgeId>& removed, std::optional<NodeId> s = std::nullopt,
                 std::optional<NodeId> t = std::nullopt);
bool disconnects_vertices(const Multigraph& g, const std::vector<NodeId>& removed, NodeId s, NodeId t);

/// s-t edge connectivity by augmenting paths over multiplicity capacities.
/// Stops early once `limit` is reached.
std::uint64_t max_flow_value(const Multigraph& g, NodeId s, NodeId t,
                             std::uint64_t limit = std::numeric_limits<std::uint64_t>::max());

struct OracleCut {
  /// Exact connectivity for edge cuts; for vertex cuts cap+1 when above_cap.
  std::uint64_t value = 0;
  bool above_cap = false;
  /// Vertex variant only: s and t are adjacent, no vertex set separates them.
  bool adjacent = false;
  /// Every minimum cut (sorted ids), listed only when value <= cap.
  std::vector<std::vector<std::uint32_t>> witnesses;
};

inline constexpr std::uint32_t kDefaultCutCap = 4;

/// Global (no pair) or s-t minimum edge cut. Value by max-flow; witnesses by
/// exhaustive enumeration of all edge subsets of size == value.
OracleCut min_cut_oracle(const Multigraph& g, std::optional<NodeId> s, std::optional<NodeId> t,
                         std::uint32_t cap = kDefaultCutCap);

/// Minimum s-t vertex cut by exhaustive enumeration of subsets of V \ {s,t}.
OracleCut vertex_cut_oracle(const Multigraph& g, NodeId s, NodeId t, std::uint32_t cap = kDefaultCutCap);

/// Minimum vertex cut over all non-adjacent pairs; above_cap+adjacent when
/// every pair is adjacent.
OracleCut vertex_connectivity_oracle(const Multigraph& g, std::uint32_t cap = kDefaultCutCap);

/// Second route to the cut value: the smallest j <= cap such that some j-edge
/// subset disconnects (the pair), or cap+1.
std::uint32_t exhaustive_cut_value(const Multigraph& g, std::optional<NodeId> s, std::optional<NodeId> t,
                                   std::uint32_t cap);

/// Calls fn(indices) for every size-k subset of [0, n) in lexicographic order;
/// stops early when fn returns false.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::uint32_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<std::uint32_t>(i);
  while (true) {
    if (!fn(static_cast<const std::vector<std::uint32_t>&>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace ftcut
