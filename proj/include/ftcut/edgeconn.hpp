#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ftcut/congest.hpp"
#include "ftcut/primitives.hpp"

namespace ftcut {

struct CoverCluster {
  std::uint32_t id = 0;
  NodeId center = 0;
  std::vector<NodeId> members;  // ascending
  std::uint32_t radius = 0;     // hop distance from center, inside the cluster
};

enum class CoverMode {
  /// Exponential-shift clustering repeated O(log n) times; any vertex whose
  /// k-ball is split in every repetition gets its own ball cluster.
  randomized,
  /// One ball cluster per vertex, minus balls contained in another ball.
  deterministic,
};

struct NeighborhoodCover {
  std::uint32_t k = 0;
  std::string mode;
  std::vector<CoverCluster> clusters;
  /// Vertex-disjoint groups of cluster ids that can be processed in parallel.
  std::vector<std::vector<std::uint32_t>> batches;
  std::uint32_t repetitions = 0;
  std::uint32_t fallback_clusters = 0;
  std::uint32_t max_radius = 0;
  std::uint32_t max_overlap = 0;  // most clusters sharing one vertex
  std::uint64_t rounds = 0;
};

/// Clusters of the selected subgraph such that every vertex's k-ball lies in
/// one cluster. Radius and overlap are measured, not enforced.
NeighborhoodCover neighborhood_cover(Simulator& sim, const SubgraphSelector& sel, std::uint32_t k,
                                     CoverMode mode = CoverMode::randomized, std::uint64_t seed = 0);

struct CoverAudit {
  std::uint64_t uncovered_balls = 0;  // vertices whose k-ball is in no cluster
  std::uint64_t disconnected_clusters = 0;
};
/// Centralized check of the covering property against BFS balls.
CoverAudit audit_cover(const Multigraph& g, const SubgraphSelector& sel, const NeighborhoodCover& cover);

struct CycleCover {
  std::uint32_t d_prime = 0;
  std::vector<std::vector<EdgeId>> cycles;           // closed walks, distinct edges
  std::vector<std::vector<std::uint32_t>> by_edge;   // indexed by EdgeId: cycles through it
  std::vector<EdgeId> uncovered;                     // selected edges on no cycle
  std::uint32_t max_congestion = 0;
  std::uint32_t max_length = 0;
  /// max over covered edges of (shortest covering cycle) / (shortest cycle through the edge).
  double stretch = 0.0;
  std::uint32_t clusters = 0;
  std::uint32_t cover_radius = 0;
  std::uint32_t cover_overlap = 0;
  std::uint64_t rounds = 0;
};

/// Fundamental cycles of a BFS tree in every cluster of a
/// neighborhood cover with k = ceil(D'/2). Every selected edge that lies on a
/// cycle of length <= D' is covered. Cycles are learned by every node on them.
CycleCover approx_cycle_cover(Simulator& sim, const SubgraphSelector& sel, std::uint32_t d_prime,
                              CoverMode mode = CoverMode::randomized, std::uint64_t seed = 0,
                              bool measure_stretch = true);

/// Is `cycle` a closed walk of g with pairwise distinct edges?
bool is_valid_cycle(const Multigraph& g, const std::vector<EdgeId>& cycle);

enum class SamplingPreset {
  /// p = 1 - 1/D', iterations ceil((6 lambda D)^(2 lambda) ln n).
  conservative,
  /// p = 1 - 1/D'^lambda, iterations ceil(lambda D^lambda ln n).
  lean,
};

struct EdgeConnOptions {
  bool deterministic = false;
  SamplingPreset preset = SamplingPreset::conservative;
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::optional<std::uint64_t> iterations;
  bool early_exit = false;
  std::uint64_t iteration_budget = 200'000;  // deterministic mode
};

struct EdgeConnMap {
  std::string mode;
  std::string preset;
  std::uint32_t lambda = 0;
  std::uint32_t diameter = 0;
  std::uint32_t d_prime = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t planned_iterations = 0;
  std::uint64_t iterations = 0;
  /// Indexed by EdgeId: lambda(e) when <= lambda, lambda + 1 for "at least lambda + 1".
  std::vector<std::uint32_t> lambda_e;
  std::vector<std::vector<EdgeId>> certificate;  // G_{u,v} per edge
  std::uint32_t max_congestion = 0;
  std::uint32_t max_cycle_length = 0;
  double max_length_ratio = 0.0;  // max_cycle_length / D'
  std::uint32_t max_cover_radius = 0;
  std::uint32_t max_cover_overlap = 0;
  std::uint64_t cycles = 0;
  std::uint64_t rounds = 0;
};

/// lambda(e) for every edge e = (u, v) up to lambda: per iteration a sampled
/// subgraph gets a cycle cover, G_{u,v} collects the cycles through e, and
/// both endpoints take the u-v cut of G_{u,v}.
EdgeConnMap all_edge_connectivities(Simulator& sim, std::uint32_t lambda, const EdgeConnOptions& opt = {});

/// "edge_id,u,v,lambda_e,certificate_edges" with a header row.
std::string edgeconn_csv(const Multigraph& g, const EdgeConnMap& map);
std::string edgeconn_summary_json(const EdgeConnMap& map);

}  // namespace ftcut
