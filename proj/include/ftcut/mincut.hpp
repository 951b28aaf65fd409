#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ftcut/congest.hpp"
#include "ftcut/primitives.hpp"

namespace ftcut {

/// Detour constant: any surviving path the algorithms rely on has at most
/// kDetour * lambda * D hops.
inline constexpr std::uint32_t kDetour = 3;

struct VerifyResult {
  bool is_cut = false;
  std::uint32_t rounds = 0;
  std::uint32_t depth_cap = 0;
};

/// Distributed test whether deleting `cut` (|cut| <= lambda) disconnects G:
/// a BFS from node 0 on G \ cut truncated at 3*lambda*D, then one exchange
/// round across the cut edges. Every node is assumed to already know `cut`.
VerifyResult verify_cut(Simulator& sim, const std::vector<EdgeId>& cut, std::uint32_t lambda,
                        std::uint32_t diameter);
/// Same with D taken from the graph.
VerifyResult verify_cut(Simulator& sim, const std::vector<EdgeId>& cut, std::uint32_t lambda);

/// Vertex version: BFS on G \ cut from the lowest id outside the cut,
/// truncated at 3*lambda*Delta*D.
VerifyResult verify_vertex_cut(Simulator& sim, const std::vector<NodeId>& cut, std::uint32_t lambda,
                               std::uint32_t diameter);

struct IterationPlan {
  std::uint64_t iterations = 1;
  std::uint32_t depth_cap = 0;
  double p = 1.0;
};

/// ceil((3*lambda*D)^(2*lambda) * ln n) * scale iterations (at least one) at
/// p = 1 - 1/(3*lambda*D) and depth cap 3*lambda*D.
IterationPlan edge_plan(std::uint32_t lambda, std::uint32_t diameter, std::size_t n, double scale = 1.0);
/// Vertex variant: 3*lambda*Delta*D in place of 3*lambda*D.
IterationPlan vertex_plan(std::uint32_t lambda, std::uint32_t diameter, std::size_t max_degree, std::size_t n,
                          double scale = 1.0);

struct LocalCut {
  /// Exact s-t cut of the certificate when <= lambda, else lambda + 1.
  std::uint32_t value = 0;
  std::vector<EdgeId> witness;              // residual frontier, ascending
  std::vector<std::vector<EdgeId>> paths;   // edge-disjoint s-t paths found
};

/// s-t minimum edge cut of the subgraph `cert` of g by unit-capacity
/// augmenting paths, stopped after lambda + 1 paths. Paths are found by BFS
/// in ascending edge-id order.
LocalCut local_st_cut(const Multigraph& g, const std::vector<EdgeId>& cert, NodeId s, NodeId t,
                      std::uint32_t lambda);

/// Every minimum s-t cut of the subgraph `cert`, provided its value is at most
/// lambda (empty otherwise). Each cut takes exactly one edge from each of the
/// edge-disjoint paths, so the candidates are enumerated as a product.
std::vector<std::vector<EdgeId>> local_min_cuts(const Multigraph& g, const std::vector<EdgeId>& cert, NodeId s,
                                                NodeId t, std::uint32_t lambda);

struct LocalVertexCut {
  std::uint32_t value = 0;  // lambda + 1 when larger or when s, t adjacent in cert
  std::vector<NodeId> witness;
};

/// s-t minimum vertex cut of the subgraph `cert` via split-node max-flow.
LocalVertexCut local_vertex_cut(const Multigraph& g, const std::vector<EdgeId>& cert, NodeId s, NodeId t,
                                std::uint32_t lambda);

struct CutResult {
  std::string mode;
  std::uint32_t lambda = 0;
  /// Verified cut size; nullopt means "connectivity > lambda".
  std::optional<std::uint32_t> value;
  std::vector<std::uint32_t> witness;  // edge ids, or node ids for vertex cuts
  NodeId discovered_by = kNoNode;
  std::uint64_t seed = 0;
  std::uint32_t diameter = 0;
  std::uint32_t depth_cap = 0;
  double p = 1.0;
  std::uint64_t planned_iterations = 0;
  std::uint64_t iterations = 0;
  std::uint32_t attempts = 0;  // candidates broadcast and verified
  std::uint64_t sampling_rounds = 0;
  std::uint64_t report_rounds = 0;
  std::uint64_t rounds = 0;
  /// |G_{s,t}| per node t (per (source, t) for vertex cuts, flattened).
  std::vector<std::size_t> certificate_sizes;
  /// Edge modes: local s-t value of G_{s,t} per node t (lambda + 1 when
  /// larger; the entry for s is 0).
  std::vector<std::uint32_t> local_values;
  /// With collect_all_witnesses: every verified cut of the final size known
  /// by some node, sorted.
  std::vector<std::vector<std::uint32_t>> all_witnesses;
};

struct CutOptions {
  double scale = 1.0;
  std::optional<std::uint64_t> iterations;  // overrides the plan
  /// Stop once no certificate gained an edge for iterations/10 rounds in a row.
  bool early_exit = false;
  bool collect_all_witnesses = false;
  std::optional<std::uint32_t> diameter;  // known D; computed when absent
};

/// Phase 1 + phase 2 of the edge-cut algorithm for an arbitrary per-iteration
/// selector. Shared by the randomized and deterministic drivers.
struct EdgeSearch {
  std::string mode;
  std::uint32_t lambda = 1;
  std::uint32_t diameter = 1;
  std::uint32_t depth_cap = 1;
  std::uint64_t iterations = 1;
  double p = 1.0;
  std::uint64_t seed = 0;
  std::function<SubgraphSelector(std::uint64_t)> selector;
  bool early_exit = false;
  bool collect_all_witnesses = false;
};

CutResult edge_cut_search(Simulator& sim, const EdgeSearch& search);

/// Round bound for a finished search, with D = r.diameter and cap = r.depth_cap:
/// every iteration is a BFS (cap + 1) plus root paths (2 cap + 2); reporting
/// is a BFS of G (D + 1), at most attempts + 1 convergecasts (D + 1 each) and
/// per attempt a broadcast (D + lambda) and a verification (cap + 2). The
/// deterministic driver adds renaming (4D + 4) and its depth BFS (D + 1).
std::uint64_t cut_round_bound(const CutResult& r);

/// Randomized exact min cut up to lambda from source node 0.
CutResult randomized_min_cut(Simulator& sim, std::uint32_t lambda, std::uint64_t seed, const CutOptions& opt = {});

/// Runs lambda = 1, 2, ..., lambda_max and returns the first verified cut.
CutResult min_cut_unknown_lambda(Simulator& sim, std::uint32_t lambda_max, std::uint64_t seed,
                                 const CutOptions& opt = {});

/// Minimum vertex cut up to lambda from the lambda+1 lowest-id sources.
CutResult randomized_vertex_cut(Simulator& sim, std::uint32_t lambda, std::uint64_t seed,
                                const CutOptions& opt = {});

}  // namespace ftcut
