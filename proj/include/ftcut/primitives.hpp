#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ftcut/congest.hpp"
#include "ftcut/graph.hpp"

namespace ftcut {

/// Membership oracle over a universe of indices (0-based renamed edge ids).
class IndexSet {
 public:
  virtual ~IndexSet() = default;
  virtual bool contains(std::uint64_t index) const = 0;
};

/// Predicate picking the subgraph G_i of one iteration. Membership is a pure
/// function of shared data (seed, iteration, family member), so both
/// endpoints of an edge evaluate it locally and always agree.
class SubgraphSelector {
 public:
  enum class Mode { all, random_edges, random_vertices, universal_set };

  static SubgraphSelector all();
  /// Each edge kept independently with probability p.
  static SubgraphSelector random_edges(double p, std::uint64_t seed, std::uint64_t iteration);
  /// Each vertex kept independently with probability p (always_kept are
  /// forced in); the subgraph is the induced one.
  static SubgraphSelector random_vertices(double p, std::uint64_t seed, std::uint64_t iteration,
                                          std::vector<NodeId> always_kept = {});
  /// Edge e kept iff member contains renamed_ids[e] - 1.
  static SubgraphSelector universal_set(std::shared_ptr<const IndexSet> member,
                                        std::shared_ptr<const std::vector<std::uint32_t>> renamed_ids);

  /// Additional masks intersected with the mode's rule and with earlier masks
  /// (indexed by EdgeId / NodeId).
  SubgraphSelector& restrict_edges(std::shared_ptr<const std::vector<bool>> allowed);
  SubgraphSelector& restrict_vertices(std::shared_ptr<const std::vector<bool>> allowed);

  Mode mode() const noexcept { return mode_; }
  /// True for the unrestricted selector (every edge, every vertex).
  bool selects_everything() const noexcept { return mode_ == Mode::all && !edge_mask_ && !vertex_mask_; }
  bool keeps_vertex(NodeId v) const;
  bool keeps_edge(const Edge& e) const;

 private:
  Mode mode_ = Mode::all;
  double p_ = 1.0;
  std::uint64_t seed_ = 0;
  std::uint64_t iteration_ = 0;
  std::vector<NodeId> always_kept_;
  std::shared_ptr<const IndexSet> member_;
  std::shared_ptr<const std::vector<std::uint32_t>> renamed_;
  std::shared_ptr<const std::vector<bool>> edge_mask_;
  std::shared_ptr<const std::vector<bool>> vertex_mask_;
};

/// Edge mask (indexed by EdgeId) with the listed edges cleared.
std::shared_ptr<const std::vector<bool>> edges_except(const Multigraph& g, const std::vector<EdgeId>& removed);
std::shared_ptr<const std::vector<bool>> vertices_except(const Multigraph& g, const std::vector<NodeId>& removed);

struct BfsTree {
  std::vector<NodeId> roots;
  std::uint32_t depth_cap = 0;
  std::vector<bool> reached;
  std::vector<std::uint32_t> depth;
  std::vector<EdgeId> parent_edge;             // kNoEdge at roots / unreached
  std::vector<std::vector<EdgeId>> children;   // ascending edge id
  std::vector<NodeId> root_of;                 // kNoNode when unreached

  std::uint32_t max_depth() const noexcept;
  std::size_t reached_count() const noexcept;
  bool spans() const noexcept { return reached_count() == reached.size(); }
};

struct BfsRun {
  BfsTree tree;
  std::uint32_t rounds = 0;
};

/// BFS tree of the selected subgraph grown from s to depth depth_cap.
/// Neighbours are explored in ascending edge-id order: a node reached in one
/// round by several parents adopts the lowest edge id. Children acknowledge,
/// so rounds <= depth_cap + 1.
BfsRun truncated_bfs(Simulator& sim, const SubgraphSelector& sel, NodeId s, std::uint32_t depth_cap);
/// Forest variant grown from several roots at once.
BfsRun truncated_bfs_forest(Simulator& sim, const SubgraphSelector& sel, const std::vector<NodeId>& roots,
                            std::uint32_t depth_cap);

struct RootPaths {
  /// paths[v] = tree edges from the root down to v (empty at roots and unreached nodes).
  std::vector<std::vector<EdgeId>> paths;
  std::uint32_t rounds = 0;
};

/// Every reached node learns its root path: each node streams its own path
/// prefix to its children one edge id per round.
RootPaths collect_root_paths(Simulator& sim, const BfsTree& tree);

struct Renaming {
  std::vector<std::uint32_t> new_id;  // indexed by EdgeId; 1..m when connected
  bool disconnected = false;
  std::uint32_t rounds = 0;
};

/// Consistent bijection edges -> [1, m]: min-id leader flooding, BFS from the
/// leader, subtree-size convergecast of owned edges, prefix-offset downcast,
/// then one round telling the non-owning endpoint. Components other than the
/// one holding node 0 get the disjoint range leader*m + [1, m_c].
/// Each of the four flooding phases takes at most D + 1 rounds, so
/// rounds <= 4D + 4 on a connected graph.
Renaming rename_edges(Simulator& sim);

struct BroadcastRun {
  std::vector<std::vector<std::uint64_t>> received;  // per node, in payload order
  std::uint32_t rounds = 0;
};

/// Floods `payload` from source, one item per message, pipelined; rounds <=
/// ecc(source) + payload size.
BroadcastRun broadcast(Simulator& sim, NodeId source, const std::vector<std::uint64_t>& payload);

struct Candidate {
  std::uint64_t value;
  NodeId owner;
  friend bool operator<(const Candidate& a, const Candidate& b) {
    return a.value != b.value ? a.value < b.value : a.owner < b.owner;
  }
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct ConvergecastRun {
  std::optional<Candidate> at_root;  // min over the root's tree
  std::uint32_t rounds = 0;
};

/// Minimum (value, owner) over a single-root tree, reported at the root.
ConvergecastRun convergecast_min(Simulator& sim, const BfsTree& tree, const std::vector<std::optional<Candidate>>& values);

}  // namespace ftcut
