#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ftcut/types.hpp"

namespace ftcut {

struct Edge {
  EdgeId id = kNoEdge;
  NodeId u = 0;
  NodeId v = 0;
  /// Wire identity the nodes see before renaming. Defaults to `id`.
  std::uint64_t label = 0;

  NodeId other(NodeId x) const noexcept { return x == u ? v : u; }
};

struct Incidence {
  EdgeId edge;
  NodeId neighbor;
};

/// Unweighted undirected multigraph. Nodes are 0..n-1, edges 1..m in
/// insertion order. Parallel edges are distinct; self-loops are rejected.
/// Immutable once shared; all queries are const.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(std::size_t n);

  EdgeId add_edge(NodeId u, NodeId v);
  /// Replaces the wire labels (must be unique, one per edge).
  void set_labels(std::span<const std::uint64_t> labels);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const Edge& edge(EdgeId id) const;
  std::span<const Edge> edges() const noexcept { return edges_; }
  /// Incident edges in ascending edge-id order; parallel edges appear once each.
  std::span<const Incidence> incident(NodeId v) const { return adjacency_.at(v); }
  std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }
  std::size_t max_degree() const noexcept;
  bool adjacent(NodeId a, NodeId b) const;

  /// Subgraph on the same node set keeping edges with keep[id] set. Edge ids
  /// are renumbered 1..m'; `original` receives the old id of each new edge.
  Multigraph edge_subgraph(const std::vector<bool>& keep,
                           std::vector<EdgeId>* original = nullptr) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

struct FaultSet {
  enum class Kind { edges, vertices };
  Kind kind = Kind::edges;
  std::vector<std::uint32_t> members;

  static FaultSet of_edges(std::vector<EdgeId> ids) { return {Kind::edges, std::move(ids)}; }
  static FaultSet of_vertices(std::vector<NodeId> ids) { return {Kind::vertices, std::move(ids)}; }
};

/// Parses "n m" followed by m lines "u v". '#' starts a comment; blank lines
/// are skipped. Throws ParseError naming the offending line.
Multigraph load_graph(std::string_view text);
Multigraph load_graph_file(const std::string& path);
std::string write_graph(const Multigraph& g);

// ---- generators -----------------------------------------------------------

/// Parsed generator description, e.g. "cycle:6", "torus:3x4",
/// "random-lambda:12,2,0.3", "multi-cycle:4,3", "lower-bound:3,2".
/// Fixture shapes used by tests and the CLI are also accepted: path:n,
/// complete:n, grid:AxB, star:n, wheel:n, petersen, cliques:k,bridges,
/// two-triangles.
struct GeneratorSpec {
  std::string kind;
  std::vector<double> params;

  static GeneratorSpec parse(std::string_view text);
  std::string to_string() const;
};

Multigraph generate(const GeneratorSpec& spec, std::uint64_t seed);

namespace gen {

Multigraph cycle(std::size_t n);
Multigraph path(std::size_t n);
Multigraph complete(std::size_t n);
Multigraph grid(std::size_t rows, std::size_t cols);
Multigraph torus(std::size_t rows, std::size_t cols);
Multigraph star(std::size_t leaves);
/// Hub 0 joined to a rim cycle of `rim` nodes.
Multigraph wheel(std::size_t rim);
Multigraph petersen();
Multigraph multi_cycle(std::size_t n, std::size_t multiplicity);
/// Two K_k's (nodes 0..k-1 and k..2k-1) joined by `bridges` edges
/// (i, k+i) for i < bridges, appended after the clique edges.
Multigraph cliques_joined(std::size_t k, std::size_t bridges);
/// Triangles {0,1,2} and {3,4,5} joined by the bridge 2-3 (edge id 7).
Multigraph two_triangles_bridge();
/// Neighbours s=0, t=1 joined by a nested family of length-D detour chains:
/// s-t connectivity lambda+1, every edge on a Theta(D) cycle, and
/// Theta(D^lambda) edges all needed by any s-t certificate.
Multigraph lower_bound_family(std::size_t diameter, std::size_t lambda);
/// Two random (lambda+1)-connected halves joined by exactly lambda edges.
Multigraph random_lambda_connected(std::size_t n, std::size_t lambda, double extra_edge_prob,
                                   std::uint64_t seed);

}  // namespace gen

}  // namespace ftcut
