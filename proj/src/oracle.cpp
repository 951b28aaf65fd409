#include "ftcut/oracle.hpp"

#include <algorithm>
#include <deque>

namespace ftcut {
namespace {

struct Masks {
  std::vector<bool> dead_edge;
  std::vector<bool> dead_node;
};

Masks masks_for(const Multigraph& g, const FaultSet& f) {
  Masks m{std::vector<bool>(g.edge_count() + 1, false), std::vector<bool>(g.node_count(), false)};
  for (auto x : f.members) {
    if (f.kind == FaultSet::Kind::edges) {
      if (x == kNoEdge || x > g.edge_count()) throw Error("fault edge " + std::to_string(x) + " not in graph");
      m.dead_edge[x] = true;
    } else {
      if (x >= g.node_count()) throw Error("fault vertex " + std::to_string(x) + " not in graph");
      m.dead_node[x] = true;
    }
  }
  return m;
}

std::vector<std::uint32_t> bfs_masked(const Multigraph& g, NodeId src, const Masks& m) {
  std::vector<std::uint32_t> dist(g.node_count(), kUnreachable);
  if (m.dead_node[src]) return dist;
  std::deque<NodeId> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    const NodeId x = queue.front();
    queue.pop_front();
    for (const auto& inc : g.incident(x)) {
      if (m.dead_edge[inc.edge] || m.dead_node[inc.neighbor] || dist[inc.neighbor] != kUnreachable) continue;
      dist[inc.neighbor] = dist[x] + 1;
      queue.push_back(inc.neighbor);
    }
  }
  return dist;
}

bool separated(const Multigraph& g, const Masks& m, std::optional<NodeId> s, std::optional<NodeId> t) {
  if (s && t) return bfs_masked(g, *s, m)[*t] == kUnreachable;
  NodeId start = 0;
  while (start < g.node_count() && m.dead_node[start]) ++start;
  if (start == g.node_count()) return false;
  const auto dist = bfs_masked(g, start, m);
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (!m.dead_node[v] && dist[v] == kUnreachable) return true;
  return false;
}

}  // namespace

std::vector<std::uint32_t> bfs_distances(const Multigraph& g, NodeId src, const FaultSet& faults) {
  if (src >= g.node_count()) throw Error("bfs source out of range");
  return bfs_masked(g, src, masks_for(g, faults));
}

std::uint32_t dist_under_faults(const Multigraph& g, NodeId u, NodeId v, const FaultSet& faults) {
  if (v >= g.node_count()) throw Error("node out of range");
  return bfs_distances(g, u, faults)[v];
}

std::uint32_t eccentricity(const Multigraph& g, NodeId v) {
  std::uint32_t best = 0;
  for (auto d : bfs_distances(g, v))
    if (d != kUnreachable) best = std::max(best, d);
  return best;
}

std::uint32_t diameter(const Multigraph& g) {
  std::uint32_t best = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) best = std::max(best, eccentricity(g, v));
  return best;
}

bool is_connected(const Multigraph& g) {
  if (g.node_count() == 0) return true;
  const auto d = bfs_distances(g, 0);
  return std::none_of(d.begin(), d.end(), [](auto x) { return x == kUnreachable; });
}

bool disconnects(const Multigraph& g, const std::vector<EdgeId>& removed, std::optional<NodeId> s,
                 std::optional<NodeId> t) {
  return separated(g, masks_for(g, FaultSet::of_edges(removed)), s, t);
}

bool disconnects_vertices(const Multigraph& g, const std::vector<NodeId>& removed, NodeId s, NodeId t) {
  return separated(g, masks_for(g, FaultSet::of_vertices(removed)), s, t);
}

std::uint64_t max_flow_value(const Multigraph& g, NodeId s, NodeId t, std::uint64_t limit) {
  const std::size_t n = g.node_count();
  if (s >= n || t >= n) throw Error("max-flow endpoint out of range");
  if (s == t) throw Error("max-flow needs s != t");
  // Residual capacities on a dense matrix: parallel edges become multiplicity.
  std::vector<std::int64_t> cap(n * n, 0);
  for (const Edge& e : g.edges()) {
    ++cap[e.u * n + e.v];
    ++cap[e.v * n + e.u];
  }
  std::uint64_t flow = 0;
  std::vector<NodeId> parent(n);
  while (flow < limit) {
    std::fill(parent.begin(), parent.end(), kNoNode);
    parent[s] = s;
    std::deque<NodeId> queue{s};
    while (!queue.empty() && parent[t] == kNoNode) {
      const NodeId x = queue.front();
      queue.pop_front();
      for (NodeId y = 0; y < n; ++y) {
        if (parent[y] == kNoNode && cap[x * n + y] > 0) {
          parent[y] = x;
          queue.push_back(y);
        }
      }
    }
    if (parent[t] == kNoNode) break;
    std::int64_t bottleneck = std::numeric_limits<std::int64_t>::max();
    for (NodeId y = t; y != s; y = parent[y]) bottleneck = std::min(bottleneck, cap[parent[y] * n + y]);
    const std::uint64_t room = limit - flow;
    if (room < static_cast<std::uint64_t>(bottleneck)) bottleneck = static_cast<std::int64_t>(room);
    for (NodeId y = t; y != s; y = parent[y]) {
      cap[parent[y] * n + y] -= bottleneck;
      cap[y * n + parent[y]] += bottleneck;
    }
    flow += static_cast<std::uint64_t>(bottleneck);
  }
  return flow;
}

OracleCut min_cut_oracle(const Multigraph& g, std::optional<NodeId> s, std::optional<NodeId> t, std::uint32_t cap) {
  if (s.has_value() != t.has_value()) throw Error("min_cut_oracle: give both s and t or neither");
  if (g.node_count() < 2) throw Error("min_cut_oracle: needs at least two nodes");
  OracleCut out;
  if (s) {
    out.value = max_flow_value(g, *s, *t);
  } else {
    out.value = std::numeric_limits<std::uint64_t>::max();
    for (NodeId v = 1; v < g.node_count() && out.value > 0; ++v)
      out.value = std::min(out.value, max_flow_value(g, 0, v, out.value));
  }
  if (out.value > cap) {
    out.above_cap = true;
    return out;
  }
  for_each_subset(g.edge_count(), static_cast<std::size_t>(out.value), [&](const std::vector<std::uint32_t>& idx) {
    std::vector<EdgeId> removed(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) removed[i] = idx[i] + 1;
    if (disconnects(g, removed, s, t)) out.witnesses.push_back(removed);
    return true;
  });
  return out;
}

OracleCut vertex_cut_oracle(const Multigraph& g, NodeId s, NodeId t, std::uint32_t cap) {
  if (s == t) throw Error("vertex_cut_oracle: needs s != t");
  if (s >= g.node_count() || t >= g.node_count()) throw Error("vertex_cut_oracle: node out of range");
  OracleCut out;
  if (g.adjacent(s, t)) {
    out.adjacent = true;
    out.above_cap = true;
    out.value = cap + 1ULL;
    return out;
  }
  std::vector<NodeId> candidates;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (v != s && v != t) candidates.push_back(v);
  for (std::uint32_t size = 0; size <= cap; ++size) {
    for_each_subset(candidates.size(), size, [&](const std::vector<std::uint32_t>& idx) {
      std::vector<NodeId> removed(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) removed[i] = candidates[idx[i]];
      if (disconnects_vertices(g, removed, s, t)) out.witnesses.push_back(removed);
      return true;
    });
    if (!out.witnesses.empty()) {
      out.value = size;
      return out;
    }
  }
  out.value = cap + 1ULL;
  out.above_cap = true;
  return out;
}

OracleCut vertex_connectivity_oracle(const Multigraph& g, std::uint32_t cap) {
  OracleCut best;
  best.value = cap + 1ULL;
  best.above_cap = true;
  best.adjacent = true;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    for (NodeId t = s + 1; t < g.node_count(); ++t) {
      if (g.adjacent(s, t)) continue;
      best.adjacent = false;
      auto cut = vertex_cut_oracle(g, s, t, std::min<std::uint64_t>(cap, best.value));
      if (cut.above_cap) continue;
      if (cut.value < best.value || best.above_cap) {
        best = std::move(cut);
        continue;
      }
      for (auto& w : cut.witnesses)
        if (std::find(best.witnesses.begin(), best.witnesses.end(), w) == best.witnesses.end())
          best.witnesses.push_back(std::move(w));
    }
  }
  std::sort(best.witnesses.begin(), best.witnesses.end());
  return best;
}

std::uint32_t exhaustive_cut_value(const Multigraph& g, std::optional<NodeId> s, std::optional<NodeId> t,
                                   std::uint32_t cap) {
  for (std::uint32_t size = 0; size <= cap; ++size) {
    bool found = false;
    for_each_subset(g.edge_count(), size, [&](const std::vector<std::uint32_t>& idx) {
      std::vector<EdgeId> removed(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) removed[i] = idx[i] + 1;
      found = disconnects(g, removed, s, t);
      return !found;
    });
    if (found) return size;
  }
  return cap + 1;
}

}  // namespace ftcut
