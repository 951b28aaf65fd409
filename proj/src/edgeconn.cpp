#include "ftcut/edgeconn.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

#include "ftcut/derand.hpp"
#include "ftcut/mincut.hpp"
#include "ftcut/oracle.hpp"
#include "ftcut/random.hpp"
#include "json.hpp"

namespace ftcut {

namespace {

enum Tag : std::uint8_t {
  kShift = 60,
  kSpan,
  kPathItem,
  kCycleItem,
};

constexpr std::uint64_t kShiftStream = 0x73686966ULL;

// ---- exponential-shift clustering ------------------------------------------------

/// Every node adopts the center c maximizing delta_c - dist(u, c) (ties to the
/// lower id). delta is a shared-seed value, so a message only names (c, dist).
class ShiftProtocol final : public Protocol {
 public:
  ShiftProtocol(const SubgraphSelector& sel, const std::vector<double>& delta) : sel_(sel), delta_(delta) {
    center_.resize(delta.size());
    dist_.assign(delta.size(), 0);
    for (NodeId v = 0; v < delta.size(); ++v) center_[v] = v;
  }

  void start(NodeContext& ctx) override {
    if (sel_.keeps_vertex(ctx.id())) announce(ctx);
  }

  void receive(NodeContext& ctx, std::span<const Envelope> inbox) override {
    const NodeId v = ctx.id();
    bool changed = false;
    for (const auto& env : inbox) {
      if (env.msg.tag != kShift) continue;
      const auto c = static_cast<NodeId>(env.msg[0]);
      const auto d = static_cast<std::uint32_t>(env.msg[1]) + 1;
      if (better(c, d, center_[v], dist_[v])) {
        center_[v] = c;
        dist_[v] = d;
        changed = true;
      }
    }
    if (changed) announce(ctx);
  }

  const std::vector<NodeId>& center() const { return center_; }
  const std::vector<std::uint32_t>& dist() const { return dist_; }

 private:
  bool better(NodeId c, std::uint32_t d, NodeId c0, std::uint32_t d0) const {
    const double a = delta_[c] - d;
    const double b = delta_[c0] - d0;
    return a != b ? a > b : c < c0;
  }
  void announce(NodeContext& ctx) {
    const Message msg(kShift, {center_[ctx.id()], dist_[ctx.id()]});
    for (const auto& inc : ctx.incident())
      if (sel_.keeps_edge(ctx.graph().edge(inc.edge))) ctx.send(inc.edge, msg);
  }

  const SubgraphSelector& sel_;
  const std::vector<double>& delta_;
  std::vector<NodeId> center_;
  std::vector<std::uint32_t> dist_;
};

/// After k rounds each node knows the smallest and largest center id within
/// k hops, so it can tell whether its k-ball sits inside its own cluster.
class SpanProtocol final : public Protocol {
 public:
  SpanProtocol(const SubgraphSelector& sel, const std::vector<NodeId>& center, std::uint32_t k)
      : sel_(sel), k_(k), lo_(center), hi_(center) {}

  void start(NodeContext& ctx) override {
    if (k_ > 0 && sel_.keeps_vertex(ctx.id())) announce(ctx);
  }

  void receive(NodeContext& ctx, std::span<const Envelope> inbox) override {
    const NodeId v = ctx.id();
    bool changed = false;
    for (const auto& env : inbox) {
      if (env.msg.tag != kSpan) continue;
      const auto lo = static_cast<NodeId>(env.msg[0]);
      const auto hi = static_cast<NodeId>(env.msg[1]);
      if (lo < lo_[v]) lo_[v] = lo, changed = true;
      if (hi > hi_[v]) hi_[v] = hi, changed = true;
    }
    if (changed && ctx.round() < k_) announce(ctx);
  }

  bool uniform(NodeId v) const { return lo_[v] == hi_[v]; }

 private:
  void announce(NodeContext& ctx) {
    const Message msg(kSpan, {lo_[ctx.id()], hi_[ctx.id()]});
    for (const auto& inc : ctx.incident())
      if (sel_.keeps_edge(ctx.graph().edge(inc.edge))) ctx.send(inc.edge, msg);
  }

  const SubgraphSelector& sel_;
  std::uint32_t k_;
  std::vector<NodeId> lo_;
  std::vector<NodeId> hi_;
};

/// Greedy grouping of clusters into vertex-disjoint batches.
std::vector<std::vector<std::uint32_t>> disjoint_batches(const std::vector<CoverCluster>& clusters,
                                                         const std::vector<std::uint32_t>& ids, std::size_t n) {
  std::vector<std::vector<std::uint32_t>> batches;
  std::vector<std::vector<bool>> used;
  for (auto id : ids) {
    std::size_t b = 0;
    for (; b < batches.size(); ++b) {
      const bool clash = std::any_of(clusters[id].members.begin(), clusters[id].members.end(),
                                     [&](NodeId v) { return used[b][v]; });
      if (!clash) break;
    }
    if (b == batches.size()) {
      batches.emplace_back();
      used.emplace_back(n, false);
    }
    batches[b].push_back(id);
    for (NodeId v : clusters[id].members) used[b][v] = true;
  }
  return batches;
}

CoverCluster ball_cluster(Simulator& sim, const SubgraphSelector& sel, NodeId center, std::uint32_t k,
                          std::uint64_t& rounds) {
  const auto bfs = truncated_bfs(sim, sel, center, k);
  rounds += bfs.rounds;
  CoverCluster c;
  c.center = center;
  for (NodeId v = 0; v < bfs.tree.reached.size(); ++v)
    if (bfs.tree.reached[v]) c.members.push_back(v);
  c.radius = bfs.tree.max_depth();
  return c;
}

}  // namespace

NeighborhoodCover neighborhood_cover(Simulator& sim, const SubgraphSelector& sel, std::uint32_t k, CoverMode mode,
                                     std::uint64_t seed) {
  if (k == 0) throw Error("neighborhood cover needs k >= 1");
  const Multigraph& g = sim.graph();
  const std::size_t n = g.node_count();
  NeighborhoodCover cover;
  cover.k = k;
  cover.mode = mode == CoverMode::randomized ? "randomized" : "deterministic";
  if (n == 0) return cover;

  std::vector<std::uint32_t> fresh;
  if (sel.selects_everything() && k >= diameter(g) && is_connected(g)) {
    // Every k-ball is the whole graph.
    CoverCluster c = ball_cluster(sim, sel, 0, static_cast<std::uint32_t>(n), cover.rounds);
    cover.clusters.push_back(std::move(c));
    fresh.push_back(0);
  } else if (mode == CoverMode::randomized) {
    cover.repetitions = static_cast<std::uint32_t>(std::max(1.0, std::ceil(2.0 * std::log(static_cast<double>(n)))));
    std::vector<bool> covered(n, false);
    for (NodeId v = 0; v < n; ++v) covered[v] = !sel.keeps_vertex(v);
    std::vector<double> delta(n);
    for (std::uint32_t rep = 0; rep < cover.repetitions; ++rep) {
      for (NodeId v = 0; v < n; ++v)
        delta[v] = -std::log(1.0 - hash_unit(seed, mix64(kShiftStream, rep), v)) * 2.0 * k;
      ShiftProtocol shift(sel, delta);
      cover.rounds += sim.run(shift).rounds;
      SpanProtocol span(sel, shift.center(), k);
      cover.rounds += sim.run(span).rounds;

      std::map<NodeId, CoverCluster> parts;
      for (NodeId v = 0; v < n; ++v) {
        if (!sel.keeps_vertex(v)) continue;
        auto& part = parts[shift.center()[v]];
        part.center = shift.center()[v];
        part.members.push_back(v);
        part.radius = std::max(part.radius, shift.dist()[v]);
      }
      std::vector<std::uint32_t> this_rep;
      for (auto& [center, part] : parts) {
        bool useful = false;
        for (NodeId v : part.members) {
          if (span.uniform(v) && !covered[v]) {
            covered[v] = true;
            useful = true;
          }
        }
        if (!useful) continue;
        part.id = static_cast<std::uint32_t>(cover.clusters.size());
        this_rep.push_back(part.id);
        cover.clusters.push_back(std::move(part));
      }
      if (!this_rep.empty()) cover.batches.push_back(std::move(this_rep));
    }
    for (NodeId v = 0; v < n; ++v) {
      if (covered[v]) continue;
      CoverCluster c = ball_cluster(sim, sel, v, k, cover.rounds);
      c.id = static_cast<std::uint32_t>(cover.clusters.size());
      fresh.push_back(c.id);
      cover.clusters.push_back(std::move(c));
      ++cover.fallback_clusters;
    }
  } else {
    std::vector<CoverCluster> balls;
    for (NodeId v = 0; v < n; ++v)
      if (sel.keeps_vertex(v)) balls.push_back(ball_cluster(sim, sel, v, k, cover.rounds));
    std::stable_sort(balls.begin(), balls.end(),
                     [](const CoverCluster& a, const CoverCluster& b) { return a.members.size() > b.members.size(); });
    std::vector<std::vector<bool>> kept_sets;
    for (auto& ball : balls) {
      const bool contained = std::any_of(kept_sets.begin(), kept_sets.end(), [&](const std::vector<bool>& set) {
        return std::all_of(ball.members.begin(), ball.members.end(), [&](NodeId v) { return bool(set[v]); });
      });
      if (contained) continue;
      std::vector<bool> set(n, false);
      for (NodeId v : ball.members) set[v] = true;
      kept_sets.push_back(std::move(set));
      ball.id = static_cast<std::uint32_t>(cover.clusters.size());
      fresh.push_back(ball.id);
      cover.clusters.push_back(std::move(ball));
    }
  }
  for (auto& batch : disjoint_batches(cover.clusters, fresh, n)) cover.batches.push_back(std::move(batch));

  std::vector<std::uint32_t> overlap(n, 0);
  for (const auto& c : cover.clusters) {
    cover.max_radius = std::max(cover.max_radius, c.radius);
    for (NodeId v : c.members) cover.max_overlap = std::max(cover.max_overlap, ++overlap[v]);
  }
  return cover;
}

CoverAudit audit_cover(const Multigraph& g, const SubgraphSelector& sel, const NeighborhoodCover& cover) {
  CoverAudit audit;
  const std::size_t n = g.node_count();
  std::vector<bool> kept_edge(g.edge_count() + 1, false);
  std::vector<EdgeId> dropped;
  for (const Edge& e : g.edges()) {
    kept_edge[e.id] = sel.keeps_edge(e);
    if (!kept_edge[e.id]) dropped.push_back(e.id);
  }
  std::vector<NodeId> dead;
  for (NodeId v = 0; v < n; ++v)
    if (!sel.keeps_vertex(v)) dead.push_back(v);
  FaultSet edge_faults = FaultSet::of_edges(dropped);
  std::vector<std::vector<bool>> member(cover.clusters.size(), std::vector<bool>(n, false));
  for (std::size_t c = 0; c < cover.clusters.size(); ++c)
    for (NodeId v : cover.clusters[c].members) member[c][v] = true;

  for (NodeId v = 0; v < n; ++v) {
    if (!sel.keeps_vertex(v)) continue;
    const auto dist = bfs_distances(g, v, edge_faults);
    bool ok = false;
    for (std::size_t c = 0; c < cover.clusters.size() && !ok; ++c) {
      ok = true;
      for (NodeId x = 0; x < n && ok; ++x)
        if (dist[x] <= cover.k && !member[c][x]) ok = false;
    }
    if (!ok) ++audit.uncovered_balls;
  }
  for (std::size_t c = 0; c < cover.clusters.size(); ++c) {
    const auto& cl = cover.clusters[c];
    std::vector<bool> seen(n, false);
    std::deque<NodeId> queue{cl.center};
    seen[cl.center] = true;
    std::size_t count = 0;
    while (!queue.empty()) {
      const NodeId x = queue.front();
      queue.pop_front();
      ++count;
      for (const auto& inc : g.incident(x)) {
        if (!kept_edge[inc.edge] || !member[c][inc.neighbor] || seen[inc.neighbor]) continue;
        seen[inc.neighbor] = true;
        queue.push_back(inc.neighbor);
      }
    }
    if (count != cl.members.size()) ++audit.disconnected_clusters;
  }
  return audit;
}

// ---- cycle cover ------------------------------------------------------------------

namespace {

/// The lower endpoint of every non-tree edge streams its root path (length
/// first) across that edge.
class PathExchange final : public Protocol {
 public:
  PathExchange(const Multigraph& g, const std::vector<EdgeId>& non_tree, const std::vector<std::vector<EdgeId>>& paths)
      : queues_(g.node_count()), received_(g.edge_count() + 1) {
    for (EdgeId id : non_tree) {
      const Edge& e = g.edge(id);
      const NodeId low = std::min(e.u, e.v);
      std::deque<std::uint64_t> q{paths[low].size()};
      q.insert(q.end(), paths[low].begin(), paths[low].end());
      queues_[low].emplace_back(id, std::move(q));
    }
  }
  void start(NodeContext& ctx) override { flush(ctx); }
  void receive(NodeContext& ctx, std::span<const Envelope> inbox) override {
    for (const auto& env : inbox)
      if (env.msg.tag == kPathItem) received_[env.edge].push_back(static_cast<EdgeId>(env.msg[0]));
    flush(ctx);
  }
  bool pending(NodeId v) const override {
    return std::any_of(queues_[v].begin(), queues_[v].end(), [](const auto& q) { return !q.second.empty(); });
  }
  /// Path of the lower endpoint, as learned by the higher one.
  std::vector<EdgeId> path_across(EdgeId e) const {
    const auto& items = received_[e];
    if (items.empty() || items.size() != items.front() + 1) throw Error("path exchange incomplete");
    return {items.begin() + 1, items.end()};
  }

 private:
  void flush(NodeContext& ctx) {
    for (auto& [edge, q] : queues_[ctx.id()]) {
      if (q.empty()) continue;
      ctx.send(edge, Message(kPathItem, {q.front()}));
      q.pop_front();
    }
  }
  std::vector<std::vector<std::pair<EdgeId, std::deque<std::uint64_t>>>> queues_;
  std::vector<std::vector<EdgeId>> received_;
};

/// Streams every cycle around itself so all of its nodes learn it. A stream is
/// the cycle length followed by its edges in walk order; it is multiplexed on
/// each directed edge under a channel number chosen by the sender. A node
/// forwards a stream once it has seen its own outgoing cycle edge; the last
/// node before the origin does not forward.
class CycleStream final : public Protocol {
 public:
  CycleStream(const Multigraph& g, const std::vector<std::vector<EdgeId>>& cycles,
              const std::vector<NodeId>& origins)
      : g_(g), nodes_(g.node_count()) {
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      auto& node = nodes_[origins[c]];
      std::vector<std::uint64_t> items{cycles[c].size()};
      items.insert(items.end(), cycles[c].begin(), cycles[c].end());
      const EdgeId out = cycles[c].front();
      const std::uint32_t channel = node.next_channel[out]++;
      for (auto item : items) node.out[out].emplace_back(channel, item);
      node.learned.push_back(cycles[c]);
    }
  }

  void start(NodeContext& ctx) override { flush(ctx); }

  void receive(NodeContext& ctx, std::span<const Envelope> inbox) override {
    auto& node = nodes_[ctx.id()];
    for (const auto& env : inbox) {
      if (env.msg.tag != kCycleItem) continue;
      const auto key = std::make_pair(env.edge, static_cast<std::uint32_t>(env.msg[0]));
      auto& st = node.streams[key];
      st.raw.push_back(env.msg[1]);
      if (st.raw.size() > 1 && st.out == kNoEdge) {
        const auto item = static_cast<EdgeId>(env.msg[1]);
        const Edge& e = g_.edge(item);
        if (item != env.edge && (e.u == ctx.id() || e.v == ctx.id())) {
          st.out = item;
          st.last = st.raw.size() - 1 == st.raw.front();
          if (!st.last) st.channel = node.next_channel[item]++;
        }
      }
      if (st.out != kNoEdge && !st.last) {
        for (; st.forwarded < st.raw.size(); ++st.forwarded) node.out[st.out].emplace_back(st.channel, st.raw[st.forwarded]);
      }
      if (st.raw.size() == st.raw.front() + 1) node.learned.emplace_back(st.raw.begin() + 1, st.raw.end());
    }
    flush(ctx);
  }

  bool pending(NodeId v) const override {
    for (const auto& [edge, q] : nodes_[v].out)
      if (!q.empty()) return true;
    return false;
  }

  const std::vector<std::vector<EdgeId>>& learned(NodeId v) const { return nodes_[v].learned; }

 private:
  struct Stream {
    std::vector<std::uint64_t> raw;
    EdgeId out = kNoEdge;
    std::uint32_t channel = 0;
    bool last = false;
    std::size_t forwarded = 0;
  };
  struct NodeState {
    std::map<std::pair<EdgeId, std::uint32_t>, Stream> streams;
    std::map<EdgeId, std::deque<std::pair<std::uint32_t, std::uint64_t>>> out;
    std::map<EdgeId, std::uint32_t> next_channel;
    std::vector<std::vector<EdgeId>> learned;
  };

  void flush(NodeContext& ctx) {
    for (auto& [edge, q] : nodes_[ctx.id()].out) {
      if (q.empty()) continue;
      ctx.send(edge, Message(kCycleItem, {q.front().first, q.front().second}));
      q.pop_front();
    }
  }

  const Multigraph& g_;
  std::vector<NodeState> nodes_;
};

}  // namespace

bool is_valid_cycle(const Multigraph& g, const std::vector<EdgeId>& cycle) {
  if (cycle.empty()) return false;
  std::vector<EdgeId> sorted(cycle);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (EdgeId e : cycle)
    if (e == kNoEdge || e > g.edge_count()) return false;
  // Walk from either endpoint of the first edge; one of them must close up.
  for (NodeId start : {g.edge(cycle.front()).u, g.edge(cycle.front()).v}) {
    NodeId x = start;
    bool ok = true;
    for (EdgeId id : cycle) {
      const Edge& e = g.edge(id);
      if (e.u != x && e.v != x) {
        ok = false;
        break;
      }
      x = e.other(x);
    }
    if (ok && x == start) return true;
  }
  return false;
}

CycleCover approx_cycle_cover(Simulator& sim, const SubgraphSelector& sel, std::uint32_t d_prime, CoverMode mode,
                              std::uint64_t seed, bool measure_stretch) {
  if (d_prime < 3) throw Error("cycle cover needs D' >= 3");
  const Multigraph& g = sim.graph();
  const std::size_t n = g.node_count();
  CycleCover out;
  out.d_prime = d_prime;
  out.by_edge.assign(g.edge_count() + 1, {});
  const std::uint64_t rounds_before = sim.totals().rounds;

  const NeighborhoodCover cover = neighborhood_cover(sim, sel, (d_prime + 1) / 2, mode, seed);
  out.clusters = static_cast<std::uint32_t>(cover.clusters.size());
  out.cover_radius = cover.max_radius;
  out.cover_overlap = cover.max_overlap;

  std::vector<std::vector<EdgeId>> learned_by_edge_check;
  for (const auto& batch : cover.batches) {
    std::vector<std::int64_t> cluster_of(n, -1);
    std::vector<NodeId> centers;
    for (auto id : batch) {
      for (NodeId v : cover.clusters[id].members) cluster_of[v] = id;
      centers.push_back(cover.clusters[id].center);
    }
    auto intra = std::make_shared<std::vector<bool>>(g.edge_count() + 1, false);
    for (const Edge& e : g.edges())
      (*intra)[e.id] = cluster_of[e.u] >= 0 && cluster_of[e.u] == cluster_of[e.v] && sel.keeps_edge(e);
    SubgraphSelector inside = sel;
    inside.restrict_edges(intra);
    const auto forest = truncated_bfs_forest(sim, inside, centers, static_cast<std::uint32_t>(n));
    const auto paths = collect_root_paths(sim, forest.tree);

    std::vector<EdgeId> non_tree;
    for (const Edge& e : g.edges()) {
      if (!(*intra)[e.id] || !forest.tree.reached[e.u] || !forest.tree.reached[e.v]) continue;
      if (forest.tree.parent_edge[e.u] == e.id || forest.tree.parent_edge[e.v] == e.id) continue;
      non_tree.push_back(e.id);
    }
    if (non_tree.empty()) continue;
    PathExchange exchange(g, non_tree, paths.paths);
    sim.run(exchange);

    std::vector<std::vector<EdgeId>> cycles;
    std::vector<NodeId> origins;
    for (EdgeId id : non_tree) {
      const Edge& e = g.edge(id);
      const NodeId high = std::max(e.u, e.v);
      const std::vector<EdgeId> pu = exchange.path_across(id);
      const std::vector<EdgeId>& pv = paths.paths[high];
      std::size_t common = 0;
      while (common < pu.size() && common < pv.size() && pu[common] == pv[common]) ++common;
      std::vector<EdgeId> cycle{id};
      cycle.insert(cycle.end(), pu.rbegin(), pu.rend() - static_cast<std::ptrdiff_t>(common));
      cycle.insert(cycle.end(), pv.begin() + static_cast<std::ptrdiff_t>(common), pv.end());
      cycles.push_back(std::move(cycle));
      origins.push_back(high);
    }
    CycleStream stream(g, cycles, origins);
    sim.run(stream);

    // Every node on a cycle must have learned it.
    for (const auto& cycle : cycles) {
      for (EdgeId id : cycle) {
        for (NodeId x : {g.edge(id).u, g.edge(id).v}) {
          const auto& known = stream.learned(x);
          if (std::find(known.begin(), known.end(), cycle) == known.end())
            throw Error("cycle stream did not reach node " + std::to_string(x));
        }
      }
      const auto index = static_cast<std::uint32_t>(out.cycles.size());
      for (EdgeId id : cycle) out.by_edge[id].push_back(index);
      out.max_length = std::max(out.max_length, static_cast<std::uint32_t>(cycle.size()));
      out.cycles.push_back(cycle);
    }
  }

  std::vector<EdgeId> dropped;
  for (const Edge& e : g.edges()) {
    if (!sel.keeps_edge(e)) {
      dropped.push_back(e.id);
      continue;
    }
    out.max_congestion = std::max(out.max_congestion, static_cast<std::uint32_t>(out.by_edge[e.id].size()));
    if (out.by_edge[e.id].empty()) out.uncovered.push_back(e.id);
  }
  if (measure_stretch) {
    for (const Edge& e : g.edges()) {
      if (!sel.keeps_edge(e) || out.by_edge[e.id].empty()) continue;
      std::vector<EdgeId> faults(dropped);
      faults.push_back(e.id);
      const std::uint32_t d = dist_under_faults(g, e.u, e.v, FaultSet::of_edges(faults));
      if (d == kUnreachable) continue;
      std::size_t best = SIZE_MAX;
      for (auto c : out.by_edge[e.id]) best = std::min(best, out.cycles[c].size());
      out.stretch = std::max(out.stretch, static_cast<double>(best) / (d + 1.0));
    }
  }
  out.rounds = sim.totals().rounds - rounds_before;
  return out;
}

// ---- all edge connectivities ---------------------------------------------------------

EdgeConnMap all_edge_connectivities(Simulator& sim, std::uint32_t lambda, const EdgeConnOptions& opt) {
  if (lambda == 0) throw Error("lambda must be at least 1");
  const Multigraph& g = sim.graph();
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();
  const std::uint64_t rounds_before = sim.totals().rounds;

  EdgeConnMap map;
  map.lambda = lambda;
  map.diameter = std::max<std::uint32_t>(1, diameter(g));
  map.d_prime = 2 * kDetour * lambda * map.diameter + 1;
  map.seed = opt.seed;
  map.lambda_e.assign(m + 1, 0);
  map.certificate.assign(m + 1, {});

  const double ln_n = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  std::function<SubgraphSelector(std::uint64_t)> selector;
  std::shared_ptr<UniversalFamily> family;
  std::shared_ptr<const std::vector<std::uint32_t>> renamed;
  if (opt.deterministic) {
    map.mode = "deterministic";
    map.preset = "universal";
    const Renaming renaming = rename_edges(sim);
    renamed = std::make_shared<const std::vector<std::uint32_t>>(renaming.new_id);
    family = std::make_shared<UniversalFamily>(
        UniversalFamily::build(std::max<std::size_t>(1, m), map.d_prime, lambda - 1));
    if (family->size() > opt.iteration_budget)
      throw Error("universal family has " + std::to_string(family->size()) +
                  " members, over the iteration budget of " + std::to_string(opt.iteration_budget));
    map.planned_iterations = family->size();
    selector = [family, renamed](std::uint64_t i) {
      return SubgraphSelector::universal_set(family->member(static_cast<std::size_t>(i)), renamed);
    };
  } else {
    map.mode = "randomized";
    double full = 0;
    if (opt.preset == SamplingPreset::conservative) {
      map.preset = "conservative";
      map.p = 1.0 - 1.0 / map.d_prime;
      full = std::ceil(std::pow(2.0 * kDetour * lambda * map.diameter, 2.0 * lambda) * ln_n);
    } else {
      map.preset = "lean";
      map.p = 1.0 - 1.0 / std::pow(static_cast<double>(map.d_prime), lambda);
      full = std::ceil(lambda * std::pow(static_cast<double>(map.diameter), lambda) * ln_n);
    }
    map.planned_iterations = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(std::min(full, 1e18) * opt.scale)));
    selector = [p = map.p, seed = opt.seed](std::uint64_t i) { return SubgraphSelector::random_edges(p, seed, i); };
  }
  if (opt.iterations) map.planned_iterations = *opt.iterations;

  const CoverMode cover_mode = opt.deterministic ? CoverMode::deterministic : CoverMode::randomized;
  std::vector<std::vector<bool>> in_cert(m + 1, std::vector<bool>(m + 1, false));
  for (EdgeId e = 1; e <= m; ++e) {
    in_cert[e][e] = true;
    map.certificate[e].push_back(e);
  }
  const std::uint64_t window = std::max<std::uint64_t>(1, map.planned_iterations / 10);
  std::uint64_t stall = 0;
  for (std::uint64_t i = 0; i < map.planned_iterations; ++i) {
    const SubgraphSelector sel = selector(i);
    const CycleCover cc = approx_cycle_cover(sim, sel, map.d_prime, cover_mode, mix64(opt.seed, i), false);
    map.max_congestion = std::max(map.max_congestion, cc.max_congestion);
    map.max_cycle_length = std::max(map.max_cycle_length, cc.max_length);
    map.max_cover_radius = std::max(map.max_cover_radius, cc.cover_radius);
    map.max_cover_overlap = std::max(map.max_cover_overlap, cc.cover_overlap);
    map.cycles += cc.cycles.size();
    bool gained = false;
    for (const auto& cycle : cc.cycles) {
      for (EdgeId e : cycle) {
        for (EdgeId f : cycle) {
          if (in_cert[e][f]) continue;
          in_cert[e][f] = true;
          map.certificate[e].push_back(f);
          gained = true;
        }
      }
    }
    ++map.iterations;
    stall = gained ? 0 : stall + 1;
    if (opt.early_exit && stall >= window) break;
  }
  map.max_length_ratio = static_cast<double>(map.max_cycle_length) / map.d_prime;
  for (EdgeId e = 1; e <= m; ++e) {
    std::sort(map.certificate[e].begin(), map.certificate[e].end());
    const Edge& edge = g.edge(e);
    map.lambda_e[e] = local_st_cut(g, map.certificate[e], edge.u, edge.v, lambda).value;
  }
  map.rounds = sim.totals().rounds - rounds_before;
  return map;
}

std::string edgeconn_csv(const Multigraph& g, const EdgeConnMap& map) {
  std::ostringstream out;
  out << "edge_id,u,v,lambda_e,certificate_edges\n";
  for (const Edge& e : g.edges()) {
    out << e.id << ',' << e.u << ',' << e.v << ',';
    if (map.lambda_e[e.id] > map.lambda)
      out << ">=" << map.lambda + 1;
    else
      out << map.lambda_e[e.id];
    out << ',' << map.certificate[e.id].size() << '\n';
  }
  return out.str();
}

std::string edgeconn_summary_json(const EdgeConnMap& map) {
  nlohmann::ordered_json j;
  j["mode"] = map.mode;
  j["preset"] = map.preset;
  j["lambda"] = map.lambda;
  j["diameter"] = map.diameter;
  j["d_prime"] = map.d_prime;
  j["p"] = map.p;
  j["seed"] = map.seed;
  j["planned_iterations"] = map.planned_iterations;
  j["iterations"] = map.iterations;
  j["cycles"] = map.cycles;
  j["max_congestion"] = map.max_congestion;
  j["max_cycle_length"] = map.max_cycle_length;
  j["max_length_over_d_prime"] = map.max_length_ratio;
  j["max_cover_radius"] = map.max_cover_radius;
  j["max_cover_overlap"] = map.max_cover_overlap;
  j["rounds"] = map.rounds;
  return j.dump();
}

}  // namespace ftcut
