#include "ftcut/primitives.hpp"

#include <algorithm>
#include <deque>

#include "ftcut/random.hpp"

namespace ftcut {

// ---- selectors --------------------------------------------------------------

namespace {
constexpr std::uint64_t kEdgeStream = 0x65646765ULL;
constexpr std::uint64_t kVertexStream = 0x76657274ULL;
}  // namespace

SubgraphSelector SubgraphSelector::all() { return {}; }

SubgraphSelector SubgraphSelector::random_edges(double p, std::uint64_t seed, std::uint64_t iteration) {
  SubgraphSelector s;
  s.mode_ = Mode::random_edges;
  s.p_ = p;
  s.seed_ = seed;
  s.iteration_ = iteration;
  return s;
}

SubgraphSelector SubgraphSelector::random_vertices(double p, std::uint64_t seed, std::uint64_t iteration,
                                                   std::vector<NodeId> always_kept) {
  SubgraphSelector s;
  s.mode_ = Mode::random_vertices;
  s.p_ = p;
  s.seed_ = seed;
  s.iteration_ = iteration;
  s.always_kept_ = std::move(always_kept);
  return s;
}

SubgraphSelector SubgraphSelector::universal_set(std::shared_ptr<const IndexSet> member,
                                                 std::shared_ptr<const std::vector<std::uint32_t>> renamed_ids) {
  if (!member || !renamed_ids) throw Error("universal-set selector needs a member and a renaming");
  SubgraphSelector s;
  s.mode_ = Mode::universal_set;
  s.member_ = std::move(member);
  s.renamed_ = std::move(renamed_ids);
  return s;
}

namespace {

std::shared_ptr<const std::vector<bool>> intersect(std::shared_ptr<const std::vector<bool>> a,
                                                   std::shared_ptr<const std::vector<bool>> b) {
  if (!a) return b;
  if (!b) return a;
  if (a->size() != b->size()) throw Error("selector masks of different sizes");
  auto both = std::make_shared<std::vector<bool>>(a->size());
  for (std::size_t i = 0; i < a->size(); ++i) (*both)[i] = (*a)[i] && (*b)[i];
  return both;
}

}  // namespace

SubgraphSelector& SubgraphSelector::restrict_edges(std::shared_ptr<const std::vector<bool>> allowed) {
  edge_mask_ = intersect(std::move(edge_mask_), std::move(allowed));
  return *this;
}

SubgraphSelector& SubgraphSelector::restrict_vertices(std::shared_ptr<const std::vector<bool>> allowed) {
  vertex_mask_ = intersect(std::move(vertex_mask_), std::move(allowed));
  return *this;
}

bool SubgraphSelector::keeps_vertex(NodeId v) const {
  if (vertex_mask_ && !(*vertex_mask_)[v]) return false;
  if (mode_ != Mode::random_vertices) return true;
  if (std::find(always_kept_.begin(), always_kept_.end(), v) != always_kept_.end()) return true;
  return hash_unit(seed_, mix64(kVertexStream, iteration_), v) < p_;
}

bool SubgraphSelector::keeps_edge(const Edge& e) const {
  if (edge_mask_ && !(*edge_mask_)[e.id]) return false;
  if (!keeps_vertex(e.u) || !keeps_vertex(e.v)) return false;
  switch (mode_) {
    case Mode::all:
    case Mode::random_vertices:
      return true;
    case Mode::random_edges:
      return hash_unit(seed_, mix64(kEdgeStream, iteration_), e.label) < p_;
    case Mode::universal_set:
      return member_->contains((*renamed_)[e.id] - 1ULL);
  }
  return false;
}

std::shared_ptr<const std::vector<bool>> edges_except(const Multigraph& g, const std::vector<EdgeId>& removed) {
  auto mask = std::make_shared<std::vector<bool>>(g.edge_count() + 1, true);
  (*mask)[kNoEdge] = false;
  for (EdgeId e : removed) mask->at(e) = false;
  return mask;
}

std::shared_ptr<const std::vector<bool>> vertices_except(const Multigraph& g, const std::vector<NodeId>& removed) {
  auto mask = std::make_shared<std::vector<bool>>(g.node_count(), true);
  for (NodeId v : removed) mask->at(v) = false;
  return mask;
}

// ---- BFS ----------------------------------------------------------------------

std::uint32_t BfsTree::max_depth() const noexcept {
  std::uint32_t best = 0;
  for (std::size_t v = 0; v < reached.size(); ++v)
    if (reached[v]) best = std::max(best, depth[v]);
  return best;
}

std::size_t BfsTree::reached_count() const noexcept {
  return static_cast<std::size_t>(std::count(reached.begin(), reached.end(), true));
}

namespace {

enum Tag : std::uint8_t {
  kJoin = 1,
  kAck,
  kPathItem,
  kFloodItem,
  kLeader,
  kCount,
  kOffset,
  kNewId,
  kCandidate,
};

class BfsProtocol final : public Protocol {
 public:
  BfsProtocol(const Multigraph& g, const SubgraphSelector& sel, const std::vector<NodeId>& roots, std::uint32_t cap)
      : sel_(sel) {
    const std::size_t n = g.node_count();
    tree_.roots = roots;
    tree_.depth_cap = cap;
    tree_.reached.assign(n, false);
    tree_.depth.assign(n, 0);
    tree_.parent_edge.assign(n, kNoEdge);
    tree_.children.assign(n, {});
    tree_.root_of.assign(n, kNoNode);
    is_root_.assign(n, false);
    for (NodeId r : roots) {
      if (r >= n) throw Error("bfs root out of range");
      if (!sel_.keeps_vertex(r)) throw Error("bfs root " + std::to_string(r) + " is not in the selected subgraph");
      is_root_[r] = true;
    }
  }

  void start(NodeContext& ctx) override {
    const NodeId v = ctx.id();
    if (!is_root_[v]) return;
    tree_.reached[v] = true;
    tree_.root_of[v] = v;
    if (tree_.depth_cap == 0) return;
    for (const auto& inc : ctx.incident())
      if (sel_.keeps_edge(ctx.graph().edge(inc.edge))) ctx.send(inc.edge, Message(kJoin, {0, v}));
  }

  void receive(NodeContext& ctx, std::span<const Envelope> inbox) override {
    const NodeId v = ctx.id();
    const Envelope* first_join = nullptr;
    for (const auto& env : inbox) {
      if (env.msg.tag == kAck) tree_.children[v].push_back(env.edge);
      if (env.msg.tag == kJoin && !first_join) first_join = &env;
    }
    if (tree_.reached[v] || !first_join) return;
    tree_.reached[v] = true;
    tree_.parent_edge[v] = first_join->edge;
    tree_.depth[v] = static_cast<std::uint32_t>(first_join->msg[0]) + 1;
    tree_.root_of[v] = static_cast<NodeId>(first_join->msg[1]);
    ctx.send(first_join->edge, Message(kAck, {}));
    if (tree_.depth[v] >= tree_.depth_cap) return;
    for (const auto& inc : ctx.incident()) {
      const bool heard = std::any_of(inbox.begin(), inbox.end(), [&](const Envelope& env) {
        return env.msg.tag == kJoin && env.edge == inc.edge;
      });
      if (heard || !sel_.keeps_edge(ctx.graph().edge(inc.edge))) continue;
      ctx.send(inc.edge, Message(kJoin, {tree_.depth[v], tree_.root_of[v]}));
    }
  }

  BfsTree take() {
    for (auto& c : tree_.children) std::sort(c.begin(), c.end());
    return std::move(tree_);
  }

 private:
  const SubgraphSelector& sel_;
  BfsTree tree_;
  std::vector<bool> is_root_;
};

}  // namespace

BfsRun truncated_bfs(Simulator& sim, const SubgraphSelector& sel, NodeId s, std::uint32_t depth_cap) {
  return truncated_bfs_forest(sim, sel, {s}, depth_cap);
}

BfsRun truncated_bfs_forest(Simulator& sim, const SubgraphSelector& sel, const std::vector<NodeId>& roots,
                            std::uint32_t depth_cap) {
  BfsProtocol proto(sim.graph(), sel, roots, depth_cap);
  const auto tr = sim.run(proto);
  return {proto.take(), tr.rounds};
}

// ---- root paths -----------------------------------------------------------------

namespace {

class RootPathProtocol final : public Protocol {
 public:
  explicit RootPathProtocol(const BfsTree& tree) : tree_(tree) {
    paths_.assign(tree.reached.size(), {});
    queue_.assign(tree.reached.size(), {});
  }

  void start(NodeContext& ctx) override {
    const NodeId v = ctx.id();
    if (tree_.reached[v] && tree_.depth[v] == 1) {
      paths_[v].push_back(tree_.parent_edge[v]);
      queue_[v].push_back(tree_.parent_edge[v]);
    }
    flush(ctx);
  }

  void receive(NodeContext& ctx, std::span<const Envelope> inbox) override {
    const NodeId v = ctx.id();
    for (const auto& env : inbox) {
      if (env.msg.tag != kPathItem || env.edge != tree_.parent_edge[v]) continue;
      const auto item = static_cast<EdgeId>(env.msg[0]);
      paths_[v].push_back(item);
      queue_[v].push_back(item);
      if (paths_[v].size() + 1 == tree_.depth[v]) {
        paths_[v].push_back(tree_.parent_edge[v]);
        queue_[v].push_back(tree_.parent_edge[v]);
      }
    }
    flush(ctx);
  }

  bool pending(NodeId v) const override { return !queue_[v].empty() && !tree_.children[v].empty(); }

  std::vector<std::vector<EdgeId>> take() { return std::move(paths_); }

 private:
  void flush(NodeContext& ctx) {
    auto& q = queue_[ctx.id()];
    if (q.empty()) return;
    const auto& kids = tree_.children[ctx.id()];
    if (kids.empty()) {
      q.clear();
      return;
    }
    const Message msg(kPathItem, {q.front()});
    for (EdgeId c : kids) ctx.send(c, msg);
    q.pop_front();
  }

  const BfsTree& tree_;
  std::vector<std::vector<EdgeId>> paths_;
  std::vector<std::deque<EdgeId>> queue_;
};

}  // namespace

RootPaths collect_root_paths(Simulator& sim, const BfsTree& tree) {
  if (tree.reached.size() != sim.graph().node_count()) throw Error("tree does not match the simulated graph");
  RootPathProtocol proto(tree);
  const auto tr = sim.run(proto);
  return {proto.take(), tr.rounds};
}

// ---- broadcast ------------------------------------------------------------------

namespace {

class FloodProtocol final : public Protocol {
 public:
  FloodProtocol(std::size_t n, NodeId source, const std::vector<std::uint64_t>& payload)
      : source_(source), payload_(payload) {
    have_.assign(n, std::vector<bool>(payload.size(), false));
    values_.assign(n, std::vector<std::uint64_t>(payload.size(), 0));
    queue_.assign(n, {});
  }

  void start(NodeContext& ctx) override {
    if (ctx.id() != source_) return;
    for (std::size_t i = 0; i < payload_.size(); ++i) {
      have_[source_][i] = true;
      values_[source_][i] = payload_[i];
      queue_[source_].push_back({i, kNoEdge});
    }
    flush(ctx);
  }

  void receive(NodeContext& ctx, std::span<const Envelope> inbox) override {
    const NodeId v = ctx.id();
    for (const auto& env : inbox) {
      if (env.msg.tag != kFloodItem) continue;
      const auto seq = static_cast<std::size_t>(env.msg[0]);
      if (seq >= payload_.size() || have_[v][seq]) continue;
      have_[v][seq] = true;
      values_[v][seq] = env.msg[1];
      queue_[v].push_back({seq, env.edge});
    }
    flush(ctx);
  }

  bool pending(NodeId v) const override { return !queue_[v].empty(); }

  std::vector<std::vector<std::uint64_t>> take() {
    std::vector<std::vector<std::uint64_t>> out(values_.size());
    for (std::size_t v = 0; v < values_.size(); ++v)
      for (std::size_t i = 0; i < payload_.size(); ++i)
        if (have_[v][i]) out[v].push_back(values_[v][i]);
    return out;
  }

 private:
  struct Item {
    std::size_t seq;
    EdgeId from;
  };

  void flush(NodeContext& ctx) {
    auto& q = queue_[ctx.id()];
    if (q.empty()) return;
    const Item item = q.front();
    q.pop_front();
    const Message msg(kFloodItem, {item.seq, values_[ctx.id()][item.seq]});
    for (const auto& inc : ctx.incident())
      if (inc.edge != item.from) ctx.send(inc.edge, msg);
  }

  NodeId source_;
  const std::vector<std::uint64_t>& payload_;
  std::vector<std::vector<bool>> have_;
  std::vector<std::vector<std::uint64_t>> values_;
  std::vector<std::deque<Item>> queue_;
};

}  // namespace

BroadcastRun broadcast(Simulator& sim, NodeId source, const std::vector<std::uint64_t>& payload) {
  if (source >= sim.graph().node_count()) throw Error("broadcast source out of range");
  FloodProtocol proto(sim.graph().node_count(), source, payload);
  const auto tr = sim.run(proto);
  return {proto.take(), tr.rounds};
}

// ---- convergecast ---------------------------------------------------------------

namespace {

/// Generic upward aggregation: a node reports to its parent once every child
/// has reported.
class ConvergecastProtocol final : public Protocol {
 public:
  ConvergecastProtocol(const BfsTree& tree, const std::vector<std::optional<Candidate>>& values)
      : tree_(tree), best_(values) {
    waiting_.resize(tree.reached.size());
    for (std::size_t v = 0; v < waiting_.size(); ++v) waiting_[v] = tree.children[v].size();
    done_.assign(tree.reached.size(), false);
  }

  void start(NodeContext& ctx) override { maybe_report(ctx); }

  void receive(NodeContext& ctx, std::span<const Envelope> inbox) override {
    const NodeId v = ctx.id();
    for (const auto& env : inbox) {
      if (env.msg.tag != kCandidate) continue;
      --waiting_[v];
      if (env.msg[0] != 0) {
        const Candidate c{env.msg[1], static_cast<NodeId>(env.msg[2])};
        if (!best_[v] || c < *best_[v]) best_[v] = c;
      }
    }
    maybe_report(ctx);
  }

  std::optional<Candidate> result(NodeId root) const { return best_[root]; }

 private:
  void maybe_report(NodeContext& ctx) {
    const NodeId v = ctx.id();
    if (done_[v] || !tree_.reached[v] || waiting_[v] != 0) return;
    done_[v] = true;
    if (tree_.parent_edge[v] == kNoEdge) return;
    const auto& b = best_[v];
    ctx.send(tree_.parent_edge[v], b ? Message(kCandidate, {1, b->value, b->owner}) : Message(kCandidate, {0}));
  }

  const BfsTree& tree_;
  std::vector<std::optional<Candidate>> best_;
  std::vector<std::size_t> waiting_;
  std::vector<bool> done_;
};

}  // namespace

ConvergecastRun convergecast_min(Simulator& sim, const BfsTree& tree,
                                 const std::vector<std::optional<Candidate>>& values) {
  if (tree.roots.size() != 1) throw Error("convergecast needs a single-root tree");
  if (values.size() != tree.reached.size()) throw Error("one candidate slot per node expected");
  ConvergecastProtocol proto(tree, values);
  const auto tr = sim.run(proto);
  return {proto.result(tree.roots.front()), tr.rounds};
}

// ---- renaming ----------------------------------------------------------------------

namespace {

class LeaderProtocol final : public Protocol {
 public:
  explicit LeaderProtocol(std::size_t n) : best_(n) {
    for (NodeId v = 0; v < n; ++v) best_[v] = v;
  }
  void start(NodeContext& ctx) override { announce(ctx, kNoEdge); }
  void receive(NodeContext& ctx, std::span<const Envelope> inbox) override {
    const NodeId v = ctx.id();
    const NodeId before = best_[v];
    for (const auto& env : inbox)
      if (env.msg.tag == kLeader) best_[v] = std::min<NodeId>(best_[v], static_cast<NodeId>(env.msg[0]));
    if (best_[v] != before) announce(ctx, kNoEdge);
  }
  const std::vector<NodeId>& leaders() const { return best_; }

 private:
  void announce(NodeContext& ctx, EdgeId skip) {
    for (const auto& inc : ctx.incident())
      if (inc.edge != skip) ctx.send(inc.edge, Message(kLeader, {best_[ctx.id()]}));
  }
  std::vector<NodeId> best_;
};

// Owned edges: those whose other endpoint has a larger id. Ordered by label.
std::vector<EdgeId> owned_edges(const Multigraph& g, NodeId v) {
  std::vector<EdgeId> own;
  for (const auto& inc : g.incident(v))
    if (inc.neighbor > v) own.push_back(inc.edge);
  std::sort(own.begin(), own.end(), [&g](EdgeId a, EdgeId b) { return g.edge(a).label < g.edge(b).label; });
  return own;
}

class SubtreeCountProtocol final : public Protocol {
 public:
  SubtreeCountProtocol(const Multigraph& g, const BfsTree& tree) : tree_(tree) {
    const std::size_t n = g.node_count();
    total_.resize(n);
    for (NodeId v = 0; v < n; ++v) total_[v] = owned_edges(g, v).size();
    child_count_.assign(n, {});
    waiting_.resize(n);
    for (NodeId v = 0; v < n; ++v) waiting_[v] = tree.children[v].size();
    done_.assign(n, false);
  }
  void start(NodeContext& ctx) override { maybe_report(ctx); }
  void receive(NodeContext& ctx, std::span<const Envelope> inbox) override {
    const NodeId v = ctx.id();
    for (const auto& env : inbox) {
      if (env.msg.tag != kCount) continue;
      child_count_[v].emplace_back(env.edge, env.msg[0]);
      total_[v] += env.msg[0];
      --waiting_[v];
    }
    maybe_report(ctx);
  }
  std::vector<std::vector<std::pair<EdgeId, std::uint64_t>>> take() {
    for (auto& c : child_count_) std::sort(c.begin(), c.end());
    return std::move(child_count_);
  }

 private:
  void maybe_report(NodeContext& ctx) {
    const NodeId v = ctx.id();
    if (done_[v] || waiting_[v] != 0) return;
    done_[v] = true;
    if (tree_.parent_edge[v] != kNoEdge) ctx.send(tree_.parent_edge[v], Message(kCount, {total_[v]}));
  }
  const BfsTree& tree_;
  std::vector<std::uint64_t> total_;
  std::vector<std::vector<std::pair<EdgeId, std::uint64_t>>> child_count_;
  std::vector<std::size_t> waiting_;
  std::vector<bool> done_;
};

class OffsetProtocol final : public Protocol {
 public:
  OffsetProtocol(const Multigraph& g, const BfsTree& tree,
                 std::vector<std::vector<std::pair<EdgeId, std::uint64_t>>> child_counts)
      : g_(g), tree_(tree), child_counts_(std::move(child_counts)) {
    new_id_.assign(g.edge_count() + 1, 0);
    phase_.assign(g.node_count(), Phase::waiting);
  }

  void start(NodeContext& ctx) override {
    const NodeId v = ctx.id();
    if (tree_.parent_edge[v] != kNoEdge) return;
    const std::uint64_t base = v == 0 ? 0 : static_cast<std::uint64_t>(v) * g_.edge_count();
    assign(ctx, base);
  }

  void receive(NodeContext& ctx, std::span<const Envelope> inbox) override {
    const NodeId v = ctx.id();
    if (phase_[v] == Phase::informing) {
      // Tell the other endpoint of every owned edge its new id, one round
      // after the offset downcast so the two never share an edge.
      for (EdgeId e : owned_edges(g_, v)) ctx.send(e, Message(kNewId, {new_id_[e]}));
      phase_[v] = Phase::done;
    }
    for (const auto& env : inbox) {
      if (env.msg.tag == kOffset && phase_[v] == Phase::waiting) assign(ctx, env.msg[0]);
      if (env.msg.tag == kNewId) new_id_[env.edge] = static_cast<std::uint32_t>(env.msg[0]);
    }
  }

  bool pending(NodeId v) const override { return phase_[v] == Phase::informing; }

  std::vector<std::uint32_t> take() { return std::move(new_id_); }

 private:
  enum class Phase { waiting, informing, done };

  void assign(NodeContext& ctx, std::uint64_t offset) {
    const NodeId v = ctx.id();
    std::uint64_t next = offset;
    for (EdgeId e : owned_edges(g_, v)) new_id_[e] = static_cast<std::uint32_t>(++next);
    for (const auto& [edge, count] : child_counts_[v]) {
      ctx.send(edge, Message(kOffset, {next}));
      next += count;
    }
    phase_[v] = Phase::informing;
  }

  const Multigraph& g_;
  const BfsTree& tree_;
  std::vector<std::vector<std::pair<EdgeId, std::uint64_t>>> child_counts_;
  std::vector<std::uint32_t> new_id_;
  std::vector<Phase> phase_;
};

}  // namespace

Renaming rename_edges(Simulator& sim) {
  const Multigraph& g = sim.graph();
  Renaming out;
  LeaderProtocol leader(g.node_count());
  out.rounds += sim.run(leader).rounds;
  std::vector<NodeId> roots;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (leader.leaders()[v] == v) roots.push_back(v);
  out.disconnected = roots.size() > 1;
  auto bfs = truncated_bfs_forest(sim, SubgraphSelector::all(), roots, static_cast<std::uint32_t>(g.node_count()));
  out.rounds += bfs.rounds;
  SubtreeCountProtocol counts(g, bfs.tree);
  out.rounds += sim.run(counts).rounds;
  OffsetProtocol offsets(g, bfs.tree, counts.take());
  out.rounds += sim.run(offsets).rounds;
  out.new_id = offsets.take();
  return out;
}

}  // namespace ftcut
