#include "ftcut/mincut.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "ftcut/oracle.hpp"
#include "ftcut/random.hpp"

namespace ftcut {

// ---- verification -----------------------------------------------------------

namespace {

constexpr std::uint8_t kCutFlag = 40;

/// Endpoints of every cut edge tell each other whether they were reached.
class ExchangeProtocol final : public Protocol {
 public:
  ExchangeProtocol(const std::vector<bool>& in_cut, const BfsTree& tree) : in_cut_(in_cut), tree_(tree) {}
  void start(NodeContext& ctx) override {
    for (const auto& inc : ctx.incident())
      if (in_cut_[inc.edge]) ctx.send(inc.edge, Message(kCutFlag, {tree_.reached[ctx.id()] ? 1u : 0u}));
  }
  void receive(NodeContext&, std::span<const Envelope>) override {}

 private:
  const std::vector<bool>& in_cut_;
  const BfsTree& tree_;
};

std::uint32_t safe_diameter(std::uint32_t d) { return std::max<std::uint32_t>(1, d); }

std::uint64_t saturating_pow(double base, double exponent) {
  const double v = std::pow(base, exponent);
  return v >= 1e18 ? static_cast<std::uint64_t>(1e18) : static_cast<std::uint64_t>(v);
}

}  // namespace

VerifyResult verify_cut(Simulator& sim, const std::vector<EdgeId>& cut, std::uint32_t lambda,
                        std::uint32_t diameter) {
  const Multigraph& g = sim.graph();
  if (cut.size() > lambda) throw Error("verify_cut: more than lambda edges");
  std::vector<bool> in_cut(g.edge_count() + 1, false);
  for (EdgeId e : cut) {
    if (e == kNoEdge || e > g.edge_count()) throw Error("verify_cut: edge " + std::to_string(e) + " not in graph");
    in_cut[e] = true;
  }
  VerifyResult out;
  out.depth_cap = kDetour * lambda * safe_diameter(diameter);
  auto sel = SubgraphSelector::all();
  sel.restrict_edges(edges_except(g, cut));
  const auto bfs = truncated_bfs(sim, sel, 0, out.depth_cap);
  ExchangeProtocol exchange(in_cut, bfs.tree);
  out.rounds = bfs.rounds + sim.run(exchange).rounds;
  out.is_cut = !bfs.tree.spans();
  return out;
}

VerifyResult verify_cut(Simulator& sim, const std::vector<EdgeId>& cut, std::uint32_t lambda) {
  return verify_cut(sim, cut, lambda, diameter(sim.graph()));
}

VerifyResult verify_vertex_cut(Simulator& sim, const std::vector<NodeId>& cut, std::uint32_t lambda,
                               std::uint32_t diameter) {
  const Multigraph& g = sim.graph();
  if (cut.size() > lambda) throw Error("verify_vertex_cut: more than lambda vertices");
  std::vector<bool> removed(g.node_count(), false);
  for (NodeId v : cut) removed.at(v) = true;
  VerifyResult out;
  out.depth_cap = kDetour * lambda * static_cast<std::uint32_t>(g.max_degree()) * safe_diameter(diameter);
  NodeId root = 0;
  while (root < g.node_count() && removed[root]) ++root;
  if (root == g.node_count()) return out;
  auto sel = SubgraphSelector::all();
  sel.restrict_vertices(vertices_except(g, cut));
  const auto bfs = truncated_bfs(sim, sel, root, out.depth_cap);
  out.rounds = bfs.rounds;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (!removed[v] && !bfs.tree.reached[v]) out.is_cut = true;
  return out;
}

// ---- plans ------------------------------------------------------------------

IterationPlan edge_plan(std::uint32_t lambda, std::uint32_t diameter, std::size_t n, double scale) {
  if (lambda == 0) throw Error("lambda must be at least 1");
  IterationPlan plan;
  plan.depth_cap = kDetour * lambda * safe_diameter(diameter);
  plan.p = 1.0 - 1.0 / plan.depth_cap;
  const double full = std::ceil(static_cast<double>(saturating_pow(plan.depth_cap, 2.0 * lambda)) *
                                std::log(static_cast<double>(std::max<std::size_t>(n, 2))));
  plan.iterations = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(full * scale)));
  return plan;
}

IterationPlan vertex_plan(std::uint32_t lambda, std::uint32_t diameter, std::size_t max_degree, std::size_t n,
                          double scale) {
  if (lambda == 0) throw Error("lambda must be at least 1");
  IterationPlan plan;
  plan.depth_cap = kDetour * lambda * static_cast<std::uint32_t>(std::max<std::size_t>(1, max_degree)) *
                   safe_diameter(diameter);
  plan.p = 1.0 - 1.0 / plan.depth_cap;
  const double full = std::ceil(static_cast<double>(saturating_pow(plan.depth_cap, 2.0 * lambda)) *
                                std::log(static_cast<double>(std::max<std::size_t>(n, 2))));
  plan.iterations = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(full * scale)));
  return plan;
}

// ---- local computations -------------------------------------------------------

namespace {

struct LocalGraph {
  std::vector<std::vector<Incidence>> adj;  // ascending edge id
  std::vector<EdgeId> edges;                // sorted, distinct
};

LocalGraph local_graph(const Multigraph& g, const std::vector<EdgeId>& cert) {
  LocalGraph lg;
  lg.edges = cert;
  std::sort(lg.edges.begin(), lg.edges.end());
  lg.edges.erase(std::unique(lg.edges.begin(), lg.edges.end()), lg.edges.end());
  lg.adj.assign(g.node_count(), {});
  for (EdgeId id : lg.edges) {
    const Edge& e = g.edge(id);
    lg.adj[e.u].push_back({id, e.v});
    lg.adj[e.v].push_back({id, e.u});
  }
  return lg;
}

bool separated_in(const LocalGraph& lg, NodeId s, NodeId t, const std::vector<EdgeId>& removed) {
  std::vector<bool> seen(lg.adj.size(), false);
  std::deque<NodeId> queue{s};
  seen[s] = true;
  while (!queue.empty()) {
    const NodeId x = queue.front();
    queue.pop_front();
    if (x == t) return false;
    for (const auto& inc : lg.adj[x]) {
      if (seen[inc.neighbor] || std::binary_search(removed.begin(), removed.end(), inc.edge)) continue;
      seen[inc.neighbor] = true;
      queue.push_back(inc.neighbor);
    }
  }
  return true;
}

}  // namespace

LocalCut local_st_cut(const Multigraph& g, const std::vector<EdgeId>& cert, NodeId s, NodeId t,
                      std::uint32_t lambda) {
  if (s == t) throw Error("local_st_cut: s == t");
  if (s >= g.node_count() || t >= g.node_count()) throw Error("local_st_cut: node out of range");
  const LocalGraph lg = local_graph(g, cert);
  const std::size_t n = g.node_count();
  // flow[e] = +1 when one unit runs u -> v, -1 for v -> u.
  std::vector<std::int8_t> flow(g.edge_count() + 1, 0);
  auto residual = [&](EdgeId id, NodeId from) {
    const std::int8_t dir = g.edge(id).u == from ? 1 : -1;
    return flow[id] != dir;
  };

  LocalCut out;
  std::vector<EdgeId> via(n);
  std::vector<bool> seen(n);
  while (out.value <= lambda) {
    std::fill(seen.begin(), seen.end(), false);
    std::deque<NodeId> queue{s};
    seen[s] = true;
    while (!queue.empty() && !seen[t]) {
      const NodeId x = queue.front();
      queue.pop_front();
      for (const auto& inc : lg.adj[x]) {
        if (seen[inc.neighbor] || !residual(inc.edge, x)) continue;
        seen[inc.neighbor] = true;
        via[inc.neighbor] = inc.edge;
        queue.push_back(inc.neighbor);
      }
    }
    if (!seen[t]) break;
    for (NodeId y = t; y != s;) {
      const Edge& e = g.edge(via[y]);
      const NodeId x = e.other(y);
      flow[e.id] = static_cast<std::int8_t>(flow[e.id] + (e.u == x ? 1 : -1));
      y = x;
    }
    ++out.value;
  }
  if (out.value > lambda) {
    out.value = lambda + 1;
    return out;
  }
  // The last search left `seen` = residual reachable set.
  for (EdgeId id : lg.edges) {
    const Edge& e = g.edge(id);
    if (seen[e.u] != seen[e.v]) out.witness.push_back(id);
  }
  // Decompose the flow into edge-disjoint s-t walks.
  std::vector<bool> used(g.edge_count() + 1, false);
  for (std::uint32_t k = 0; k < out.value; ++k) {
    std::vector<EdgeId> walk;
    NodeId x = s;
    while (x != t) {
      EdgeId next = kNoEdge;
      for (const auto& inc : lg.adj[x]) {
        const std::int8_t out_dir = g.edge(inc.edge).u == x ? 1 : -1;
        if (!used[inc.edge] && flow[inc.edge] == out_dir) {
          next = inc.edge;
          break;
        }
      }
      if (next == kNoEdge) throw Error("local_st_cut: flow decomposition failed");
      used[next] = true;
      walk.push_back(next);
      x = g.edge(next).other(x);
    }
    out.paths.push_back(std::move(walk));
  }
  return out;
}

std::vector<std::vector<EdgeId>> local_min_cuts(const Multigraph& g, const std::vector<EdgeId>& cert, NodeId s,
                                                NodeId t, std::uint32_t lambda) {
  const LocalCut lc = local_st_cut(g, cert, s, t, lambda);
  if (lc.value > lambda) return {};
  if (lc.value == 0) return {{}};
  const LocalGraph lg = local_graph(g, cert);
  std::set<std::vector<EdgeId>> found;
  std::vector<std::size_t> pick(lc.paths.size(), 0);
  while (true) {
    std::vector<EdgeId> candidate(pick.size());
    for (std::size_t i = 0; i < pick.size(); ++i) candidate[i] = lc.paths[i][pick[i]];
    std::sort(candidate.begin(), candidate.end());
    if (separated_in(lg, s, t, candidate)) found.insert(candidate);
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == lc.paths[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return {found.begin(), found.end()};
}

LocalVertexCut local_vertex_cut(const Multigraph& g, const std::vector<EdgeId>& cert, NodeId s, NodeId t,
                                std::uint32_t lambda) {
  if (s == t) throw Error("local_vertex_cut: s == t");
  const std::size_t n = g.node_count();
  const LocalGraph lg = local_graph(g, cert);
  LocalVertexCut out;
  for (const auto& inc : lg.adj[s]) {
    if (inc.neighbor == t) {
      out.value = lambda + 1;
      return out;
    }
  }
  // Split node x into x_in = 2x and x_out = 2x+1 joined by a unit arc.
  struct Arc {
    std::uint32_t to;
    std::int32_t cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<std::uint32_t>> out_arcs(2 * n);
  auto add_arc = [&](std::uint32_t a, std::uint32_t b, std::int32_t cap) {
    out_arcs[a].push_back(static_cast<std::uint32_t>(arcs.size()));
    arcs.push_back({b, cap});
    out_arcs[b].push_back(static_cast<std::uint32_t>(arcs.size()));
    arcs.push_back({a, 0});
  };
  constexpr std::int32_t kInf = 1 << 20;
  for (NodeId x = 0; x < n; ++x) add_arc(2 * x, 2 * x + 1, (x == s || x == t) ? kInf : 1);
  for (EdgeId id : lg.edges) {
    const Edge& e = g.edge(id);
    add_arc(2 * e.u + 1, 2 * e.v, kInf);
    add_arc(2 * e.v + 1, 2 * e.u, kInf);
  }
  const std::uint32_t src = 2 * s + 1;
  const std::uint32_t dst = 2 * t;
  std::vector<std::int64_t> via(2 * n);
  std::vector<bool> seen(2 * n);
  while (out.value <= lambda) {
    std::fill(seen.begin(), seen.end(), false);
    std::deque<std::uint32_t> queue{src};
    seen[src] = true;
    while (!queue.empty() && !seen[dst]) {
      const auto x = queue.front();
      queue.pop_front();
      for (auto a : out_arcs[x]) {
        if (arcs[a].cap <= 0 || seen[arcs[a].to]) continue;
        seen[arcs[a].to] = true;
        via[arcs[a].to] = a;
        queue.push_back(arcs[a].to);
      }
    }
    if (!seen[dst]) break;
    for (auto y = dst; y != src;) {
      const auto a = static_cast<std::size_t>(via[y]);
      arcs[a].cap -= 1;
      arcs[a ^ 1].cap += 1;
      y = arcs[a ^ 1].to;
    }
    ++out.value;
  }
  if (out.value > lambda) {
    out.value = lambda + 1;
    return out;
  }
  for (NodeId x = 0; x < n; ++x)
    if (x != s && x != t && seen[2 * x] && !seen[2 * x + 1]) out.witness.push_back(x);
  return out;
}

// ---- edge-cut driver ----------------------------------------------------------

namespace {

std::vector<std::uint64_t> as_payload(const std::vector<std::uint32_t>& ids) {
  return {ids.begin(), ids.end()};
}

/// Candidate queue of one node: the frontier witness first, then the other
/// minimum cuts of its certificate (computed only when needed).
struct NodeCandidates {
  std::uint32_t value = 0;
  std::vector<std::vector<EdgeId>> cuts;
  std::size_t next = 0;
  bool expanded = false;
};

}  // namespace

CutResult edge_cut_search(Simulator& sim, const EdgeSearch& search) {
  const Multigraph& g = sim.graph();
  const std::size_t n = g.node_count();
  if (n < 2) throw Error("cut search needs at least two nodes");
  if (search.lambda == 0) throw Error("lambda must be at least 1");
  const NodeId s = 0;
  const std::uint64_t rounds_before = sim.totals().rounds;

  CutResult r;
  r.mode = search.mode;
  r.lambda = search.lambda;
  r.seed = search.seed;
  r.diameter = search.diameter;
  r.depth_cap = search.depth_cap;
  r.p = search.p;
  r.planned_iterations = search.iterations;

  // Tree of G used for reporting; it also exposes a disconnected input.
  const auto tree = truncated_bfs(sim, SubgraphSelector::all(), s, static_cast<std::uint32_t>(n));
  r.report_rounds += tree.rounds;
  if (!tree.tree.spans()) {
    r.value = 0;
    for (NodeId v = 0; v < n && r.discovered_by == kNoNode; ++v)
      if (!tree.tree.reached[v]) r.discovered_by = v;
    r.rounds = sim.totals().rounds - rounds_before;
    return r;
  }

  // Phase 1: certificates G_{s,t} as unions of root paths.
  std::vector<std::vector<bool>> in_cert(n, std::vector<bool>(g.edge_count() + 1, false));
  std::vector<std::vector<EdgeId>> cert(n);
  const std::uint64_t window = std::max<std::uint64_t>(1, search.iterations / 10);
  std::uint64_t stall = 0;
  for (std::uint64_t i = 0; i < search.iterations; ++i) {
    const SubgraphSelector sel = search.selector(i);
    const auto bfs = truncated_bfs(sim, sel, s, search.depth_cap);
    const auto paths = collect_root_paths(sim, bfs.tree);
    r.sampling_rounds += bfs.rounds + paths.rounds;
    bool gained = false;
    for (NodeId t = 0; t < n; ++t) {
      for (EdgeId e : paths.paths[t]) {
        if (in_cert[t][e]) continue;
        in_cert[t][e] = true;
        cert[t].push_back(e);
        gained = true;
      }
    }
    ++r.iterations;
    stall = gained ? 0 : stall + 1;
    if (search.early_exit && stall >= window) break;
  }
  for (NodeId t = 0; t < n; ++t) r.certificate_sizes.push_back(cert[t].size());

  // Phase 2: local cuts, then report the smallest one that verifies.
  std::vector<NodeCandidates> cands(n);
  std::vector<std::optional<Candidate>> values(n);
  r.local_values.assign(n, 0);
  for (NodeId t = 1; t < n; ++t) {
    LocalCut lc = local_st_cut(g, cert[t], s, t, search.lambda);
    r.local_values[t] = lc.value;
    if (lc.value > search.lambda) continue;
    cands[t].value = lc.value;
    cands[t].cuts.push_back(std::move(lc.witness));
    values[t] = Candidate{lc.value, t};
  }
  std::set<std::vector<EdgeId>> rejected;
  auto advance = [&](NodeId w) {
    auto& c = cands[w];
    if (!c.expanded) {
      const auto first = c.cuts.front();
      c.cuts = local_min_cuts(g, cert[w], s, w, search.lambda);
      c.cuts.erase(std::remove(c.cuts.begin(), c.cuts.end(), first), c.cuts.end());
      c.next = 0;
      c.expanded = true;
    } else {
      ++c.next;
    }
    while (c.next < c.cuts.size() && rejected.count(c.cuts[c.next])) ++c.next;
    if (c.next >= c.cuts.size()) values[w].reset();
  };
  while (true) {
    const auto cc = convergecast_min(sim, tree.tree, values);
    r.report_rounds += cc.rounds;
    if (!cc.at_root) break;
    const NodeId w = cc.at_root->owner;
    const auto& witness = cands[w].cuts[cands[w].expanded ? cands[w].next : 0];
    r.report_rounds += broadcast(sim, w, as_payload(witness)).rounds;
    const auto vr = verify_cut(sim, witness, search.lambda, search.diameter);
    r.report_rounds += vr.rounds;
    ++r.attempts;
    if (vr.is_cut) {
      r.value = static_cast<std::uint32_t>(witness.size());
      r.witness = witness;
      r.discovered_by = w;
      break;
    }
    rejected.insert(witness);
    advance(w);
  }

  if (search.collect_all_witnesses && r.value) {
    SimConfig scratch_cfg = sim.config();
    scratch_cfg.keep_log = false;
    Simulator scratch(g, scratch_cfg);
    std::map<std::vector<EdgeId>, bool> verdict;
    std::set<std::vector<std::uint32_t>> all;
    for (NodeId t = 1; t < n; ++t) {
      if (!values[t] && !cands[t].expanded && cands[t].cuts.empty()) continue;
      if (cands[t].value != *r.value) continue;
      for (const auto& cut : local_min_cuts(g, cert[t], s, t, search.lambda)) {
        auto it = verdict.find(cut);
        if (it == verdict.end())
          it = verdict.emplace(cut, verify_cut(scratch, cut, search.lambda, search.diameter).is_cut).first;
        if (it->second) all.insert(cut);
      }
    }
    r.all_witnesses.assign(all.begin(), all.end());
  }
  r.rounds = sim.totals().rounds - rounds_before;
  return r;
}

std::uint64_t cut_round_bound(const CutResult& r) {
  const std::uint64_t d = r.diameter, cap = r.depth_cap, a = r.attempts;
  std::uint64_t bound = r.iterations * (3 * cap + 3);
  bound += (d + 1) + (a + 1) * (d + 1) + a * (d + r.lambda + cap + 2);
  if (r.mode == "deterministic") bound += (4 * d + 4) + (d + 1);
  return bound;
}

CutResult randomized_min_cut(Simulator& sim, std::uint32_t lambda, std::uint64_t seed, const CutOptions& opt) {
  const Multigraph& g = sim.graph();
  const std::uint32_t d = safe_diameter(opt.diameter.value_or(diameter(g)));
  const IterationPlan plan = edge_plan(lambda, d, g.node_count(), opt.scale);
  EdgeSearch search;
  search.mode = "randomized";
  search.lambda = lambda;
  search.diameter = d;
  search.depth_cap = plan.depth_cap;
  search.iterations = opt.iterations.value_or(plan.iterations);
  search.p = plan.p;
  search.seed = seed;
  search.selector = [p = plan.p, seed](std::uint64_t i) { return SubgraphSelector::random_edges(p, seed, i); };
  search.early_exit = opt.early_exit;
  search.collect_all_witnesses = opt.collect_all_witnesses;
  return edge_cut_search(sim, search);
}

CutResult min_cut_unknown_lambda(Simulator& sim, std::uint32_t lambda_max, std::uint64_t seed,
                                 const CutOptions& opt) {
  if (lambda_max == 0) throw Error("lambda_max must be at least 1");
  const std::uint64_t rounds_before = sim.totals().rounds;
  CutResult r;
  for (std::uint32_t lambda = 1; lambda <= lambda_max; ++lambda) {
    r = randomized_min_cut(sim, lambda, seed, opt);
    if (r.value) break;
  }
  r.rounds = sim.totals().rounds - rounds_before;
  return r;
}

// ---- vertex cuts -------------------------------------------------------------

CutResult randomized_vertex_cut(Simulator& sim, std::uint32_t lambda, std::uint64_t seed, const CutOptions& opt) {
  const Multigraph& g = sim.graph();
  const std::size_t n = g.node_count();
  if (lambda == 0) throw Error("lambda must be at least 1");
  if (lambda + 1 >= n) throw Error("vertex cut needs lambda < n - 1");
  const std::uint64_t rounds_before = sim.totals().rounds;
  const std::uint32_t d = safe_diameter(opt.diameter.value_or(diameter(g)));
  const IterationPlan plan = vertex_plan(lambda, d, g.max_degree(), n, opt.scale);

  CutResult r;
  r.mode = "randomized-vertex";
  r.lambda = lambda;
  r.seed = seed;
  r.diameter = d;
  r.depth_cap = plan.depth_cap;
  r.p = plan.p;
  r.planned_iterations = opt.iterations.value_or(plan.iterations);

  const auto tree = truncated_bfs(sim, SubgraphSelector::all(), 0, static_cast<std::uint32_t>(n));
  r.report_rounds += tree.rounds;
  if (!tree.tree.spans()) {
    r.value = 0;
    for (NodeId v = 0; v < n && r.discovered_by == kNoNode; ++v)
      if (!tree.tree.reached[v]) r.discovered_by = v;
    r.rounds = sim.totals().rounds - rounds_before;
    return r;
  }

  struct Local {
    std::uint32_t value;
    NodeId source;
    std::vector<NodeId> witness;
    bool operator<(const Local& o) const { return value != o.value ? value < o.value : source < o.source; }
  };
  std::vector<std::vector<Local>> local(n);
  const std::uint64_t window = std::max<std::uint64_t>(1, r.planned_iterations / 10);

  for (NodeId src = 0; src <= lambda; ++src) {
    std::vector<std::vector<bool>> in_cert(n, std::vector<bool>(g.edge_count() + 1, false));
    std::vector<std::vector<EdgeId>> cert(n);
    const std::uint64_t source_seed = mix64(seed, src);
    std::uint64_t stall = 0;
    for (std::uint64_t i = 0; i < r.planned_iterations; ++i) {
      const auto sel = SubgraphSelector::random_vertices(plan.p, source_seed, i, {src});
      const auto bfs = truncated_bfs(sim, sel, src, plan.depth_cap);
      const auto paths = collect_root_paths(sim, bfs.tree);
      r.sampling_rounds += bfs.rounds + paths.rounds;
      bool gained = false;
      for (NodeId t = 0; t < n; ++t) {
        for (EdgeId e : paths.paths[t]) {
          if (in_cert[t][e]) continue;
          in_cert[t][e] = true;
          cert[t].push_back(e);
          gained = true;
        }
      }
      ++r.iterations;
      stall = gained ? 0 : stall + 1;
      if (opt.early_exit && stall >= window) break;
    }
    for (NodeId t = 0; t < n; ++t) {
      r.certificate_sizes.push_back(cert[t].size());
      if (t == src || g.adjacent(src, t)) continue;
      auto lc = local_vertex_cut(g, cert[t], src, t, lambda);
      if (lc.value <= lambda) local[t].push_back({lc.value, src, std::move(lc.witness)});
    }
  }

  std::vector<std::size_t> cursor(n, 0);
  std::vector<std::optional<Candidate>> values(n);
  for (NodeId t = 0; t < n; ++t) {
    std::sort(local[t].begin(), local[t].end());
    if (!local[t].empty()) values[t] = Candidate{local[t].front().value, t};
  }
  while (true) {
    const auto cc = convergecast_min(sim, tree.tree, values);
    r.report_rounds += cc.rounds;
    if (!cc.at_root) break;
    const NodeId w = cc.at_root->owner;
    const auto& witness = local[w][cursor[w]].witness;
    r.report_rounds += broadcast(sim, w, as_payload(witness)).rounds;
    const auto vr = verify_vertex_cut(sim, witness, lambda, d);
    r.report_rounds += vr.rounds;
    ++r.attempts;
    if (vr.is_cut) {
      r.value = static_cast<std::uint32_t>(witness.size());
      r.witness = witness;
      r.discovered_by = w;
      break;
    }
    if (++cursor[w] < local[w].size())
      values[w] = Candidate{local[w][cursor[w]].value, w};
    else
      values[w].reset();
  }
  r.rounds = sim.totals().rounds - rounds_before;
  return r;
}

}  // namespace ftcut
