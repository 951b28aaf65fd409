#include "ftcut/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ftcut/oracle.hpp"
#include "ftcut/random.hpp"
#include "json.hpp"

namespace ftcut {

namespace {

enum Tag : std::uint8_t { kCluster = 80, kDecision };

constexpr std::uint64_t kSampleStream = 0x62735f73ULL;
constexpr std::uint64_t kVertexFtStream = 0x76667473ULL;
constexpr std::uint64_t kPartStream = 0x6b617267ULL;
constexpr std::int64_t kNone = -1;

/// Shared state of one spanner construction. Each node only reads and writes
/// entries of its own incident edges, and both endpoints write the same value.
struct BsState {
  std::vector<std::int64_t> cluster;  // center id, kNone once unclustered
  std::vector<char> alive;            // edges not yet added or discarded
  std::vector<char> in_h;
};

/// One sampling phase: exchange cluster ids, decide, exchange decisions.
class BsPhase final : public Protocol {
 public:
  BsPhase(BsState& st, std::uint64_t seed, std::uint32_t phase, double prob, bool final_phase)
      : st_(st), seed_(seed), phase_(phase), prob_(prob), final_(final_phase), decisions_(st.cluster.size()) {}

  void start(NodeContext& ctx) override {
    const NodeId v = ctx.id();
    if (st_.cluster[v] == kNone) return;
    const Message msg(kCluster, {static_cast<std::uint64_t>(st_.cluster[v])});
    for (const auto& inc : ctx.incident())
      if (st_.alive[inc.edge]) ctx.send(inc.edge, msg);
  }

  void receive(NodeContext& ctx, std::span<const Envelope> inbox) override {
    if (inbox.empty()) return;
    if (inbox.front().msg.tag == kCluster)
      decide(ctx, inbox);
    else
      apply(ctx, inbox);
  }

 private:
  struct Decision {
    std::int64_t next = kNone;
    std::map<EdgeId, std::pair<bool, bool>> per_edge;  // (dropped, added)
  };

  bool sampled(std::int64_t c) const { return hash_unit(seed_, mix64(kSampleStream, phase_), c) < prob_; }

  void decide(NodeContext& ctx, std::span<const Envelope> inbox) {
    const NodeId v = ctx.id();
    std::map<std::int64_t, std::vector<EdgeId>> by_cluster;  // edges ascend with inbox order
    for (const auto& env : inbox) by_cluster[static_cast<std::int64_t>(env.msg[0])].push_back(env.edge);
    for (auto& [c, edges] : by_cluster) std::sort(edges.begin(), edges.end());

    Decision& d = decisions_[v];
    for (const auto& env : inbox) d.per_edge[env.edge] = {false, false};
    auto take = [&](const std::vector<EdgeId>& edges) {
      d.per_edge[edges.front()].second = true;
      for (EdgeId e : edges) d.per_edge[e].first = true;
    };

    const std::int64_t own = st_.cluster[v];
    if (final_) {
      for (const auto& [c, edges] : by_cluster)
        if (c != own) take(edges);
      d.next = own;
      for (const auto& [e, flags] : d.per_edge)
        if (flags.second) st_.in_h[e] = 1;
      return;
    }
    if (sampled(own)) {
      d.next = own;
    } else {
      std::int64_t join = kNone;
      EdgeId join_edge = kNoEdge;
      for (const auto& [c, edges] : by_cluster) {
        if (!sampled(c)) continue;
        if (join_edge == kNoEdge || edges.front() < join_edge) {
          join = c;
          join_edge = edges.front();
        }
      }
      if (join != kNone) {
        take(by_cluster[join]);
        for (const auto& [c, edges] : by_cluster)
          if (c != join && edges.front() < join_edge) take(edges);
        d.next = join;
      } else {
        for (const auto& [c, edges] : by_cluster) take(edges);
        d.next = kNone;
      }
    }
    for (const auto& [e, flags] : d.per_edge)
      ctx.send(e, Message(kDecision, {static_cast<std::uint64_t>(d.next + 1), flags.first, flags.second}));
  }

  void apply(NodeContext& ctx, std::span<const Envelope> inbox) {
    const NodeId v = ctx.id();
    Decision& d = decisions_[v];
    for (const auto& env : inbox) {
      const auto [mine_dropped, mine_added] = d.per_edge[env.edge];
      const std::int64_t their = static_cast<std::int64_t>(env.msg[0]) - 1;
      const bool added = mine_added || env.msg[2];
      const bool dropped = mine_dropped || env.msg[1] || (d.next != kNone && their == d.next);
      if (added) st_.in_h[env.edge] = 1;
      if (dropped) st_.alive[env.edge] = 0;
    }
    st_.cluster[v] = d.next;
  }

  BsState& st_;
  std::uint64_t seed_;
  std::uint32_t phase_;
  double prob_;
  bool final_;
  std::vector<Decision> decisions_;
};

double size_ratio(std::uint64_t edges, std::size_t n, std::uint32_t k, std::uint32_t f) {
  const double denom = (f + 1.0) * std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), 1.0 + 1.0 / k);
  return static_cast<double>(edges) / denom;
}

std::vector<EdgeId> sorted_union(const std::vector<char>& mark) {
  std::vector<EdgeId> out;
  for (EdgeId e = 1; e < mark.size(); ++e)
    if (mark[e]) out.push_back(e);
  return out;
}

std::uint32_t ceil_log2(std::size_t n) {
  std::uint32_t r = 0;
  while ((std::size_t{1} << r) < n) ++r;
  return r;
}

}  // namespace

std::uint64_t spanner_round_bound(std::uint32_t k) noexcept { return 2ULL * (k - 1) + 1; }

SpannerResult spanner_2k1(Simulator& sim, const SubgraphSelector& sel, std::uint32_t k, std::uint64_t seed) {
  if (k == 0) throw Error("spanner needs k >= 1");
  const Multigraph& g = sim.graph();
  const std::size_t n = g.node_count();
  BsState st;
  st.cluster.assign(n, kNone);
  for (NodeId v = 0; v < n; ++v)
    if (sel.keeps_vertex(v)) st.cluster[v] = v;
  st.alive.assign(g.edge_count() + 1, 0);
  st.in_h.assign(g.edge_count() + 1, 0);
  for (const Edge& e : g.edges()) st.alive[e.id] = sel.keeps_edge(e);

  SpannerResult out;
  out.k = k;
  const std::uint64_t before = sim.totals().rounds;
  const double prob = std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), -1.0 / k);
  for (std::uint32_t phase = 1; phase <= k; ++phase) {
    BsPhase proto(st, seed, phase, prob, phase == k);
    sim.run(proto);
  }
  out.rounds = sim.totals().rounds - before;
  out.spanners = 1;
  out.edges = sorted_union(st.in_h);
  out.edge_count = out.edges.size();
  out.c_size = size_ratio(out.edge_count, n, k, 0);
  return out;
}

SpannerResult spanner_2k1(Simulator& sim, std::uint32_t k, std::uint64_t seed) {
  return spanner_2k1(sim, SubgraphSelector::all(), k, seed);
}

SpannerResult ft_spanner_edges(Simulator& sim, std::uint32_t k, std::uint32_t f, std::uint64_t seed) {
  const Multigraph& g = sim.graph();
  std::vector<char> mark(g.edge_count() + 1, 0);
  auto remaining = std::make_shared<std::vector<bool>>(g.edge_count() + 1, true);
  SpannerResult out;
  out.k = k;
  out.f = f;
  out.faults = "edges";
  for (std::uint32_t i = 0; i <= f; ++i) {
    SubgraphSelector sel = SubgraphSelector::all();
    sel.restrict_edges(std::make_shared<const std::vector<bool>>(*remaining));
    const SpannerResult part = spanner_2k1(sim, sel, k, mix64(seed, i));
    out.rounds += part.rounds;
    ++out.spanners;
    for (EdgeId e : part.edges) {
      mark[e] = 1;
      (*remaining)[e] = false;
    }
  }
  out.edges = sorted_union(mark);
  out.edge_count = out.edges.size();
  out.c_size = size_ratio(out.edge_count, g.node_count(), k, f);
  return out;
}

SpannerResult ft_spanner_vertices(Simulator& sim, std::uint32_t k, std::uint32_t f, std::uint64_t seed) {
  const Multigraph& g = sim.graph();
  const std::size_t n = g.node_count();
  if (f == 0) {
    SpannerResult out = spanner_2k1(sim, k, seed);
    out.faults = "vertices";
    return out;
  }
  const double ln_n = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  const auto iterations =
      static_cast<std::uint64_t>(std::ceil(10.0 * std::pow(f + 1.0, f + 1.0) * ln_n));
  const double p = 1.0 - 1.0 / (f + 1.0);
  std::vector<char> mark(g.edge_count() + 1, 0);
  SpannerResult out;
  out.k = k;
  out.f = f;
  out.faults = "vertices";
  for (std::uint64_t j = 0; j < iterations; ++j) {
    const auto sel = SubgraphSelector::random_vertices(p, mix64(seed, kVertexFtStream), j);
    const SpannerResult part = spanner_2k1(sim, sel, k, mix64(seed, j));
    out.rounds += part.rounds;
    ++out.spanners;
    for (EdgeId e : part.edges) mark[e] = 1;
  }
  out.edges = sorted_union(mark);
  out.edge_count = out.edges.size();
  out.c_size = size_ratio(out.edge_count, n, k, f);
  return out;
}

SpannerAudit audit_spanner(const Multigraph& g, const std::vector<EdgeId>& h, std::uint32_t k, std::uint32_t f,
                           FaultSet::Kind kind) {
  const std::size_t n = g.node_count();
  std::vector<bool> keep(g.edge_count() + 1, false);
  for (EdgeId e : h) keep[e] = true;
  std::vector<EdgeId> original;
  const Multigraph hg = g.edge_subgraph(keep, &original);
  std::vector<EdgeId> to_h(g.edge_count() + 1, kNoEdge);
  for (EdgeId i = 1; i <= original.size(); ++i) to_h[original[i - 1]] = i;

  SpannerAudit audit;
  const std::size_t universe = kind == FaultSet::Kind::edges ? g.edge_count() : n;
  const std::uint64_t stretch = 2ULL * k - 1;
  for (std::size_t size = 0; size <= f; ++size) {
    for_each_subset(universe, size, [&](const std::vector<std::uint32_t>& idx) {
      FaultSet fg, fh;
      fg.kind = fh.kind = kind;
      for (auto i : idx) {
        if (kind == FaultSet::Kind::edges) {
          fg.members.push_back(i + 1);
          if (to_h[i + 1] != kNoEdge) fh.members.push_back(to_h[i + 1]);
        } else {
          fg.members.push_back(i);
          fh.members.push_back(i);
        }
      }
      ++audit.fault_sets;
      for (NodeId u = 0; u < n; ++u) {
        const auto dg = bfs_distances(g, u, fg);
        if (dg[u] == kUnreachable) continue;
        const auto dh = bfs_distances(hg, u, fh);
        for (NodeId v = u + 1; v < n; ++v) {
          if (dg[v] == kUnreachable) continue;
          ++audit.pairs_checked;
          if (dh[v] == kUnreachable || dh[v] > stretch * dg[v]) ++audit.violations;
        }
      }
      return true;
    });
  }
  return audit;
}

CertificateResult sparse_certificate(Simulator& sim, std::uint32_t lambda, std::uint64_t seed) {
  if (lambda == 0) throw Error("lambda must be at least 1");
  const std::size_t n = sim.graph().node_count();
  CertificateResult out;
  out.mode = "exact";
  out.lambda = lambda;
  out.target = lambda;
  out.lambda_prime = lambda;
  out.spanner_k = std::max<std::uint32_t>(1, ceil_log2(n));
  const SpannerResult sp = ft_spanner_edges(sim, out.spanner_k, lambda - 1, seed);
  out.edges = sp.edges;
  out.edge_count = sp.edge_count;
  out.rounds = sp.rounds;
  out.c_size = static_cast<double>(out.edge_count) / (lambda * std::max(1.0, n * std::log2(std::max<std::size_t>(n, 2))));
  return out;
}

KargerPartition karger_partition(const Multigraph& g, std::uint32_t lambda, double epsilon, std::uint64_t seed) {
  if (lambda == 0) throw Error("lambda must be at least 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("epsilon must lie in (0, 1)");
  const std::size_t n = g.node_count();
  const double log_n = std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 2))));
  KargerPartition kp;
  kp.mu = static_cast<std::uint32_t>(std::max(1.0, std::ceil(lambda * epsilon * epsilon / (20.0 * log_n))));
  kp.lambda_prime = static_cast<std::uint32_t>(std::floor((1.0 - epsilon) * lambda / kp.mu));
  kp.part.assign(g.edge_count() + 1, 0);
  if (kp.mu == 1) return kp;

  std::vector<std::vector<bool>> keep(kp.mu, std::vector<bool>(g.edge_count() + 1, false));
  for (const Edge& e : g.edges()) {
    kp.part[e.id] = static_cast<std::uint32_t>(hash_below(seed, kPartStream, e.label, kp.mu));
    keep[kp.part[e.id]][e.id] = true;
  }
  const double mean = static_cast<double>(lambda) / kp.mu;
  for (std::uint32_t i = 0; i < kp.mu; ++i) {
    const Multigraph part = g.edge_subgraph(keep[i]);
    std::uint64_t conn = n < 2 ? 0 : std::numeric_limits<std::uint64_t>::max();
    for (NodeId t = 1; t < n; ++t) conn = std::min(conn, max_flow_value(part, 0, t, conn));
    kp.connectivity.push_back(conn);
    kp.sizes.push_back(part.edge_count());
    const double c = static_cast<double>(conn);
    if (c < (1.0 - epsilon) * mean || c > (1.0 + epsilon) * mean) kp.concentrated = false;
  }
  return kp;
}

CertificateResult karger_certificate(Simulator& sim, std::uint32_t lambda, double epsilon, std::uint64_t seed) {
  const Multigraph& g = sim.graph();
  const KargerPartition kp = karger_partition(g, lambda, epsilon, seed);
  CertificateResult out;
  if (kp.mu == 1) {
    out = sparse_certificate(sim, lambda, seed);
    out.mode = "karger";
    out.degenerate = true;
    out.epsilon = epsilon;
    out.target = static_cast<std::uint32_t>(std::floor((1.0 - epsilon) * lambda));
    return out;
  }
  out.mode = "karger";
  out.lambda = lambda;
  out.epsilon = epsilon;
  out.target = static_cast<std::uint32_t>(std::floor((1.0 - epsilon) * lambda));
  out.mu = kp.mu;
  out.lambda_prime = kp.lambda_prime;
  out.part_connectivities = kp.connectivity;
  out.part_sizes = kp.sizes;
  out.concentration_ok = kp.concentrated;
  std::vector<char> mark(g.edge_count() + 1, 0);
  std::uint64_t slowest = 0;
  // Parts are edge-disjoint and run side by side; the cost is the slowest part.
  for (std::uint32_t i = 0; i < kp.mu; ++i) {
    std::vector<bool> keep(g.edge_count() + 1, false);
    for (const Edge& e : g.edges()) keep[e.id] = kp.part[e.id] == i;
    std::vector<EdgeId> original;
    const Multigraph part = g.edge_subgraph(keep, &original);
    Simulator part_sim(part, sim.config());
    const CertificateResult cert = sparse_certificate(part_sim, std::max<std::uint32_t>(1, kp.lambda_prime), mix64(seed, i));
    out.spanner_k = cert.spanner_k;
    slowest = std::max(slowest, cert.rounds);
    for (EdgeId e : cert.edges) mark[original[e - 1]] = 1;
  }
  out.rounds = slowest;
  out.edges = sorted_union(mark);
  out.edge_count = out.edges.size();
  const std::size_t n = g.node_count();
  out.c_size = static_cast<double>(out.edge_count) / (lambda * std::max(1.0, n * std::log2(std::max<std::size_t>(n, 2))));
  return out;
}

std::string certificate_json(const CertificateResult& cert) {
  nlohmann::ordered_json j;
  j["mode"] = cert.mode;
  j["lambda"] = cert.lambda;
  j["epsilon"] = cert.epsilon;
  j["target"] = cert.target;
  j["mu"] = cert.mu;
  j["lambda_prime"] = cert.lambda_prime;
  j["degenerate"] = cert.degenerate;
  j["edge_count"] = cert.edge_count;
  j["rounds"] = cert.rounds;
  j["part_connectivities"] = cert.part_connectivities;
  j["part_sizes"] = cert.part_sizes;
  j["concentration_ok"] = cert.concentration_ok;
  j["spanner"] = {{"algorithm", "baswana-sen"}, {"k", cert.spanner_k}};
  j["c_size"] = cert.c_size;
  return j.dump();
}

std::string spanner_json(const SpannerResult& sp) {
  nlohmann::ordered_json j;
  j["algorithm"] = sp.algorithm;
  j["k"] = sp.k;
  j["f"] = sp.f;
  j["faults"] = sp.faults;
  j["edge_count"] = sp.edge_count;
  j["spanners"] = sp.spanners;
  j["rounds"] = sp.rounds;
  j["c_size"] = sp.c_size;
  j["edges"] = sp.edges;
  return j.dump();
}

std::string certificate_graph(const Multigraph& g, const std::vector<EdgeId>& edges) {
  std::vector<bool> keep(g.edge_count() + 1, false);
  for (EdgeId e : edges) keep.at(e) = true;
  return write_graph(g.edge_subgraph(keep));
}

}  // namespace ftcut
