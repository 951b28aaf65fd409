#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "ftcut/edgeconn.hpp"
#include "ftcut/oracle.hpp"
#include "ftcut/random.hpp"
#include "json.hpp"

using namespace ftcut;

namespace {

SimConfig quiet() {
  SimConfig c;
  c.keep_log = false;
  return c;
}

std::uint32_t capped_lambda(const Multigraph& g, EdgeId e, std::uint32_t lambda) {
  const Edge& ed = g.edge(e);
  return static_cast<std::uint32_t>(max_flow_value(g, ed.u, ed.v, lambda + 1));
}

EdgeConnOptions fixed(std::uint64_t iterations, std::uint64_t seed) {
  EdgeConnOptions o;
  o.iterations = iterations;
  o.seed = seed;
  return o;
}

Multigraph certificate_graph(const Multigraph& g, const std::vector<EdgeId>& cert) {
  std::vector<bool> keep(g.edge_count() + 1, false);
  for (EdgeId f : cert) keep[f] = true;
  return g.edge_subgraph(keep);
}

}  // namespace

TEST_CASE("neighborhood cover examples") {
  SUBCASE("k at least the diameter gives one cluster") {
    const Multigraph g = gen::cycle(8);
    Simulator sim(g, quiet());
    for (auto mode : {CoverMode::randomized, CoverMode::deterministic}) {
      const NeighborhoodCover c = neighborhood_cover(sim, SubgraphSelector::all(), 4, mode, 1);
      CHECK(audit_cover(g, SubgraphSelector::all(), c).uncovered_balls == 0);
      if (mode == CoverMode::deterministic) {
        REQUIRE(c.clusters.size() == 1);
        CHECK(c.clusters[0].members.size() == 8);
      }
    }
  }
  SUBCASE("C12 with k = 1") {
    const Multigraph g = gen::cycle(12);
    Simulator sim(g, quiet());
    for (auto mode : {CoverMode::randomized, CoverMode::deterministic}) {
      const NeighborhoodCover c = neighborhood_cover(sim, SubgraphSelector::all(), 1, mode, 3);
      const CoverAudit a = audit_cover(g, SubgraphSelector::all(), c);
      CHECK(a.uncovered_balls == 0);
      CHECK(a.disconnected_clusters == 0);
      CHECK(c.k == 1);
    }
  }
  SUBCASE("star: the center's 1-ball is everything") {
    const Multigraph g = gen::star(5);
    Simulator sim(g, quiet());
    const NeighborhoodCover c = neighborhood_cover(sim, SubgraphSelector::all(), 1, CoverMode::deterministic);
    REQUIRE(c.clusters.size() == 1);
    CHECK(c.clusters[0].members.size() == 6);
    CHECK(c.clusters[0].center == 0);
  }
}

TEST_CASE("neighborhood covers pass the audit on every fixture") {
  for (const auto& f : fixtures::make_all(fixtures::small_specs())) {
    Simulator sim(f.g, quiet());
    for (std::uint32_t k : {1u, 2u, 3u}) {
      for (auto mode : {CoverMode::randomized, CoverMode::deterministic}) {
        const NeighborhoodCover c = neighborhood_cover(sim, SubgraphSelector::all(), k, mode, k);
        const CoverAudit a = audit_cover(f.g, SubgraphSelector::all(), c);
        INFO(f.name << " k=" << k);
        CHECK(a.uncovered_balls == 0);
        CHECK(a.disconnected_clusters == 0);
        std::uint32_t radius = 0;
        for (const auto& cl : c.clusters) {
          CHECK(std::is_sorted(cl.members.begin(), cl.members.end()));
          radius = std::max(radius, cl.radius);
        }
        CHECK(c.max_radius == radius);
        // Batches partition the clusters and are vertex-disjoint.
        std::set<std::uint32_t> seen;
        for (const auto& batch : c.batches) {
          std::set<NodeId> used;
          for (auto id : batch) {
            CHECK(seen.insert(id).second);
            for (NodeId v : c.clusters[id].members) CHECK(used.insert(v).second);
          }
        }
        CHECK(seen.size() == c.clusters.size());
      }
    }
  }
}

TEST_CASE("covers of a sampled subgraph") {
  const Multigraph g = gen::grid(3, 4);
  Simulator sim(g, quiet());
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto sel = SubgraphSelector::random_edges(0.6, 11, i);
    const NeighborhoodCover c = neighborhood_cover(sim, sel, 2, CoverMode::randomized, i);
    CHECK(audit_cover(g, sel, c).uncovered_balls == 0);
  }
}

TEST_CASE("cycle cover examples") {
  SUBCASE("C6 with D' = 6") {
    const Multigraph g = gen::cycle(6);
    Simulator sim(g, quiet());
    const CycleCover cc = approx_cycle_cover(sim, SubgraphSelector::all(), 6);
    CHECK(cc.uncovered.empty());
    for (EdgeId e = 1; e <= 6; ++e) CHECK_FALSE(cc.by_edge[e].empty());
    CHECK(cc.max_length == 6);
    CHECK(cc.stretch == doctest::Approx(1.0));
  }
  SUBCASE("two triangles and a bridge with D' = 3") {
    const Multigraph g = gen::two_triangles_bridge();
    Simulator sim(g, quiet());
    const CycleCover cc = approx_cycle_cover(sim, SubgraphSelector::all(), 3);
    CHECK(cc.uncovered == std::vector<EdgeId>{7});
    for (EdgeId e = 1; e <= 6; ++e) CHECK_FALSE(cc.by_edge[e].empty());
    CHECK(cc.by_edge[7].empty());
  }
  SUBCASE("3x3 grid with D' = 4") {
    const Multigraph g = gen::grid(3, 3);
    Simulator sim(g, quiet());
    const CycleCover cc = approx_cycle_cover(sim, SubgraphSelector::all(), 4, CoverMode::deterministic);
    CHECK(cc.uncovered.empty());
  }
}

TEST_CASE("cycle covers: validity and coverage on every fixture") {
  for (const auto& f : fixtures::make_all(fixtures::small_specs())) {
    Simulator sim(f.g, quiet());
    for (std::uint32_t dp : {3u, 4u, 6u}) {
      for (auto mode : {CoverMode::randomized, CoverMode::deterministic}) {
        const CycleCover cc = approx_cycle_cover(sim, SubgraphSelector::all(), dp, mode, dp);
        INFO(f.name << " D'=" << dp);
        for (const auto& cyc : cc.cycles) CHECK(is_valid_cycle(f.g, cyc));
        for (std::size_t i = 0; i < cc.cycles.size(); ++i)
          for (EdgeId e : cc.cycles[i])
            CHECK(std::find(cc.by_edge[e].begin(), cc.by_edge[e].end(), i) != cc.by_edge[e].end());
        std::set<EdgeId> uncovered(cc.uncovered.begin(), cc.uncovered.end());
        for (EdgeId e : fixtures::all_edge_ids(f.g)) {
          const std::uint32_t girth_e = fixtures::shortest_cycle_through(f.g, e);
          if (girth_e != 0 && girth_e <= dp) CHECK(uncovered.count(e) == 0);
          if (girth_e == 0) CHECK(uncovered.count(e) == 1);
        }
      }
    }
  }
}

TEST_CASE("is_valid_cycle") {
  const Multigraph g = gen::cycle(4);
  CHECK(is_valid_cycle(g, {1, 2, 3, 4}));
  CHECK_FALSE(is_valid_cycle(g, {1, 2, 3}));
  CHECK_FALSE(is_valid_cycle(g, {1, 1}));
  CHECK_FALSE(is_valid_cycle(g, {}));
  const Multigraph mc = gen::multi_cycle(3, 2);
  // Two parallel copies of one edge close a 2-cycle.
  const Edge& a = mc.edge(1);
  for (EdgeId e = 2; e <= mc.edge_count(); ++e) {
    const Edge& b = mc.edge(e);
    if ((b.u == a.u && b.v == a.v) || (b.u == a.v && b.v == a.u)) CHECK(is_valid_cycle(mc, {1, e}));
  }
}

TEST_CASE("edge connectivity examples") {
  SUBCASE("two triangles and a bridge at lambda = 2") {
    const Multigraph g = gen::two_triangles_bridge();
    Simulator sim(g, quiet());
    const EdgeConnMap m = all_edge_connectivities(sim, 2, fixed(1000, 1));
    CHECK(m.lambda_e[7] == 1);
    for (EdgeId e = 1; e <= 6; ++e) CHECK(m.lambda_e[e] == 2);
  }
  SUBCASE("cycles at lambda = 2") {
    for (std::size_t n : {4u, 5u, 7u}) {
      const Multigraph g = gen::cycle(n);
      Simulator sim(g, quiet());
      const EdgeConnMap m = all_edge_connectivities(sim, 2, fixed(1000, 2));
      for (EdgeId e = 1; e <= n; ++e) CHECK(m.lambda_e[e] == 2);
    }
  }
  SUBCASE("K4 at lambda = 3") {
    const Multigraph g = gen::complete(4);
    Simulator sim(g, quiet());
    const EdgeConnMap m = all_edge_connectivities(sim, 3, fixed(1000, 3));
    for (EdgeId e = 1; e <= 6; ++e) CHECK(m.lambda_e[e] == 3);
  }
  SUBCASE("K5 reports lambda + 1 above the cap") {
    const Multigraph g = gen::complete(5);
    Simulator sim(g, quiet());
    const EdgeConnMap m = all_edge_connectivities(sim, 2, fixed(500, 4));
    for (EdgeId e = 1; e <= 10; ++e) CHECK(m.lambda_e[e] == 3);
  }
}

TEST_CASE("edge connectivities match max-flow on every fixture") {
  auto specs = fixtures::small_specs();
  specs.push_back("multi-cycle:5,2");
  specs.push_back("torus:3x3");
  for (const auto& f : fixtures::make_all(specs)) {
    Simulator sim(f.g, quiet());
    const EdgeConnMap m = all_edge_connectivities(sim, 3, fixed(1000, 5));
    INFO(f.name);
    const auto bridges = fixtures::bridges(f.g);
    for (EdgeId e : fixtures::all_edge_ids(f.g)) {
      CHECK(m.lambda_e[e] == capped_lambda(f.g, e, 3));
      const bool bridge = std::find(bridges.begin(), bridges.end(), e) != bridges.end();
      CHECK(bridge == (m.lambda_e[e] == 1));
      const Edge& ed = f.g.edge(e);
      CHECK(m.lambda_e[e] <= std::min(f.g.degree(ed.u), f.g.degree(ed.v)));
      // The certificate preserves the value.
      const Multigraph h = certificate_graph(f.g, m.certificate[e]);
      CHECK(std::min<std::uint64_t>(max_flow_value(h, ed.u, ed.v, 4), 4) == m.lambda_e[e]);
    }
    CHECK(m.iterations == 1000);
    CHECK(m.max_cycle_length <= m.d_prime);
  }
}

TEST_CASE("certificates survive every small fault set") {
  // For each edge e = (u, v) and every F not containing e with
  // |F| < lambda(e) - 1, u and v stay connected in G_{u,v} \ F \ {e}.
  for (const auto& f : fixtures::make_all({"cliques:4,2", "wheel:5", "complete:4", "grid:3x3", "petersen"})) {
    if (f.g.edge_count() > 15) continue;
    Simulator sim(f.g, quiet());
    const EdgeConnMap m = all_edge_connectivities(sim, 3, fixed(1000, 6));
    const auto ids = fixtures::all_edge_ids(f.g);
    for (EdgeId e : ids) {
      const Edge& ed = f.g.edge(e);
      const auto& cert = m.certificate[e];
      std::vector<EdgeId> others;
      for (EdgeId x : ids)
        if (x != e) others.push_back(x);
      const std::uint32_t budget = m.lambda_e[e] >= 2 ? m.lambda_e[e] - 2 : 0;
      for (std::size_t k = 0; k <= budget; ++k) {
        for_each_subset(others.size(), k, [&](const auto& pick) {
          std::vector<bool> keep(f.g.edge_count() + 1, false);
          for (EdgeId c : cert) keep[c] = true;
          keep[e] = false;
          for (auto i : pick) keep[others[i]] = false;
          std::vector<EdgeId> dropped;
          for (EdgeId x : ids)
            if (!keep[x]) dropped.push_back(x);
          INFO(f.name << " e=" << e << " |F|=" << k);
          CHECK_FALSE(disconnects(f.g, dropped, ed.u, ed.v));
          return true;
        });
      }
    }
  }
}

TEST_CASE("deterministic edge connectivity") {
  for (const auto& f : fixtures::make_all({"two-triangles", "cycle:5", "cliques:4,2", "complete:4"})) {
    Simulator a(f.g, quiet()), b(f.g, quiet());
    EdgeConnOptions o;
    o.deterministic = true;
    const auto draws = random_draws();
    const EdgeConnMap ma = all_edge_connectivities(a, 2, o);
    const EdgeConnMap mb = all_edge_connectivities(b, 2, o);
    CHECK(random_draws() == draws);
    CHECK(ma.mode == "deterministic");
    CHECK(ma.lambda_e == mb.lambda_e);
    CHECK(a.totals().digest == b.totals().digest);
    INFO(f.name);
    for (EdgeId e : fixtures::all_edge_ids(f.g)) CHECK(ma.lambda_e[e] == capped_lambda(f.g, e, 2));
  }
}

TEST_CASE("sampling presets") {
  const Multigraph g = gen::cycle(5);
  Simulator sim(g, quiet());
  EdgeConnOptions o = fixed(10, 1);
  const EdgeConnMap cons = all_edge_connectivities(sim, 2, o);
  o.preset = SamplingPreset::lean;
  const EdgeConnMap lean = all_edge_connectivities(sim, 2, o);
  CHECK(cons.preset == "conservative");
  CHECK(lean.preset == "lean");
  CHECK(cons.d_prime == 6 * 2 * 2 + 1);
  CHECK(cons.p == doctest::Approx(1.0 - 1.0 / cons.d_prime));
  CHECK(lean.p == doctest::Approx(1.0 - 1.0 / (lean.d_prime * lean.d_prime)));
}

TEST_CASE("csv and summary export") {
  const Multigraph g = gen::two_triangles_bridge();
  Simulator sim(g, quiet());
  const EdgeConnMap m = all_edge_connectivities(sim, 1, fixed(200, 1));
  std::istringstream in(edgeconn_csv(g, m));
  std::string line;
  std::getline(in, line);
  CHECK(line == "edge_id,u,v,lambda_e,certificate_edges");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.rfind("7,", 0) == 0) CHECK(line.find(",1,") != std::string::npos);
    else CHECK(line.find(">=2") != std::string::npos);
  }
  CHECK(rows == 7);
  const auto j = nlohmann::json::parse(edgeconn_summary_json(m));
  CHECK(j.at("lambda") == 1);
  CHECK(j.at("mode") == "randomized");
}
