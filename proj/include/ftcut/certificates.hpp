#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftcut/congest.hpp"
#include "ftcut/primitives.hpp"

namespace ftcut {

struct SpannerResult {
  std::vector<EdgeId> edges;  // ascending
  std::uint32_t k = 0;
  std::uint32_t f = 0;
  std::string faults = "none";  // "none", "edges" or "vertices"
  std::string algorithm = "baswana-sen";
  std::uint64_t edge_count = 0;
  std::uint64_t spanners = 0;  // spanner_2k1 invocations
  std::uint64_t rounds = 0;
  /// edge_count / ((f+1) * n^(1+1/k)).
  double c_size = 0.0;
};

/// Baswana-Sen clustering spanner of the selected subgraph: k-1 sampling
/// phases (clusters kept with probability n^(-1/k), shared seed) and a final
/// phase joining every vertex to each neighbouring cluster. Edge ids break ties.
SpannerResult spanner_2k1(Simulator& sim, const SubgraphSelector& sel, std::uint32_t k, std::uint64_t seed);
SpannerResult spanner_2k1(Simulator& sim, std::uint32_t k, std::uint64_t seed);

/// f+1 spanners, each on G minus the union of the earlier ones.
SpannerResult ft_spanner_edges(Simulator& sim, std::uint32_t k, std::uint32_t f, std::uint64_t seed);

/// Union of spanners of J = ceil(10 (f+1)^(f+1) ln n) induced subgraphs, each
/// vertex kept with probability 1 - 1/(f+1). f = 0 is one plain spanner.
SpannerResult ft_spanner_vertices(Simulator& sim, std::uint32_t k, std::uint32_t f, std::uint64_t seed);

/// Rounds one spanner_2k1 call may take: 2 per sampling phase plus 1.
std::uint64_t spanner_round_bound(std::uint32_t k) noexcept;

struct SpannerAudit {
  std::uint64_t fault_sets = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t violations = 0;
};
/// Exhaustive: for every fault set of size <= f (edges or vertices) and every
/// pair, dist(u,v,H\F) <= (2k-1) dist(u,v,G\F).
SpannerAudit audit_spanner(const Multigraph& g, const std::vector<EdgeId>& h, std::uint32_t k, std::uint32_t f,
                           FaultSet::Kind kind = FaultSet::Kind::edges);

struct CertificateResult {
  std::vector<EdgeId> edges;  // ascending
  std::string mode;           // "exact" or "karger"
  std::uint32_t lambda = 0;
  double epsilon = 0.0;
  std::uint32_t target = 0;  // lambda, or floor((1-eps) lambda)
  std::uint32_t mu = 1;
  std::uint32_t lambda_prime = 0;
  bool degenerate = false;  // karger request with mu = 1
  std::vector<std::uint64_t> part_connectivities;
  std::vector<std::uint64_t> part_sizes;
  bool concentration_ok = true;  // every part in (1 +- eps) lambda / mu
  std::uint64_t edge_count = 0;
  std::uint64_t rounds = 0;
  std::uint32_t spanner_k = 0;
  double c_size = 0.0;  // edge_count / (lambda * n * log2 n)
};

/// ft_spanner_edges with k = ceil(log2 n), f = lambda - 1.
CertificateResult sparse_certificate(Simulator& sim, std::uint32_t lambda, std::uint64_t seed);

struct KargerPartition {
  std::uint32_t mu = 1;
  std::uint32_t lambda_prime = 0;
  std::vector<std::uint32_t> part;  // indexed by EdgeId
  std::vector<std::uint64_t> connectivity;
  std::vector<std::uint64_t> sizes;
  bool concentrated = true;
};
/// mu = ceil(lambda eps^2 / (20 log2 n)), lambda' = floor((1-eps) lambda / mu);
/// each edge goes to part hash(seed, label) mod mu. Part connectivities come
/// from the oracle.
KargerPartition karger_partition(const Multigraph& g, std::uint32_t lambda, double epsilon, std::uint64_t seed);

/// Union of per-part sparse certificates at lambda'. mu = 1 falls back to
/// sparse_certificate(lambda) and is flagged degenerate.
CertificateResult karger_certificate(Simulator& sim, std::uint32_t lambda, double epsilon, std::uint64_t seed);

/// {mode, lambda, epsilon, mu, lambda_prime, edge_count, rounds, part_connectivities, ...}
std::string certificate_json(const CertificateResult& cert);
std::string spanner_json(const SpannerResult& sp);
/// The certificate as a graph file over the same node set.
std::string certificate_graph(const Multigraph& g, const std::vector<EdgeId>& edges);

}  // namespace ftcut
