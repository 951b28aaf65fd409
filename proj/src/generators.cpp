#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ftcut/graph.hpp"
#include "ftcut/oracle.hpp"
#include "ftcut/random.hpp"

namespace ftcut {

GeneratorSpec GeneratorSpec::parse(std::string_view text) {
  GeneratorSpec spec;
  const auto colon = text.find(':');
  spec.kind = std::string(text.substr(0, colon));
  if (spec.kind.empty()) throw Error("empty generator spec");
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto sep = rest.find_first_of(",x");
    const std::string token(rest.substr(0, sep));
    try {
      std::size_t used = 0;
      spec.params.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error("bad generator parameter '" + token + "' in '" + std::string(text) + "'");
    }
    if (sep == std::string_view::npos) break;
    rest = rest.substr(sep + 1);
  }
  return spec;
}

std::string GeneratorSpec::to_string() const {
  std::ostringstream out;
  out << kind;
  for (std::size_t i = 0; i < params.size(); ++i) out << (i == 0 ? ':' : ',') << params[i];
  return out.str();
}

namespace {

std::size_t as_size(const GeneratorSpec& spec, std::size_t i) {
  if (i >= spec.params.size()) throw Error("generator '" + spec.kind + "' needs more parameters");
  const double v = spec.params[i];
  if (v < 0 || v != std::floor(v)) throw Error("generator '" + spec.kind + "' expects integer parameters");
  return static_cast<std::size_t>(v);
}

}  // namespace

Multigraph generate(const GeneratorSpec& spec, std::uint64_t seed) {
  const auto& k = spec.kind;
  if (k == "cycle") return gen::cycle(as_size(spec, 0));
  if (k == "path") return gen::path(as_size(spec, 0));
  if (k == "complete") return gen::complete(as_size(spec, 0));
  if (k == "grid") return gen::grid(as_size(spec, 0), as_size(spec, 1));
  if (k == "torus") return gen::torus(as_size(spec, 0), as_size(spec, 1));
  if (k == "star") return gen::star(as_size(spec, 0));
  if (k == "wheel") return gen::wheel(as_size(spec, 0));
  if (k == "petersen") return gen::petersen();
  if (k == "two-triangles") return gen::two_triangles_bridge();
  if (k == "cliques") return gen::cliques_joined(as_size(spec, 0), as_size(spec, 1));
  if (k == "multi-cycle") return gen::multi_cycle(as_size(spec, 0), as_size(spec, 1));
  if (k == "lower-bound") return gen::lower_bound_family(as_size(spec, 0), as_size(spec, 1));
  if (k == "random-lambda") {
    if (spec.params.size() < 3) throw Error("random-lambda needs n,lambda,extra-edge-prob");
    return gen::random_lambda_connected(as_size(spec, 0), as_size(spec, 1), spec.params[2], seed);
  }
  throw Error("unknown generator '" + k + "'");
}

namespace gen {

Multigraph cycle(std::size_t n) {
  if (n < 3) throw Error("cycle needs n >= 3");
  Multigraph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
  return g;
}

Multigraph path(std::size_t n) {
  if (n < 1) throw Error("path needs n >= 1");
  Multigraph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  return g;
}

Multigraph complete(std::size_t n) {
  Multigraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
  return g;
}

Multigraph grid(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw Error("grid needs positive dimensions");
  Multigraph g(rows * cols);
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<NodeId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
      if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
    }
  }
  return g;
}

Multigraph torus(std::size_t rows, std::size_t cols) {
  if (rows < 3 || cols < 3) throw Error("torus needs both dimensions >= 3");
  Multigraph g(rows * cols);
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<NodeId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      g.add_edge(id(r, c), id(r, (c + 1) % cols));
      g.add_edge(id(r, c), id((r + 1) % rows, c));
    }
  }
  return g;
}

Multigraph star(std::size_t leaves) {
  Multigraph g(leaves + 1);
  for (std::size_t i = 1; i <= leaves; ++i) g.add_edge(0, static_cast<NodeId>(i));
  return g;
}

Multigraph wheel(std::size_t rim) {
  if (rim < 3) throw Error("wheel needs a rim of >= 3 nodes");
  Multigraph g(rim + 1);
  for (std::size_t i = 1; i <= rim; ++i) g.add_edge(0, static_cast<NodeId>(i));
  for (std::size_t i = 0; i < rim; ++i)
    g.add_edge(static_cast<NodeId>(1 + i), static_cast<NodeId>(1 + (i + 1) % rim));
  return g;
}

Multigraph petersen() {
  Multigraph g(10);
  for (NodeId i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

Multigraph multi_cycle(std::size_t n, std::size_t multiplicity) {
  if (n < 3 || multiplicity < 1) throw Error("multi-cycle needs n >= 3 and multiplicity >= 1");
  Multigraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < multiplicity; ++r)
      g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
  return g;
}

Multigraph cliques_joined(std::size_t k, std::size_t bridges) {
  if (k < 2 || bridges > k) throw Error("cliques needs k >= 2 and bridges <= k");
  Multigraph g(2 * k);
  for (std::size_t side = 0; side < 2; ++side)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        g.add_edge(static_cast<NodeId>(side * k + i), static_cast<NodeId>(side * k + j));
  for (std::size_t i = 0; i < bridges; ++i) g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(k + i));
  return g;
}

Multigraph two_triangles_bridge() {
  Multigraph g(6);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(5, 3);
  g.add_edge(2, 3);
  return g;
}

namespace {

// Gadget of level L between x and y: a direct edge plus, for L > 1, a chain of
// `length` level-(L-1) gadgets from x to y.
void build_gadget(std::vector<std::pair<NodeId, NodeId>>& edges, std::size_t& next_node, NodeId x, NodeId y,
                  std::size_t level, std::size_t length) {
  edges.emplace_back(x, y);
  if (level <= 1) return;
  NodeId prev = x;
  for (std::size_t i = 1; i <= length; ++i) {
    const NodeId cur = i == length ? y : static_cast<NodeId>(next_node++);
    build_gadget(edges, next_node, prev, cur, level - 1, length);
    prev = cur;
  }
}

}  // namespace

Multigraph lower_bound_family(std::size_t diameter, std::size_t lambda) {
  if (diameter < 2 || lambda < 1) throw Error("lower-bound family needs D >= 2 and lambda >= 1");
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::size_t next_node = 2;
  build_gadget(edges, next_node, 0, 1, lambda + 1, diameter);
  Multigraph g(next_node);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Multigraph random_lambda_connected(std::size_t n, std::size_t lambda, double extra_edge_prob,
                                   std::uint64_t seed) {
  const std::size_t reach = (lambda + 2) / 2;  // circulant offsets 1..reach give 2*reach >= lambda+1
  const std::size_t half = n / 2;
  if (lambda < 1 || half < 2 * reach + 1 || n - half < 2 * reach + 1 || lambda > half) {
    throw Error("random-lambda: need n large enough for two (lambda+1)-connected halves");
  }
  if (extra_edge_prob < 0 || extra_edge_prob > 1) throw Error("random-lambda: extra-edge-prob must be in [0,1]");
  CountingEngine rng(mix64(seed, 0x7261'6e64'6c61'6d62ULL));
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<NodeId, NodeId>> edges;
    auto add_half = [&](std::size_t base, std::size_t size) {
      std::vector<std::vector<bool>> present(size, std::vector<bool>(size, false));
      for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t d = 1; d <= reach; ++d) {
          const std::size_t j = (i + d) % size;
          if (present[i][j]) continue;
          present[i][j] = present[j][i] = true;
          edges.emplace_back(perm[base + i], perm[base + j]);
        }
      }
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i + 1; j < size; ++j)
          if (!present[i][j] && coin(rng) < extra_edge_prob) edges.emplace_back(perm[base + i], perm[base + j]);
    };
    add_half(0, half);
    add_half(half, n - half);
    std::uniform_int_distribution<std::size_t> left(0, half - 1);
    std::uniform_int_distribution<std::size_t> right(half, n - 1);
    std::vector<std::pair<std::size_t, std::size_t>> cross;
    while (cross.size() < lambda) {
      std::pair<std::size_t, std::size_t> c{left(rng), right(rng)};
      if (std::find(cross.begin(), cross.end(), c) == cross.end()) cross.push_back(c);
    }
    for (auto [a, b] : cross) edges.emplace_back(perm[a], perm[b]);
    std::shuffle(edges.begin(), edges.end(), rng);
    Multigraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    if (min_cut_oracle(g, std::nullopt, std::nullopt, 0).value == lambda) return g;
  }
  throw Error("random-lambda: could not generate a graph with the requested connectivity");
}

}  // namespace gen
}  // namespace ftcut
