#include "ftcut/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace ftcut {

Multigraph::Multigraph(std::size_t n) : adjacency_(n) {}

EdgeId Multigraph::add_edge(NodeId u, NodeId v) {
  if (u >= node_count() || v >= node_count()) {
    throw Error("endpoint out of range: (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  if (u == v) throw Error("self-loop at node " + std::to_string(u));
  const auto id = static_cast<EdgeId>(edges_.size() + 1);
  edges_.push_back(Edge{id, u, v, id});
  // ids grow monotonically, so adjacency stays sorted by edge id
  adjacency_[u].push_back({id, v});
  adjacency_[v].push_back({id, u});
  return id;
}

void Multigraph::set_labels(std::span<const std::uint64_t> labels) {
  if (labels.size() != edges_.size()) throw Error("label count does not match edge count");
  std::unordered_set<std::uint64_t> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw Error("edge labels must be unique");
  for (std::size_t i = 0; i < edges_.size(); ++i) edges_[i].label = labels[i];
}

const Edge& Multigraph::edge(EdgeId id) const {
  if (id == kNoEdge || id > edges_.size()) throw Error("no edge with id " + std::to_string(id));
  return edges_[id - 1];
}

std::size_t Multigraph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& adj : adjacency_) best = std::max(best, adj.size());
  return best;
}

bool Multigraph::adjacent(NodeId a, NodeId b) const {
  const auto& adj = adjacency_.at(a);
  return std::any_of(adj.begin(), adj.end(), [b](const Incidence& i) { return i.neighbor == b; });
}

Multigraph Multigraph::edge_subgraph(const std::vector<bool>& keep,
                                     std::vector<EdgeId>* original) const {
  Multigraph out(node_count());
  if (original) original->clear();
  for (const Edge& e : edges_) {
    if (e.id < keep.size() && keep[e.id]) {
      out.add_edge(e.u, e.v);
      if (original) original->push_back(e.id);
    }
  }
  return out;
}

// ---- text format ------------------------------------------------------------

namespace {

std::string_view strip(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

bool parse_pair(std::string_view s, std::uint64_t& a, std::uint64_t& b) {
  const char* p = s.data();
  const char* end = s.data() + s.size();
  auto r1 = std::from_chars(p, end, a);
  if (r1.ec != std::errc{}) return false;
  p = r1.ptr;
  if (p == end || (*p != ' ' && *p != '\t')) return false;
  while (p != end && (*p == ' ' || *p == '\t')) ++p;
  auto r2 = std::from_chars(p, end, b);
  return r2.ec == std::errc{} && r2.ptr == end;
}

}  // namespace

Multigraph load_graph(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  Multigraph g;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const auto line = strip(raw);
    if (line.empty()) continue;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!parse_pair(line, a, b)) throw ParseError(line_no, "malformed line '" + std::string(line) + "'");
    if (!have_header) {
      n = a;
      m = b;
      have_header = true;
      g = Multigraph(n);
      continue;
    }
    if (g.edge_count() == m) throw ParseError(line_no, "more edge lines than the declared " + std::to_string(m));
    if (a >= n || b >= n) throw ParseError(line_no, "endpoint out of range");
    if (a == b) throw ParseError(line_no, "self-loop at line " + std::to_string(line_no));
    g.add_edge(static_cast<NodeId>(a), static_cast<NodeId>(b));
  }
  if (!have_header) throw ParseError(line_no, "missing 'n m' header");
  if (g.edge_count() != m) {
    throw ParseError(line_no, "declared " + std::to_string(m) + " edges, found " + std::to_string(g.edge_count()));
  }
  return g;
}

Multigraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_graph(ss.str());
}

std::string write_graph(const Multigraph& g) {
  std::string out = std::to_string(g.node_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

}  // namespace ftcut
