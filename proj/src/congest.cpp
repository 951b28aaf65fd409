#include "ftcut/congest.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "json.hpp"

namespace ftcut {

Message::Message(std::uint8_t t, std::initializer_list<std::uint64_t> fields) : tag(t) {
  if (fields.size() > words.size()) throw Error("message carries at most four fields");
  for (auto f : fields) words[size++] = f;
}

std::uint32_t Message::bits() const noexcept {
  std::uint32_t total = 8;
  for (std::size_t i = 0; i < size; ++i) total += std::max<std::uint32_t>(1, std::bit_width(words[i]));
  return total;
}

std::uint32_t NodeContext::round() const noexcept { return sim_->round_; }
std::size_t NodeContext::node_count() const noexcept { return sim_->graph_->node_count(); }
std::span<const Incidence> NodeContext::incident() const { return sim_->graph_->incident(node_); }
const Multigraph& NodeContext::graph() const noexcept { return *sim_->graph_; }

void NodeContext::send(EdgeId edge, const Message& msg) {
  const Edge& e = sim_->graph_->edge(edge);
  if (e.u != node_ && e.v != node_) {
    throw Error("node " + std::to_string(node_) + " sent on non-incident edge " + std::to_string(edge));
  }
  const std::size_t slot = 2 * static_cast<std::size_t>(edge) + (e.u == node_ ? 0 : 1);
  auto& stamp = sim_->sent_stamp_[slot];
  if (stamp == sim_->round_ + 1) {
    throw Error("node " + std::to_string(node_) + " sent twice on edge " + std::to_string(edge) + " in one round");
  }
  stamp = sim_->round_ + 1;
  sim_->outbox_.push_back(Envelope{edge, node_, e.other(node_), msg});
}

std::uint32_t default_bit_budget(std::size_t n) noexcept {
  std::uint32_t log2n = 0;
  while ((std::size_t{1} << log2n) < n) ++log2n;
  return 2 * log2n + 16;
}

Simulator::Simulator(const Multigraph& g, SimConfig cfg) : graph_(&g), cfg_(cfg) {
  if (cfg_.bit_budget == 0) cfg_.bit_budget = default_bit_budget(g.node_count());
  if (cfg_.max_rounds == 0) throw Error("max-rounds must be positive");
}

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv(std::uint64_t& h, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

}  // namespace

Transcript Simulator::run(Protocol& protocol) {
  const std::size_t n = graph_->node_count();
  Transcript tr;
  tr.bit_budget = cfg_.bit_budget;
  tr.digest = kFnvOffset;
  round_ = 0;
  outbox_.clear();
  sent_stamp_.assign(2 * (graph_->edge_count() + 1), 0);
  std::vector<std::uint32_t> per_edge(graph_->edge_count() + 1, 0);
  std::vector<Envelope> delivered;
  std::vector<std::size_t> offsets(n + 1);
  std::vector<Envelope> inbox_storage;

  for (NodeId v = 0; v < n; ++v) {
    NodeContext ctx(*this, v);
    protocol.start(ctx);
  }

  while (true) {
    bool busy = !outbox_.empty();
    for (NodeId v = 0; v < n && !busy; ++v) busy = protocol.pending(v);
    if (!busy) break;
    if (round_ == cfg_.max_rounds) {
      tr.timeout = true;
      break;
    }
    ++round_;
    delivered.swap(outbox_);
    outbox_.clear();
    std::sort(delivered.begin(), delivered.end(), [](const Envelope& a, const Envelope& b) {
      return a.edge != b.edge ? a.edge < b.edge : a.from < b.from;
    });
    std::fill(offsets.begin(), offsets.end(), 0);
    for (const Envelope& env : delivered) {
      const std::uint32_t bits = env.msg.bits();
      if (cfg_.keep_log) tr.log.push_back({round_, env.edge, env.from, env.to, bits});
      ++tr.messages;
      tr.bits += bits;
      tr.max_bits = std::max(tr.max_bits, bits);
      if (bits > cfg_.bit_budget) tr.budget_violated = true;
      tr.max_congestion = std::max(tr.max_congestion, ++per_edge[env.edge]);
      fnv(tr.digest, round_);
      fnv(tr.digest, env.edge);
      fnv(tr.digest, env.from);
      fnv(tr.digest, env.msg.tag);
      for (std::size_t i = 0; i < env.msg.size; ++i) fnv(tr.digest, env.msg.words[i]);
      ++offsets[env.to + 1];
    }
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
    inbox_storage.resize(delivered.size());
    {
      std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
      for (const Envelope& env : delivered) inbox_storage[fill[env.to]++] = env;
    }
    for (NodeId v = 0; v < n; ++v) {
      NodeContext ctx(*this, v);
      protocol.receive(ctx, std::span<const Envelope>(inbox_storage.data() + offsets[v], offsets[v + 1] - offsets[v]));
    }
  }
  tr.rounds = round_;
  tr.outputs.resize(n);
  for (NodeId v = 0; v < n; ++v) tr.outputs[v] = protocol.output(v);

  totals_.rounds += tr.rounds;
  totals_.messages += tr.messages;
  totals_.bits += tr.bits;
  totals_.max_congestion = std::max(totals_.max_congestion, tr.max_congestion);
  totals_.max_bits_per_message = std::max(totals_.max_bits_per_message, tr.max_bits);
  totals_.budget_violated = totals_.budget_violated || tr.budget_violated;
  totals_.timeout = totals_.timeout || tr.timeout;
  ++totals_.runs;
  std::uint64_t chained = totals_.digest == 0 ? kFnvOffset : totals_.digest;
  fnv(chained, tr.digest);
  fnv(chained, tr.rounds);
  totals_.digest = chained;
  return tr;
}

RoundReport metrics(const Transcript& t) {
  RoundReport r;
  r.rounds = t.rounds;
  r.messages = t.messages;
  r.bits = t.bits;
  r.max_congestion = t.max_congestion;
  r.max_bits_per_message = t.max_bits;
  r.runs = 1;
  r.budget_violated = t.budget_violated;
  r.timeout = t.timeout;
  r.digest = t.digest;
  return r;
}

std::string export_log(const Transcript& t) {
  std::ostringstream out;
  for (const auto& m : t.log) out << m.round << ' ' << m.edge << ' ' << m.src << ' ' << m.dst << ' ' << m.bits << '\n';
  return out.str();
}

std::string export_summary(const RoundReport& r) {
  nlohmann::ordered_json j;
  j["rounds"] = r.rounds;
  j["messages"] = r.messages;
  j["bits"] = r.bits;
  j["max_congestion"] = r.max_congestion;
  j["max_bits_per_message"] = r.max_bits_per_message;
  j["runs"] = r.runs;
  j["budget_violated"] = r.budget_violated;
  j["timeout"] = r.timeout;
  j["digest"] = r.digest;
  return j.dump();
}

}  // namespace ftcut
