#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftcut/graph.hpp"

namespace ftcut {

/// A CONGEST message: a small tag plus up to four integer fields. Its size is
/// 8 header bits plus the bit width of every field.
struct Message {
  std::uint8_t tag = 0;
  std::uint8_t size = 0;
  std::array<std::uint64_t, 4> words{};

  Message() = default;
  Message(std::uint8_t t, std::initializer_list<std::uint64_t> fields);

  std::uint64_t operator[](std::size_t i) const { return words[i]; }
  std::uint32_t bits() const noexcept;
};

struct Envelope {
  EdgeId edge;
  NodeId from;
  NodeId to;
  Message msg;
};

class Simulator;

/// A node's view during one round: its id, incident edges and a send port.
class NodeContext {
 public:
  NodeId id() const noexcept { return node_; }
  std::uint32_t round() const noexcept;
  std::size_t node_count() const noexcept;
  std::span<const Incidence> incident() const;
  const Multigraph& graph() const noexcept;

  /// At most one message per incident edge per round; a second send on the
  /// same edge in the same round is a protocol bug and throws.
  void send(EdgeId edge, const Message& msg);

 private:
  friend class Simulator;
  NodeContext(Simulator& sim, NodeId node) : sim_(&sim), node_(node) {}
  Simulator* sim_;
  NodeId node_;
};

/// Per-node step function. `start` runs once before round 1; `receive` runs
/// for every node in every round with the messages delivered that round.
class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual void start(NodeContext& /*ctx*/) {}
  virtual void receive(NodeContext& ctx, std::span<const Envelope> inbox) = 0;
  /// Work still queued at v even though nothing was sent this round.
  virtual bool pending(NodeId /*v*/) const { return false; }
  virtual std::optional<std::int64_t> output(NodeId /*v*/) const { return std::nullopt; }
};

struct LoggedMessage {
  std::uint32_t round;
  EdgeId edge;
  NodeId src;
  NodeId dst;
  std::uint32_t bits;
};

struct Transcript {
  std::uint32_t rounds = 0;
  std::uint32_t bit_budget = 0;
  std::vector<LoggedMessage> log;  // canonical (round, edge, src) order
  std::uint64_t messages = 0;
  std::uint64_t bits = 0;
  std::uint32_t max_bits = 0;
  std::uint32_t max_congestion = 0;
  bool timeout = false;
  bool budget_violated = false;
  std::uint64_t digest = 0;  // FNV-1a over the canonical log
  std::vector<std::optional<std::int64_t>> outputs;
};

struct RoundReport {
  std::uint64_t rounds = 0;
  std::uint64_t messages = 0;
  std::uint64_t bits = 0;
  std::uint32_t max_congestion = 0;
  std::uint32_t max_bits_per_message = 0;
  std::uint64_t runs = 0;
  bool budget_violated = false;
  bool timeout = false;
  std::uint64_t digest = 0;

  friend bool operator==(const RoundReport&, const RoundReport&) = default;
};

RoundReport metrics(const Transcript& t);

/// Transcript as "round edge-id src dst bits" lines.
std::string export_log(const Transcript& t);
/// {rounds, messages, bits, max_congestion, ...} as a JSON object string.
std::string export_summary(const RoundReport& r);

/// B = 2*ceil(log2 n) + 16.
std::uint32_t default_bit_budget(std::size_t n) noexcept;

struct SimConfig {
  std::uint32_t bit_budget = 0;  // 0: default_bit_budget(n)
  std::uint32_t max_rounds = 1'000'000;
  bool keep_log = true;
};

/// Lock-step synchronous engine. Messages sent in round r are delivered and
/// processed in round r+1; a run ends at the first round in which nothing is
/// sent and no node reports pending work. Nodes are stepped in ascending id
/// order, but sends are buffered so the order is unobservable.
///
/// A Simulator also accumulates a RoundReport over every run it executes, so
/// a multi-phase algorithm can report its total cost.
class Simulator {
 public:
  explicit Simulator(const Multigraph& g, SimConfig cfg = {});
  /// The graph is held by reference.
  Simulator(Multigraph&&, SimConfig = {}) = delete;

  const Multigraph& graph() const noexcept { return *graph_; }
  const SimConfig& config() const noexcept { return cfg_; }

  Transcript run(Protocol& protocol);

  const RoundReport& totals() const noexcept { return totals_; }
  void reset_totals() { totals_ = {}; }

 private:
  friend class NodeContext;

  const Multigraph* graph_;
  SimConfig cfg_;
  RoundReport totals_;

  std::uint32_t round_ = 0;
  std::vector<Envelope> outbox_;
  std::vector<std::uint32_t> sent_stamp_;  // per (edge, direction): round+1 of last send
};

}  // namespace ftcut
