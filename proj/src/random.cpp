#include "ftcut/random.hpp"

#include <atomic>

namespace ftcut {
namespace {

std::atomic<std::uint64_t> g_draws{0};

}  // namespace

std::uint64_t random_draws() noexcept { return g_draws.load(std::memory_order_relaxed); }

double hash_unit(std::uint64_t seed, std::uint64_t stream, std::uint64_t key) noexcept {
  g_draws.fetch_add(1, std::memory_order_relaxed);
  const std::uint64_t bits = mix64(mix64(seed, stream), key);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::uint64_t hash_below(std::uint64_t seed, std::uint64_t stream, std::uint64_t key,
                         std::uint64_t bound) noexcept {
  g_draws.fetch_add(1, std::memory_order_relaxed);
  const std::uint64_t bits = mix64(mix64(seed, stream), key);
  // Lemire's multiply-shift; bias is below 2^-40 for desk-scale bounds.
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits) * bound) >> 64);
}

CountingEngine::result_type CountingEngine::operator()() {
  g_draws.fetch_add(1, std::memory_order_relaxed);
  return engine_();
}

}  // namespace ftcut
