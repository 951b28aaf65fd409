#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace ftcut {

// Every random bit the library consumes goes through this header. The process
// wide draw counter lets callers assert that a code path is seed-free.

std::uint64_t random_draws() noexcept;

/// Stateless 64-bit mixer (splitmix64 finalizer). Pure; not counted.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

/// Shared-seed coin: uniform in [0,1) as a function of (seed, stream, key).
/// Any two parties holding the same triple agree on the value. Counted.
double hash_unit(std::uint64_t seed, std::uint64_t stream, std::uint64_t key) noexcept;

/// Shared-seed integer in [0, bound). Counted.
std::uint64_t hash_below(std::uint64_t seed, std::uint64_t stream, std::uint64_t key,
                         std::uint64_t bound) noexcept;

/// UniformRandomBitGenerator over mt19937_64 that counts every draw.
class CountingEngine {
 public:
  using result_type = std::uint64_t;

  explicit CountingEngine(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  result_type operator()();

 private:
  std::mt19937_64 engine_;
};

}  // namespace ftcut
