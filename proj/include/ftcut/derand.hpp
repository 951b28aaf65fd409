#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ftcut/mincut.hpp"
#include "ftcut/primitives.hpp"

namespace ftcut {

/// h(x) = M x xor c over GF(2), for an alpha-bit input and beta-bit output.
struct BitLinearFunction {
  std::uint32_t alpha = 0;
  std::uint32_t beta = 0;
  std::vector<std::uint64_t> rows;  // beta rows, alpha-bit masks
  std::uint64_t offset = 0;

  std::uint64_t operator()(std::uint64_t x) const noexcept;
};

/// Bit-linear hash family whose coefficient strings come from the powering
/// small-bias generator: seed (x, y) in GF(2^l0), bit i = <x^i, y> mod 2,
/// l0 = ceil(log2(alpha*beta/eps)) + 2. Member j uses x = j >> l0, y = j mod 2^l0.
class HashFamily {
 public:
  static HashFamily bitlinear(std::uint32_t alpha, std::uint32_t beta, double eps);

  std::uint32_t alpha() const noexcept { return alpha_; }
  std::uint32_t beta() const noexcept { return beta_; }
  double eps() const noexcept { return eps_; }
  std::uint32_t field_bits() const noexcept { return field_bits_; }
  std::uint64_t field_polynomial() const noexcept { return poly_; }
  /// 2^(2*l0), or 1 when beta = 0.
  std::uint64_t size() const noexcept;
  BitLinearFunction function(std::uint64_t index) const;

 private:
  std::uint32_t alpha_ = 0;
  std::uint32_t beta_ = 0;
  double eps_ = 0;
  std::uint32_t field_bits_ = 0;
  std::uint64_t poly_ = 0;
};

/// Smallest irreducible polynomial of degree d over GF(2) (bit i = coefficient of x^i).
std::uint64_t irreducible_polynomial(std::uint32_t degree);
/// Product in GF(2^d) modulo `poly`.
std::uint64_t gf2_mul(std::uint64_t a, std::uint64_t b, std::uint64_t poly, std::uint32_t degree) noexcept;

/// Members are stored as value tables over [n] with values in [range].
struct PerfectFamily {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t range = 0;  // 2k^2
  std::string mode;         // "explicit" or "verified-search"
  bool fell_back = false;   // explicit construction was exhausted
  std::string warning;
  std::optional<HashFamily> source;             // explicit mode
  std::vector<std::uint64_t> source_indices;    // explicit mode: member j = source->function(index) mod range
  std::uint64_t seed = 0;                       // verified-search mode
  std::vector<std::vector<std::uint32_t>> tables;

  std::size_t size() const noexcept { return tables.size(); }
};

enum class PerfectMode { explicit_family, verified_search };

/// (n,k)-perfect family into [2k^2]. Explicit mode walks the bit-linear family
/// with alpha = ceil(log2 n), beta = ceil(log2 2k^2), eps = 0.1 and keeps a
/// member only when it is injective on some k-subset no earlier member
/// separates, until every k-subset is covered. Verified-search does the same
/// with seeded random tables. The result is perfect by construction.
PerfectFamily build_perfect_family(std::size_t n, std::size_t k, PerfectMode mode = PerfectMode::explicit_family,
                                   std::uint64_t seed = 0);

/// Cardinality budget a perfect family must meet: (k * ceil(log2 n))^2.
std::uint64_t perfect_family_budget(std::size_t n, std::size_t k) noexcept;

struct PerfectAudit {
  std::uint64_t subsets = 0;
  std::uint64_t uncovered = 0;
};
/// Exhaustive: every min(k,n)-subset has an injective member.
PerfectAudit audit_perfect(const PerfectFamily& fam);

/// Membership view of one universal-family member.
class UniversalMember final : public IndexSet {
 public:
  UniversalMember(std::shared_ptr<const std::vector<std::uint32_t>> table, std::vector<std::uint32_t> banned)
      : table_(std::move(table)), banned_(std::move(banned)) {}
  bool contains(std::uint64_t index) const override;
  const std::vector<std::uint32_t>& banned() const noexcept { return banned_; }

 private:
  std::shared_ptr<const std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> banned_;
};

/// (n,a,b) FT-universal family S_{h,i_1..i_b} = { l : h(l) not in {i_1..i_b} }
/// over a perfect family with k = a + b. Only members with distinct effect are
/// enumerated: for each h, every set of at most b values from h's image.
class UniversalFamily {
 public:
  static UniversalFamily build(std::size_t n, std::size_t a, std::size_t b,
                               PerfectMode mode = PerfectMode::explicit_family, std::uint64_t seed = 0);

  std::size_t n() const noexcept { return n_; }
  std::size_t a() const noexcept { return a_; }
  std::size_t b() const noexcept { return b_; }
  std::size_t k() const noexcept { return a_ + b_; }
  const PerfectFamily& perfect() const noexcept { return perfect_; }
  /// Distinct members actually iterated.
  std::size_t size() const noexcept { return members_.size(); }
  /// |PerfectFamily| * (2k^2)^b, saturating at 2^64-1.
  std::uint64_t nominal_size() const noexcept;
  std::shared_ptr<const IndexSet> member(std::size_t i) const;
  /// Member i as a bitmask over [n] (n <= 64).
  std::uint64_t mask(std::size_t i) const;
  std::string to_json() const;

 private:
  struct Ref {
    std::uint32_t table;
    std::vector<std::uint32_t> banned;
  };
  std::size_t n_ = 0, a_ = 0, b_ = 0;
  PerfectFamily perfect_;
  std::vector<std::shared_ptr<const std::vector<std::uint32_t>>> tables_;
  std::vector<Ref> members_;
};

inline UniversalFamily build_ft_universal(std::size_t n, std::size_t a, std::size_t b) {
  return UniversalFamily::build(n, a, b);
}

struct UniversalAudit {
  std::uint64_t pairs_checked = 0;
  std::uint64_t violations = 0;
  /// First violating (A, B) pairs (up to 100).
  std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> examples;
};

/// Exhaustive: every disjoint (A, B), |A| <= a, |B| <= b. Members as bitmasks over [n], n <= 64.
UniversalAudit verify_universal(std::size_t n, std::size_t a, std::size_t b, const std::vector<std::uint64_t>& masks);
/// Sampled: `trials` disjoint pairs with |A| = a and |B| = b drawn uniformly.
UniversalAudit verify_universal_sampled(std::size_t n, std::size_t a, std::size_t b,
                                        const std::vector<std::uint64_t>& masks, std::uint64_t trials,
                                        std::uint64_t seed);
std::vector<std::uint64_t> member_masks(const UniversalFamily& fam);

struct SampledFamily {
  std::size_t n = 0, a = 0, b = 0;
  double p = 0;
  std::uint64_t size = 0;  // ceil(5e * a^(b+1) * ln n)
  std::uint64_t seed_used = 0;
  std::uint32_t attempts = 0;
  std::vector<std::uint64_t> masks;
};

/// ceil(5e*a^(b+1)*ln n) independent samples of [n] at p = 1 - 1/a, accepted
/// only after an exhaustive audit; on failure the next seed is tried.
SampledFamily randomized_family_search(std::size_t n, std::size_t a, std::size_t b, std::uint64_t seed,
                                       std::uint32_t max_attempts = 64);

struct DeterministicOptions {
  std::uint64_t iteration_budget = 200'000;
  bool collect_all_witnesses = false;
};

/// Edge renaming, D~ = BFS depth from node 0, then the cut search of the
/// randomized algorithm with iteration i using member i of the
/// (m, 6*lambda*D~, lambda) universal family. Consumes no random bits.
CutResult deterministic_min_cut(Simulator& sim, std::uint32_t lambda, const DeterministicOptions& opt = {});

}  // namespace ftcut
