#include "ftcut/derand.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "ftcut/oracle.hpp"
#include "ftcut/random.hpp"
#include "json.hpp"

namespace ftcut {

// ---- GF(2) arithmetic ---------------------------------------------------------

namespace {

int degree_of(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree_of(m);
  for (int da = degree_of(a); da >= dm; da = degree_of(a)) a ^= m << (da - dm);
  return a;
}

/// a*b mod m for deg a, deg b < deg m <= 32.
std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
  }
  return poly_mod(r, m);
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

/// x^(2^j) mod f.
std::uint64_t frobenius(std::uint32_t j, std::uint64_t f) {
  std::uint64_t x = poly_mod(2, f);
  for (std::uint32_t i = 0; i < j; ++i) x = poly_mulmod(x, x, f);
  return x;
}

bool irreducible(std::uint64_t f, std::uint32_t d) {
  if (frobenius(d, f) != poly_mod(2, f)) return false;
  for (std::uint32_t q = 2; q <= d; ++q) {
    if (d % q != 0) continue;
    bool prime = true;
    for (std::uint32_t r = 2; r * r <= q; ++r) prime = prime && q % r != 0;
    if (!prime) continue;
    if (poly_gcd(f, frobenius(d / q, f) ^ poly_mod(2, f)) != 1) return false;
  }
  return true;
}

}  // namespace

std::uint64_t irreducible_polynomial(std::uint32_t degree) {
  if (degree == 0 || degree > 32) throw Error("field degree must be in [1, 32]");
  for (std::uint64_t f = (1ULL << degree) | 1ULL; f < (2ULL << degree); f += 2)
    if (irreducible(f, degree)) return f;
  throw Error("no irreducible polynomial found");
}

std::uint64_t gf2_mul(std::uint64_t a, std::uint64_t b, std::uint64_t poly, std::uint32_t degree) noexcept {
  std::uint64_t r = 0;
  const std::uint64_t top = 1ULL << degree;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= poly;
  }
  return r;
}

// ---- bit-linear family ---------------------------------------------------------

std::uint64_t BitLinearFunction::operator()(std::uint64_t x) const noexcept {
  std::uint64_t out = 0;
  for (std::uint32_t r = 0; r < beta; ++r) {
    const std::uint64_t bit = (std::popcount(rows[r] & x) & 1) ^ ((offset >> r) & 1);
    out |= bit << r;
  }
  return out;
}

HashFamily HashFamily::bitlinear(std::uint32_t alpha, std::uint32_t beta, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error("eps must lie in (0, 1)");
  if (alpha > 63 || beta > 63) throw Error("hash domain or range too wide");
  HashFamily f;
  f.alpha_ = alpha;
  f.beta_ = beta;
  f.eps_ = eps;
  if (beta == 0) return f;
  const double ratio = std::max(1.0, static_cast<double>(alpha) * beta) / eps;
  f.field_bits_ = static_cast<std::uint32_t>(std::ceil(std::log2(ratio))) + 2;
  if (f.field_bits_ > 31) throw Error("field of order 2^" + std::to_string(f.field_bits_) + " is too large");
  f.poly_ = irreducible_polynomial(f.field_bits_);
  return f;
}

std::uint64_t HashFamily::size() const noexcept { return beta_ == 0 ? 1 : 1ULL << (2 * field_bits_); }

BitLinearFunction HashFamily::function(std::uint64_t index) const {
  if (index >= size()) throw Error("hash family index out of range");
  BitLinearFunction h;
  h.alpha = alpha_;
  h.beta = beta_;
  h.rows.assign(beta_, 0);
  if (beta_ == 0) return h;
  const std::uint64_t mask = (1ULL << field_bits_) - 1;
  const std::uint64_t x = index >> field_bits_;
  const std::uint64_t y = index & mask;
  std::uint64_t power = 1;
  const std::uint32_t length = alpha_ * beta_ + beta_;
  for (std::uint32_t i = 0; i < length; ++i) {
    const std::uint64_t bit = std::popcount(power & y) & 1;
    if (i < alpha_ * beta_)
      h.rows[i / alpha_] |= bit << (i % alpha_);
    else
      h.offset |= bit << (i - alpha_ * beta_);
    power = gf2_mul(power, x, poly_, field_bits_);
  }
  return h;
}

// ---- perfect families ------------------------------------------------------------

namespace {

constexpr std::uint64_t kSubsetBudget = 50'000'000;

std::uint32_t ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(x - 1));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  long double r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint64_t>(std::llround(r));
}

bool injective_on(const std::vector<std::uint32_t>& table, const std::uint32_t* subset, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (table[subset[i]] == table[subset[j]]) return false;
  return true;
}

/// All k-subsets of [n], flattened.
std::vector<std::uint32_t> all_subsets(std::size_t n, std::size_t k) {
  const std::uint64_t count = binomial(n, k);
  if (count > kSubsetBudget) throw Error("perfect family audit over " + std::to_string(count) + " subsets is too large");
  std::vector<std::uint32_t> flat;
  flat.reserve(count * k);
  for_each_subset(n, k, [&](const std::vector<std::uint32_t>& idx) {
    flat.insert(flat.end(), idx.begin(), idx.end());
    return true;
  });
  return flat;
}

/// Removes the subsets `table` separates; returns how many were removed.
std::size_t prune(std::vector<std::uint32_t>& alive, std::size_t k, const std::vector<std::uint32_t>& table) {
  std::size_t kept = 0;
  const std::size_t count = alive.size() / k;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t* sub = alive.data() + i * k;
    if (injective_on(table, sub, k)) continue;
    std::copy(sub, sub + k, alive.data() + kept * k);
    ++kept;
  }
  alive.resize(kept * k);
  return count - kept;
}

void verified_search(PerfectFamily& fam, std::size_t k_eff) {
  fam.mode = "verified-search";
  fam.tables.clear();
  fam.source_indices.clear();
  auto alive = all_subsets(fam.n, k_eff);
  CountingEngine engine(fam.seed);
  std::uniform_int_distribution<std::uint32_t> value(0, static_cast<std::uint32_t>(fam.range - 1));
  for (std::uint32_t tries = 0; !alive.empty(); ++tries) {
    if (tries == 100'000) throw Error("verified search did not converge");
    std::vector<std::uint32_t> table(fam.n);
    for (auto& v : table) v = value(engine);
    if (prune(alive, k_eff, table) > 0) fam.tables.push_back(std::move(table));
  }
}

}  // namespace

PerfectFamily build_perfect_family(std::size_t n, std::size_t k, PerfectMode mode, std::uint64_t seed) {
  if (n == 0) throw Error("perfect family needs n >= 1");
  if (n > (1ULL << 32)) throw Error("perfect family domain too large");
  PerfectFamily fam;
  fam.n = n;
  fam.k = k;
  fam.range = std::max<std::uint64_t>(1, 2ULL * k * k);
  fam.seed = seed;
  const std::size_t k_eff = std::min(k, n);

  if (mode == PerfectMode::verified_search) {
    if (k_eff <= 1) {
      fam.mode = "verified-search";
      fam.tables.emplace_back(n, 0);
      return fam;
    }
    verified_search(fam, k_eff);
    return fam;
  }

  fam.mode = "explicit";
  if (fam.range >= n) {
    // The range can hold [n] itself: the identity separates every subset.
    std::vector<std::uint32_t> identity(n);
    for (std::size_t i = 0; i < n; ++i) identity[i] = static_cast<std::uint32_t>(i);
    fam.tables.push_back(std::move(identity));
    return fam;
  }
  fam.source = HashFamily::bitlinear(std::max<std::uint32_t>(1, ceil_log2(n)), ceil_log2(fam.range), 0.1);
  auto alive = all_subsets(n, k_eff);
  const std::uint64_t total = fam.source->size();
  for (std::uint64_t j = 0; j < total && !alive.empty(); ++j) {
    const BitLinearFunction h = fam.source->function(j);
    std::vector<std::uint32_t> table(n);
    for (std::size_t x = 0; x < n; ++x) table[x] = static_cast<std::uint32_t>(h(x) % fam.range);
    if (prune(alive, k_eff, table) == 0) continue;
    fam.tables.push_back(std::move(table));
    fam.source_indices.push_back(j);
  }
  if (!alive.empty()) {
    fam.fell_back = true;
    fam.warning = "explicit family left " + std::to_string(alive.size() / k_eff) +
                  " subsets uncovered; switched to verified search";
    verified_search(fam, k_eff);
  }
  return fam;
}

PerfectAudit audit_perfect(const PerfectFamily& fam) {
  PerfectAudit audit;
  const std::size_t k_eff = std::min(fam.k, fam.n);
  if (k_eff <= 1) {
    audit.subsets = fam.n;
    audit.uncovered = fam.tables.empty() ? fam.n : 0;
    return audit;
  }
  for_each_subset(fam.n, k_eff, [&](const std::vector<std::uint32_t>& idx) {
    ++audit.subsets;
    const bool ok = std::any_of(fam.tables.begin(), fam.tables.end(),
                                [&](const auto& table) { return injective_on(table, idx.data(), k_eff); });
    if (!ok) ++audit.uncovered;
    return true;
  });
  return audit;
}

// ---- universal families ------------------------------------------------------------

bool UniversalMember::contains(std::uint64_t index) const {
  if (index >= table_->size()) return false;
  return !std::binary_search(banned_.begin(), banned_.end(), (*table_)[index]);
}

std::uint64_t perfect_family_budget(std::size_t n, std::size_t k) noexcept {
  std::uint64_t log2n = 0;
  while ((std::uint64_t{1} << log2n) < n) ++log2n;
  const std::uint64_t base = k * std::max<std::uint64_t>(1, log2n);
  return base * base;
}

UniversalFamily UniversalFamily::build(std::size_t n, std::size_t a, std::size_t b, PerfectMode mode,
                                       std::uint64_t seed) {
  if (n == 0) throw Error("universal family needs n >= 1");
  if (a == 0) throw Error("universal family needs a >= 1");
  UniversalFamily fam;
  fam.n_ = n;
  fam.a_ = a;
  fam.b_ = b;
  fam.perfect_ = build_perfect_family(n, a + b, mode, seed);
  for (const auto& table : fam.perfect_.tables)
    fam.tables_.push_back(std::make_shared<const std::vector<std::uint32_t>>(table));

  // With nothing banned every h gives [n]; list that member once.
  fam.members_.push_back({0, {}});
  for (std::uint32_t t = 0; t < fam.tables_.size(); ++t) {
    std::vector<std::uint32_t> image(*fam.tables_[t]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    for (std::size_t size = 1; size <= std::min(b, image.size()); ++size) {
      for_each_subset(image.size(), size, [&](const std::vector<std::uint32_t>& idx) {
        std::vector<std::uint32_t> banned(size);
        for (std::size_t i = 0; i < size; ++i) banned[i] = image[idx[i]];
        fam.members_.push_back({t, std::move(banned)});
        return true;
      });
    }
  }
  return fam;
}

std::uint64_t UniversalFamily::nominal_size() const noexcept {
  std::uint64_t total = perfect_.size();
  for (std::size_t i = 0; i < b_; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / perfect_.range) return std::numeric_limits<std::uint64_t>::max();
    total *= perfect_.range;
  }
  return total;
}

std::shared_ptr<const IndexSet> UniversalFamily::member(std::size_t i) const {
  const Ref& ref = members_.at(i);
  return std::make_shared<UniversalMember>(tables_[ref.table], ref.banned);
}

std::uint64_t UniversalFamily::mask(std::size_t i) const {
  if (n_ > 64) throw Error("bitmask view needs n <= 64");
  const Ref& ref = members_.at(i);
  const auto& table = *tables_[ref.table];
  std::uint64_t m = 0;
  for (std::size_t x = 0; x < n_; ++x)
    if (!std::binary_search(ref.banned.begin(), ref.banned.end(), table[x])) m |= 1ULL << x;
  return m;
}

std::string UniversalFamily::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n_;
  j["a"] = a_;
  j["b"] = b_;
  j["k"] = k();
  nlohmann::ordered_json h;
  h["mode"] = perfect_.mode;
  h["range"] = perfect_.range;
  h["functions"] = perfect_.size();
  if (perfect_.source) {
    h["alpha"] = perfect_.source->alpha();
    h["beta"] = perfect_.source->beta();
    h["eps"] = perfect_.source->eps();
    h["field_bits"] = perfect_.source->field_bits();
    h["field_polynomial"] = perfect_.source->field_polynomial();
    h["indices"] = perfect_.source_indices;
  } else if (perfect_.mode == "explicit") {
    h["identity"] = true;
  } else {
    h["seed"] = perfect_.seed;
  }
  if (perfect_.fell_back) h["warning"] = perfect_.warning;
  j["hash_family"] = h;
  j["member_count"] = size();
  j["nominal_member_count"] = nominal_size();
  return j.dump();
}

std::vector<std::uint64_t> member_masks(const UniversalFamily& fam) {
  std::vector<std::uint64_t> masks(fam.size());
  for (std::size_t i = 0; i < fam.size(); ++i) masks[i] = fam.mask(i);
  return masks;
}

namespace {

std::uint64_t to_mask(const std::vector<std::uint32_t>& xs) {
  std::uint64_t m = 0;
  for (auto x : xs) m |= 1ULL << x;
  return m;
}

void check_pair(UniversalAudit& audit, const std::vector<std::uint64_t>& masks, const std::vector<std::uint32_t>& a,
                const std::vector<std::uint32_t>& b) {
  const std::uint64_t am = to_mask(a);
  const std::uint64_t bm = to_mask(b);
  ++audit.pairs_checked;
  const bool ok =
      std::any_of(masks.begin(), masks.end(), [&](std::uint64_t m) { return (m & am) == am && (m & bm) == 0; });
  if (ok) return;
  ++audit.violations;
  if (audit.examples.size() < 100) audit.examples.emplace_back(a, b);
}

}  // namespace

UniversalAudit verify_universal(std::size_t n, std::size_t a, std::size_t b, const std::vector<std::uint64_t>& masks) {
  if (n > 64) throw Error("exhaustive universality audit needs n <= 64");
  UniversalAudit audit;
  for (std::size_t sa = 0; sa <= std::min(a, n); ++sa) {
    for_each_subset(n, sa, [&](const std::vector<std::uint32_t>& aidx) {
      std::vector<std::uint32_t> rest;
      for (std::uint32_t x = 0; x < n; ++x)
        if (!std::binary_search(aidx.begin(), aidx.end(), x)) rest.push_back(x);
      for (std::size_t sb = 0; sb <= std::min(b, rest.size()); ++sb) {
        for_each_subset(rest.size(), sb, [&](const std::vector<std::uint32_t>& bidx) {
          std::vector<std::uint32_t> bset(sb);
          for (std::size_t i = 0; i < sb; ++i) bset[i] = rest[bidx[i]];
          check_pair(audit, masks, aidx, bset);
          return true;
        });
      }
      return true;
    });
  }
  return audit;
}

UniversalAudit verify_universal_sampled(std::size_t n, std::size_t a, std::size_t b,
                                        const std::vector<std::uint64_t>& masks, std::uint64_t trials,
                                        std::uint64_t seed) {
  if (n > 64) throw Error("universality audit needs n <= 64");
  UniversalAudit audit;
  CountingEngine engine(seed);
  std::vector<std::uint32_t> order(n);
  const std::size_t sa = std::min(a, n);
  const std::size_t sb = std::min(b, n - sa);
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), engine);
    std::vector<std::uint32_t> aset(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(sa));
    std::vector<std::uint32_t> bset(order.begin() + static_cast<std::ptrdiff_t>(sa),
                                    order.begin() + static_cast<std::ptrdiff_t>(sa + sb));
    std::sort(aset.begin(), aset.end());
    std::sort(bset.begin(), bset.end());
    check_pair(audit, masks, aset, bset);
  }
  return audit;
}

SampledFamily randomized_family_search(std::size_t n, std::size_t a, std::size_t b, std::uint64_t seed,
                                       std::uint32_t max_attempts) {
  if (a < 2) throw Error("randomized family search needs a >= 2 (p = 1 - 1/a would be 0)");
  if (n < 2 || n > 64) throw Error("randomized family search needs 2 <= n <= 64");
  SampledFamily fam;
  fam.n = n;
  fam.a = a;
  fam.b = b;
  fam.p = 1.0 - 1.0 / static_cast<double>(a);
  fam.size = static_cast<std::uint64_t>(std::ceil(5.0 * std::numbers::e * std::pow(static_cast<double>(a), b + 1.0) *
                                                  std::log(static_cast<double>(n))));
  for (std::uint32_t attempt = 0; attempt < max_attempts; ++attempt) {
    fam.seed_used = seed + attempt;
    fam.attempts = attempt + 1;
    fam.masks.assign(fam.size, 0);
    for (std::uint64_t j = 0; j < fam.size; ++j)
      for (std::uint32_t x = 0; x < n; ++x)
        if (hash_unit(fam.seed_used, j, x) < fam.p) fam.masks[j] |= 1ULL << x;
    if (verify_universal(n, a, b, fam.masks).violations == 0) return fam;
  }
  throw Error("randomized family search failed after " + std::to_string(max_attempts) + " attempts");
}

// ---- deterministic driver --------------------------------------------------------

CutResult deterministic_min_cut(Simulator& sim, std::uint32_t lambda, const DeterministicOptions& opt) {
  const Multigraph& g = sim.graph();
  if (lambda == 0) throw Error("lambda must be at least 1");
  if (g.node_count() < 2) throw Error("cut search needs at least two nodes");
  const std::uint64_t rounds_before = sim.totals().rounds;

  const Renaming renaming = rename_edges(sim);
  const auto depth = truncated_bfs(sim, SubgraphSelector::all(), 0, static_cast<std::uint32_t>(g.node_count()));
  const std::uint32_t d_tilde = std::max<std::uint32_t>(1, depth.tree.max_depth());
  const std::uint32_t d_bound = 2 * d_tilde;
  const std::uint32_t a = kDetour * lambda * d_bound;

  auto family = std::make_shared<UniversalFamily>(
      UniversalFamily::build(std::max<std::size_t>(1, g.edge_count()), a, lambda));
  if (family->size() > opt.iteration_budget)
    throw Error("universal family has " + std::to_string(family->size()) + " members, over the iteration budget of " +
                std::to_string(opt.iteration_budget));
  auto renamed = std::make_shared<const std::vector<std::uint32_t>>(renaming.new_id);

  EdgeSearch search;
  search.mode = "deterministic";
  search.lambda = lambda;
  search.diameter = d_bound;
  search.depth_cap = a;
  search.iterations = family->size();
  search.p = 0.0;
  search.selector = [family, renamed](std::uint64_t i) {
    return SubgraphSelector::universal_set(family->member(static_cast<std::size_t>(i)), renamed);
  };
  search.collect_all_witnesses = opt.collect_all_witnesses;
  CutResult r = edge_cut_search(sim, search);
  r.rounds = sim.totals().rounds - rounds_before;
  return r;
}

}  // namespace ftcut
