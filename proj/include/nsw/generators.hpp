#pragma once

// Named test families and seeded random instances.

#include <cstdint>

#include "nsw/instance.hpp"
#include "nsw/rat.hpp"

namespace nsw {

// SplitMix64: each draw hashes a counter advanced by a fixed odd constant, so
// a seed fully determines the stream on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform integer in [lo, hi] by rejection, free of modulo bias.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  // Independent child stream.
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

// n = s*k identical uncapped agents, s*(k-1) goods of value K followed by
// s*k goods of value 1, one copy each. Requires k, s >= 1 and K >= k.
Instance gen_lower_bound(int k, int s, long K);

// The smallest power of 1 + eps that is at least 2 (1 + eps)^2.
Rat envy_example_value(const Rat& eps);

// Two uncapped agents; good 1 has 5 copies, good 2 has 2 copies.
Instance gen_multicopy_envy(const Rat& eps);

// Two agents and four single-copy goods valued envy_example_value(eps) by
// both; the first agent is capped at 3.
Instance gen_capped_envy(const Rat& eps);

enum class CapMode { None, Random };

// Copies uniform in [1, max_copies]; per-copy utilities uniform in
// [0, max_util], sorted descending per (agent, good). With CapMode::Random each
// agent with positive total utility is capped with probability 1/2 at a
// uniform integer in [1, total].
Instance gen_random(int n, int m, int max_copies, int max_util, CapMode caps, std::uint64_t seed);

// n uncapped agents, m single-copy goods, integer utilities in [1, max_util]
// resampled until u_ij <= (4/5) delta u_i(G) / n. The 4/5 margin keeps the
// instance delta-large after rounding up by any r <= 5/4. Throws
// ParameterError when m * delta < (5/4) n.
Instance gen_delta_large(int n, int m, const Rat& delta, std::uint64_t seed, int max_util = 10);

}  // namespace nsw
