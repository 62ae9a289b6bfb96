#include "nsw/generators.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "nsw/powers.hpp"

namespace nsw {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ParameterError(message);
}

Instance single_copy(int n, int m) {
  Instance inst;
  inst.copies.assign(m, 1);
  inst.caps.assign(n, std::nullopt);
  inst.utils.assign(n, std::vector<std::vector<Rat>>(m, std::vector<Rat>(1, Rat(0))));
  return inst;
}

}  // namespace

Instance gen_lower_bound(int k, int s, long K) {
  require(k >= 1 && s >= 1, "lower-bound family needs k >= 1 and s >= 1");
  require(K >= k, "lower-bound family needs K >= k");
  const int h = s * (k - 1);
  const int n = h + s;
  Instance inst = single_copy(n, h + n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < h + n; ++j) inst.utils[i][j][0] = j < h ? Rat(K) : Rat(1);
  }
  return inst;
}

Rat envy_example_value(const Rat& eps) {
  check_epsilon(eps);
  const Rat r = Rat(1) + eps;
  return value(next_power_up(Rat(2) * r * r, r), r);
}

Instance gen_multicopy_envy(const Rat& eps) {
  const Rat s = envy_example_value(eps);
  Instance inst;
  inst.copies = {5, 2};
  inst.caps = {std::nullopt, std::nullopt};
  inst.utils = {
      {{s, s, 0, 0, 0}, {1, 0}},
      {{s, s, s, 0, 0}, {s, s}},
  };
  return inst;
}

Instance gen_capped_envy(const Rat& eps) {
  const Rat s = envy_example_value(eps);
  Instance inst = single_copy(2, 4);
  inst.caps[0] = Rat(3);
  for (auto& agent : inst.utils) {
    for (auto& good : agent) good[0] = s;
  }
  return inst;
}

Instance gen_random(int n, int m, int max_copies, int max_util, CapMode caps, std::uint64_t seed) {
  require(n >= 1 && m >= 1 && max_copies >= 1 && max_util >= 1, "random family needs positive parameters");
  SplitMix64 rng(seed);
  Instance inst;
  inst.copies.resize(m);
  for (int j = 0; j < m; ++j) inst.copies[j] = static_cast<int>(rng.uniform(1, max_copies));
  inst.caps.assign(n, std::nullopt);
  inst.utils.assign(n, std::vector<std::vector<Rat>>(m));
  for (int i = 0; i < n; ++i) {
    long total = 0;
    for (int j = 0; j < m; ++j) {
      std::vector<long> draws(inst.copies[j]);
      for (long& d : draws) {
        d = rng.uniform(0, max_util);
        total += d;
      }
      std::sort(draws.begin(), draws.end(), std::greater<>());
      for (long d : draws) inst.utils[i][j].emplace_back(d);
    }
    if (caps == CapMode::Random && total >= 1 && rng.uniform(0, 1) == 1) {
      inst.caps[i] = Rat(rng.uniform(1, total));
    }
  }
  return inst;
}

Instance gen_delta_large(int n, int m, const Rat& delta, std::uint64_t seed, int max_util) {
  require(n >= 1 && m >= 1 && max_util >= 1, "delta-large family needs positive parameters");
  require(delta.sign() > 0 && delta < Rat(1), "delta must lie in (0, 1)");
  require(Rat(m) * delta >= Rat(5, 4) * Rat(n),
          "delta-large family needs m * delta >= 5n/4 (m=" + std::to_string(m) + ", n=" + std::to_string(n) +
              ", delta=" + delta.str() + ")");
  SplitMix64 rng(seed);
  Instance inst = single_copy(n, m);
  const Rat margin = Rat(4, 5) * delta / Rat(n);
  for (int i = 0; i < n; ++i) {
    std::vector<long> u(m);
    long total = 0;
    for (long& v : u) {
      v = rng.uniform(1, max_util);
      total += v;
    }
    // Shrink the largest offender until none is left. Every draw strictly
    // lowers a value and all-ones is feasible, so this terminates.
    while (true) {
      const auto it = std::max_element(u.begin(), u.end());
      if (Rat(*it) <= margin * Rat(total)) break;
      const long fresh = rng.uniform(1, *it - 1);
      total += fresh - *it;
      *it = fresh;
    }
    for (int j = 0; j < m; ++j) inst.utils[i][j][0] = Rat(u[j]);
  }
  return inst;
}

}  // namespace nsw
