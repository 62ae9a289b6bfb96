#pragma once

// Exhaustive ground truth for small instances, and the plain utility-based
// EF1 predicate.

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "nsw/instance.hpp"
#include "nsw/market.hpp"
#include "nsw/rat.hpp"

namespace nsw {

constexpr std::uint64_t kDefaultOracleStates = 100'000'000;

struct OracleResult {
  Rat best_nth_power;
  Allocation best;
  // Allocations attaining the optimum (agent relabelings count separately).
  std::uint64_t optimum_count = 0;
  std::uint64_t states = 0;
};

class OracleRefused : public std::runtime_error {
 public:
  OracleRefused(const std::string& what, std::uint64_t states) : std::runtime_error(what), states_(states) {}
  std::uint64_t states() const { return states_; }

 private:
  std::uint64_t states_;
};

// prod_j C(k_j + n - 1, n - 1), saturating at UINT64_MAX.
std::uint64_t oracle_state_space(const Instance& inst);

// Guard from NSW_MAX_ORACLE_STATES when set to a positive integer, else
// kDefaultOracleStates.
std::uint64_t oracle_state_limit();

// Enumerates per-good multiplicity compositions and maximizes
// prod_i min(c_i, u_i(x_i)). The first optimum in enumeration order is
// returned. Throws OracleRefused when the state space exceeds the limit.
OracleResult brute_force_opt(const Instance& inst, std::optional<std::uint64_t> max_states = std::nullopt);

// True iff for all i and k != i with x_k nonempty some j in x_k has
// u_i(x_k - j) <= u_i(x_i). The witness is the first violating (i, k).
Ef1Verdict is_utility_ef1(const Instance& inst, const Allocation& x);

}  // namespace nsw
