#pragma once

// Problem model: agents with optional utility caps, goods with copy counts,
// and per-copy utilities that are non-increasing in the copy index.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsw/powers.hpp"
#include "nsw/rat.hpp"

namespace nsw {

// nullopt means the agent is uncapped.
using Cap = std::optional<Rat>;

// mult[i][j] = number of copies of good j held by agent i.
using Allocation = std::vector<std::vector<int>>;

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Instance {
  std::vector<int> copies;
  std::vector<Cap> caps;
  // utils[i][j][l] is agent i's utility for its (l+1)-th copy of good j.
  std::vector<std::vector<std::vector<Rat>>> utils;

  int agents() const { return static_cast<int>(caps.size()); }
  int goods() const { return static_cast<int>(copies.size()); }
  long total_items() const;
  bool is_capped(int i) const { return caps[i].has_value(); }
  // True when every utility of agent i is zero.
  bool is_null_agent(int i) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Validation {
  std::optional<Instance> instance;
  std::vector<std::string> errors;
  bool ok() const { return instance.has_value(); }
};

// Checks shape, copy counts, positive finite caps, non-negative utilities and
// non-increasing marginals. Error messages use 1-based indices.
Validation validate(Instance raw);

// Throws ParameterError unless 0 < eps <= 1/4.
void check_epsilon(const Rat& eps);

// Marginal utilities with prefix sums, so bundle utilities cost O(m).
class Valuation {
 public:
  Valuation() = default;
  explicit Valuation(const Instance& inst);

  int agents() const { return static_cast<int>(prefix_.size()); }
  int goods() const { return prefix_.empty() ? 0 : static_cast<int>(prefix_[0].size()); }
  int copies(int j) const { return static_cast<int>(prefix_[0][j].size()) - 1; }

  // u_{i,j,l} for 1 <= l <= k_j; 0 beyond k_j.
  const Rat& marginal(int i, int j, int l) const;
  // sum_{l <= m} u_{i,j,l}.
  const Rat& prefix(int i, int j, int m) const { return prefix_[i][j][m]; }
  Rat bundle_utility(int i, const std::vector<int>& mult) const;

 private:
  std::vector<std::vector<std::vector<Rat>>> marginals_;
  std::vector<std::vector<std::vector<Rat>>> prefix_;
  Rat zero_;
};

// Instance after capping utilities at the agent's cap and rounding every
// nonzero utility and every finite cap up to a power of r = 1 + eps.
struct RoundedInstance {
  Instance values;
  // nullopt marks a zero utility.
  std::vector<std::vector<std::vector<std::optional<PowerOfR>>>> utility_exponents;
  // nullopt marks an uncapped agent.
  std::vector<std::optional<PowerOfR>> cap_exponents;
  Rat epsilon;
  Rat r;
  Valuation valuation;

  int agents() const { return values.agents(); }
  int goods() const { return values.goods(); }
};

RoundedInstance cap_and_round(const Instance& inst, const Rat& eps);

struct InstanceStats {
  long total_items = 0;
  // max nonzero utility / min nonzero utility; 1 when degenerate.
  Rat utility_spread = Rat(1);
  // log_r of the spread (the spread of a rounded instance is a power of r).
  std::int64_t spread_exponent = 0;
  // ceil(n^3 M^2 log_r(M U)).
  std::int64_t iteration_cap = 0;
  // All utilities are zero.
  bool degenerate = false;
};

InstanceStats stats(const RoundedInstance& inst);

}  // namespace nsw
