#pragma once

// Mutable market state: integral allocation, per-good prices and per-agent
// MBB ratios alpha_i, tied together by the interval condition
//
//   u_{i,j,m(j,x_i)+1} / p_j  <=  alpha_i  <=  u_{i,j,m(j,x_i)} / p_j
//
// (upper bound +inf when agent i holds no copy of j, lower bound 0 when it
// holds all of them). Zero-valued copies impose no bound. A price is zero
// only for a good whose last greedy copy was worthless to every agent; such a
// good has no tight edges and never moves.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nsw/instance.hpp"
#include "nsw/rat.hpp"

namespace nsw {

class MarketState {
 public:
  explicit MarketState(std::shared_ptr<const RoundedInstance> inst);

  const RoundedInstance& instance() const { return *inst_; }
  const std::shared_ptr<const RoundedInstance>& shared_instance() const { return inst_; }
  int agents() const { return static_cast<int>(mult_.size()); }
  int goods() const { return static_cast<int>(price_.size()); }

  int multiplicity(int i, int j) const { return mult_[i][j]; }
  const Allocation& allocation() const { return mult_; }
  const Rat& price(int j) const { return price_[j]; }
  const Rat& mbb(int i) const { return mbb_[i]; }
  const std::vector<Rat>& prices() const { return price_; }
  const std::vector<Rat>& mbbs() const { return mbb_; }

  void set_price(int j, Rat p) { price_[j] = std::move(p); }
  void set_mbb(int i, Rat alpha) { mbb_[i] = std::move(alpha); }
  void set_allocation(Allocation mult);
  // Hands one unassigned copy of good j to agent `to`.
  void assign_copy(int j, int to) { ++mult_[to][j]; }
  void move_copy(int j, int from, int to);

  // u_{i,j,m+1}; zero when agent i already holds every copy.
  const Rat& next_utility(int i, int j) const;
  // u_{i,j,m}; zero when agent i holds no copy.
  const Rat& last_utility(int i, int j) const;
  // u_i(x_i).
  Rat utility(int i) const;
  int item_count(int i) const;

  friend bool operator==(const MarketState& a, const MarketState& b) {
    return a.mult_ == b.mult_ && a.price_ == b.price_ && a.mbb_ == b.mbb_;
  }

 private:
  std::shared_ptr<const RoundedInstance> inst_;
  Allocation mult_;
  std::vector<Rat> price_;
  std::vector<Rat> mbb_;
};

// P_i(x_i) = u_i(x_i) / alpha_i. Throws std::logic_error if alpha_i is zero.
Rat bundle_value(const MarketState& s, int i);

// P_k(x_k - j) = P_k(x_k) - u_{k,j,m(j,x_k)} / alpha_k. Throws
// std::invalid_argument when agent k holds no copy of j.
Rat bundle_value_minus_one(const MarketState& s, int k, int j);

// min over goods j in x_k of P_k(x_k - j); nullopt for an empty bundle.
std::optional<Rat> min_value_minus_one(const MarketState& s, int k);

// u_i(x_i) >= c_i. Uncapped agents are never capped.
bool is_capped_agent(const MarketState& s, int i);

// Uncapped and not a null agent (one with identically zero utilities, whose
// bundle value is zero under every allocation). Only such agents envy.
bool can_envy(const MarketState& s, int i);

struct EnvyWitness {
  int envious;
  int envied;
  friend bool operator==(const EnvyWitness&, const EnvyWitness&) = default;
};

struct Ef1Verdict {
  bool ok = true;
  std::optional<EnvyWitness> witness;
};

// eps-p-EF1: for every agent i that can envy and every k != i with a
// nonempty bundle, some j in x_k has P_k(x_k - j) <= (1 + eps) P_i(x_i).
// The first violating pair in (i, k) index order is reported.
Ef1Verdict is_eps_p_ef1(const MarketState& s, const Rat& eps);

// Envy-capable agent of minimum bundle value, lowest index on ties. Agents
// flagged in `skip` are ignored.
std::optional<int> least_spending_uncapped(const MarketState& s, const std::vector<bool>& skip = {});

// alpha_i == u_{i,j,m+1} / p_j with a positive numerator.
bool is_lower_tight(const MarketState& s, int i, int j);
// alpha_i == u_{i,j,m} / p_j with m >= 1 and a positive numerator.
bool is_upper_tight(const MarketState& s, int i, int j);

struct TightEdge {
  enum class Direction { AgentToGood, GoodToAgent };
  Direction direction;
  int agent;
  int good;
  friend bool operator==(const TightEdge&, const TightEdge&) = default;
};

std::vector<TightEdge> tight_graph(const MarketState& s);

// Human-readable descriptions of every broken interval condition.
std::vector<std::string> mbb_interval_violations(const MarketState& s);
// Goods whose copies are not all allocated exactly once.
std::vector<std::string> conservation_violations(const MarketState& s);
// Pairs where moving one copy of j from i to k would raise sum_i u_i / alpha_i.
std::vector<std::string> welfare_optimality_violations(const MarketState& s);

}  // namespace nsw
