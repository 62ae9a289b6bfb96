#pragma once

// Price-and-swap local search: greedy initialization, improving-path swaps
// along the tight graph and uniform price increases on the reachable set.
// The result is a 4 eps-p-EF1 allocation for the capped, rounded instance.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nsw/instance.hpp"
#include "nsw/market.hpp"
#include "nsw/rat.hpp"

namespace nsw {

// Alternating path a_0 = i, g_1, a_1, ..., g_h, a_h. goods[l - 1] is g_l.
struct ImprovingPath {
  std::vector<int> agents;
  std::vector<int> goods;

  int length() const { return static_cast<int>(goods.size()); }
  friend bool operator==(const ImprovingPath&, const ImprovingPath&) = default;
};

struct ReachableSet {
  std::vector<bool> agents;
  std::vector<bool> goods;

  friend bool operator==(const ReachableSet&, const ReachableSet&) = default;
};

struct PriceStep {
  int least_spender = -1;
  ReachableSet reachable;
  ExtRat beta1;
  ExtRat beta2;
  ExtRat beta3;
  ExtRat beta4;
  ExtRat beta;
  bool terminated = false;
};

struct SwapStep {
  int least_spender = -1;
  ImprovingPath path;
  // Index of the agent at which the swap walk stopped; 0 means it reached i.
  int h_prime = 0;
  // (1 + eps) P_i(x_i) at the start of the walk.
  Rat threshold;
};

class IterationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TerminalKind { Ef1Check, Beta3Break };

struct SolverEvent {
  enum class Kind { Init, Swap, PriceIncrease };
  Kind kind = Kind::Init;
  std::int64_t iteration = 0;
  const MarketState* before = nullptr;
  const MarketState* after = nullptr;
  const SwapStep* swap = nullptr;
  const PriceStep* price = nullptr;
};

struct SolveOptions {
  // Called after initialization and after every swap walk or price increase.
  // Setting it makes the solver copy the state before each event.
  std::function<void(const SolverEvent&)> observer;
};

struct SolverOutput {
  MarketState state;
  Rat epsilon;
  std::int64_t iterations = 0;
  std::int64_t swap_events = 0;
  std::int64_t copy_moves = 0;
  std::int64_t price_increases = 0;
  TerminalKind terminal = TerminalKind::Ef1Check;
  std::int64_t iteration_cap = 0;
};

// Assigns copies good by good, each to an agent with maximum next marginal
// utility. Ties go to the agent holding fewer items, then the lower index.
// p_j is the marginal of the last copy; every alpha_i is 1.
MarketState greedy_init(std::shared_ptr<const RoundedInstance> inst);

// BFS over the tight graph from agent i for a path ending at an agent a_h with
// P_{a_h}(x_{a_h} - g_h) > (1 + eps) P_i(x_i).
std::optional<ImprovingPath> find_improving_path(const MarketState& s, int i, const Rat& eps);

// Moves g_l from a_l to a_{l-1} for l = h, h-1, ... while the agent just
// passed still envies-up-to-one above the threshold. Returns h'.
int execute_swaps(MarketState& s, const ImprovingPath& path, const Rat& eps);

ReachableSet reachable_set(const MarketState& s, int i);

// Computes beta_1..beta_4 for least spender i and reachable set S, scales
// prices in S by beta and MBB ratios in S by 1/beta.
PriceStep price_increase(MarketState& s, int i, const ReachableSet& reach);

SolverOutput solve(std::shared_ptr<const RoundedInstance> inst, const SolveOptions& options = {});
SolverOutput solve(const Instance& inst, const Rat& eps, const SolveOptions& options = {});

}  // namespace nsw
