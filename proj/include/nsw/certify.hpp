#pragma once

// Post-hoc checks and upper bounds for solver outputs. Exact values are
// n-th powers of Nash social welfare, so no roots are ever taken exactly.

#include <optional>
#include <stdexcept>
#include <vector>

#include "nsw/instance.hpp"
#include "nsw/market.hpp"
#include "nsw/rat.hpp"
#include "nsw/solver.hpp"

namespace nsw {

// prod_i min(c_i, u_i(x_i)).
Rat nsw_nth_power(const Instance& inst, const Allocation& x);

// (value)^(1/n) in double precision; 0 for a zero value.
double nth_root(const Rat& value, int n);

struct IndividualGuarantee {
  // max over uncapped i and k != i with x_k nonempty of
  // min_{j in x_k} u_i(x_k - j) / u_i(x_i). Zero over an empty pair set.
  ExtRat worst_ratio;
  std::optional<EnvyWitness> witness;
};

// Uses the rounded utilities the solver worked with.
IndividualGuarantee individual_guarantee(const MarketState& s);

struct AuxiliaryBound {
  // Allocated copies valued u_{i,j,l} / alpha_owner, descending.
  std::vector<Rat> sorted_item_utils;
  // c_i / alpha_i descending; uncapped agents are +inf and come first.
  std::vector<ExtRat> sorted_caps;
  int h = 0;
  int k = 0;
  Rat delta;
  // Upper bound on OPT^n in unscaled units (multiplied by prod alpha_i).
  Rat bound_nth_power;
  // A null agent or fewer copies than agents forces OPT = 0; the bound is 0
  // and h, k, delta are meaningless.
  bool degenerate = false;
  // The minimum came from prod_i c_i (every agent capped) rather than an
  // (h, k) pair.
  bool from_caps_only = false;
};

AuxiliaryBound auxiliary_upper_bound(const Instance& inst, const Allocation& x, const std::vector<Rat>& alpha);
AuxiliaryBound auxiliary_upper_bound(const MarketState& s);

struct BmvBound {
  std::vector<bool> in_s;
  Rat average;
  Rat bound_nth_power;
};

// Single-copy uncapped instances only. Removes goods from S while some good
// has scaled value max_i u_ij / alpha_i above the average a(S). Goods are
// examined in `scan_order` (default: index order), restarting after each
// removal.
BmvBound bmv_bound(const Instance& inst, const std::vector<Rat>& alpha, const std::vector<int>& scan_order = {});

class NotLargeMarket : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws NotLargeMarket naming the first (i, j, l) with
// u_{i,j,l} > delta * u_i(G) / n, or the first capped agent.
void check_delta_large(const Instance& inst, const Rat& delta);

struct LargeMarketCheck {
  // ((sum_i P_i / n)^n) / prod_i P_i: bound on (OPT / ALG)^n.
  Rat ratio_nth_power;
  // (1 + 4 eps) / (1 - delta).
  Rat factor;
  bool ok = false;
};

// Checks delta-largeness of the rounded instance, then compares the
// social-welfare bound with (1 + 4 eps) / (1 - delta).
LargeMarketCheck large_market_check(const MarketState& s, const Rat& delta);

// exp(exp(-1 / (1 + gamma))).
double theoretical_factor(double gamma);

struct Certificate {
  // The interval condition between prices, MBB ratios and the allocation
  // holds; the upper bound is meaningless otherwise.
  bool market_ok = false;
  bool ef1_ok = false;
  IndividualGuarantee individual;
  bool individual_ok = false;
  AuxiliaryBound auxiliary;
  Rat upper_bound_nth_power;
  Rat alg_nsw_nth_power;
  // upper / alg; 1 when both are zero, +inf when only alg is zero.
  ExtRat ratio_nth_power;
  double ratio = 0.0;
  double theoretical_cap = 0.0;
  bool within_cap = false;

  bool passed() const { return market_ok && ef1_ok && individual_ok && within_cap; }
};

Certificate certify(const MarketState& s);
inline Certificate certify(const SolverOutput& out) { return certify(out.state); }

}  // namespace nsw
