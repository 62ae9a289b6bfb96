#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nsw/certify.hpp"
#include "nsw/generators.hpp"
#include "nsw/instance.hpp"
#include "nsw/market.hpp"
#include "nsw/powers.hpp"
#include "nsw/solver.hpp"

namespace nsw::testing {

inline Rat R(const char* text) { return Rat::parse(text); }

inline std::shared_ptr<const RoundedInstance> rounded(const Instance& inst, const Rat& eps) {
  return std::make_shared<const RoundedInstance>(cap_and_round(inst, eps));
}

inline Instance single_copy_instance(const std::vector<std::vector<long>>& utils,
                                     const std::vector<Cap>& caps = {}) {
  Instance inst;
  const int n = static_cast<int>(utils.size());
  const int m = static_cast<int>(utils[0].size());
  inst.copies.assign(m, 1);
  inst.caps = caps.empty() ? std::vector<Cap>(n, std::nullopt) : caps;
  inst.utils.assign(n, std::vector<std::vector<Rat>>(m));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) inst.utils[i][j] = {Rat(utils[i][j])};
  }
  return inst;
}

// max over agents holding an item of min_j P_k(x_k - j).
inline std::optional<Rat> worst_violator(const MarketState& s) {
  std::optional<Rat> worst;
  for (int k = 0; k < s.agents(); ++k) {
    auto v = min_value_minus_one(s, k);
    if (v && (!worst || *v > *worst)) worst = v;
  }
  return worst;
}

inline std::optional<Rat> least_spender_value(const MarketState& s) {
  auto i = least_spending_uncapped(s);
  if (!i) return std::nullopt;
  return bundle_value(s, *i);
}

// Observes a solver run and records every broken invariant.
class InvariantChecker {
 public:
  SolveOptions options() {
    SolveOptions o;
    o.observer = [this](const SolverEvent& ev) { observe(ev); };
    return o;
  }

  // Checks that need the finished output.
  void finish(const SolverOutput& out) {
    if (out.iterations > out.iteration_cap) fail("iterations exceed the cap");
    if (!is_eps_p_ef1(out.state, Rat(4) * out.epsilon).ok) fail("output is not 4eps-p-EF1");
  }

  const std::vector<std::string>& failures() const { return failures_; }
  bool ok() const { return failures_.empty(); }
  std::int64_t events() const { return events_; }
  std::int64_t swap_events() const { return swaps_; }
  std::int64_t price_events() const { return prices_; }

 private:
  void fail(const std::string& what) {
    std::ostringstream ss;
    ss << "event " << events_ << ": " << what;
    failures_.push_back(ss.str());
  }

  void observe(const SolverEvent& ev) {
    ++events_;
    const MarketState& before = *ev.before;
    const MarketState& after = *ev.after;
    for (const auto& v : mbb_interval_violations(after)) fail("interval condition: " + v);
    for (const auto& v : conservation_violations(after)) fail("conservation: " + v);
    for (const auto& v : welfare_optimality_violations(after)) fail("welfare optimality: " + v);
    const bool terminal = ev.price && ev.price->terminated;
    if (!terminal) check_powers(after);

    // Least spender value never decreases.
    const auto lo_before = least_spender_value(before);
    const auto lo_after = least_spender_value(after);
    if (lo_before && lo_after && *lo_after < *lo_before) fail("least spender value decreased");

    // Worst violator does not grow while it is above (1 + eps) times the
    // least spender value.
    const Rat factor = Rat(1) + after.instance().epsilon;
    const auto w_before = worst_violator(before);
    const auto w_after = worst_violator(after);
    if (w_before && lo_before && *w_before > factor * *lo_before && w_after && *w_after > *w_before) {
      fail("worst violator increased");
    }

    if (ev.swap) {
      ++swaps_;
      check_swap(before, after, *ev.swap);
      if (ev.swap->least_spender == last_spender_) {
        ++same_spender_run_;
      } else {
        same_spender_run_ = 1;
        last_spender_ = ev.swap->least_spender;
      }
      const long n = after.agents();
      const long m = after.instance().values.total_items();
      if (same_spender_run_ > n * n * m) fail("too many consecutive swaps with one least spender");
    } else if (ev.price) {
      ++prices_;
      same_spender_run_ = 0;
      last_spender_ = -1;
      check_price(*ev.price);
    }
  }

  void check_powers(const MarketState& s) {
    const Rat& r = s.instance().r;
    for (int j = 0; j < s.goods(); ++j) {
      if (!s.price(j).is_zero() && !exact_power_exponent(s.price(j), r)) {
        fail("price of good " + std::to_string(j + 1) + " is not a power of r");
      }
    }
    for (int i = 0; i < s.agents(); ++i) {
      if (!exact_power_exponent(s.mbb(i), r)) fail("MBB of agent " + std::to_string(i + 1) + " is not a power of r");
    }
  }

  void check_price(const PriceStep& p) {
    const ExtRat expected = min(min(p.beta1, p.beta2), min(max(ExtRat(Rat(1)), p.beta3), p.beta4));
    if (p.beta != expected) fail("beta is not min(beta1, beta2, max(1, beta3), beta4)");
    if (p.terminated != (p.beta3 <= min(min(p.beta1, p.beta2), p.beta4))) fail("termination flag mismatch");
    if (p.beta < ExtRat(Rat(1))) fail("beta below one");
  }

  void check_swap(const MarketState& x, const MarketState& y, const SwapStep& sw) {
    const auto& a = sw.path.agents;
    const auto& g = sw.path.goods;
    const int h = sw.path.length();
    const int hp = sw.h_prime;
    const Rat& thr = sw.threshold;
    if (h < 1 || hp < 0 || hp >= h) {
      fail("bad swap indices");
      return;
    }
    // Allocation changes along the path.
    auto expect_row = [&](int l, int plus, int minus) {
      std::vector<int> row = x.allocation()[a[l]];
      if (plus >= 0) ++row[plus];
      if (minus >= 0) --row[minus];
      if (row != y.allocation()[a[l]]) fail("unexpected bundle change on the swap path");
    };
    for (int l = 0; l < hp; ++l) expect_row(l, -1, -1);
    expect_row(hp, g[hp], -1);
    for (int l = hp + 1; l < h; ++l) expect_row(l, g[l], g[l - 1]);
    expect_row(h, -1, g[h - 1]);

    // The last agent on the path stays above the threshold.
    const Rat ph_before = bundle_value(x, a[h]);
    const Rat ph_after = bundle_value(y, a[h]);
    if (!(ph_before >= ph_after && ph_after > thr)) fail("swap: last agent bound");
    // The agent where the walk stopped, or the least spender itself.
    if (hp >= 1) {
      if (bundle_value_minus_one(y, a[hp], g[hp - 1]) > thr) fail("swap: stopping agent bound");
    } else if (bundle_value(x, a[0]) > thr) {
      fail("swap: least spender bound");
    }
    // Agents that both gave and received a copy.
    for (int l = hp + 1; l < h; ++l) {
      if (!(bundle_value(y, a[l]) > thr)) fail("swap: inner agent value");
      if (bundle_value_minus_one(y, a[l], g[l]) > thr) fail("swap: inner agent minus received good");
    }
    // Agents before the stopping point.
    for (int l = 1; l < hp; ++l) {
      if (bundle_value_minus_one(y, a[l], g[l - 1]) > thr) fail("swap: untouched agent bound");
    }
  }

  std::vector<std::string> failures_;
  std::int64_t events_ = 0;
  std::int64_t swaps_ = 0;
  std::int64_t prices_ = 0;
  int last_spender_ = -1;
  long same_spender_run_ = 0;
};

}  // namespace nsw::testing
