#include "nsw/certify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nsw {

namespace {

Rat bundle_utility(const Instance& inst, int i, const std::vector<int>& mult) {
  Rat total(0);
  for (int j = 0; j < inst.goods(); ++j) {
    for (int l = 0; l < mult[j]; ++l) total += inst.utils[i][j][l];
  }
  return total;
}

Rat product_of(const std::vector<Rat>& values) {
  Rat p(1);
  for (const Rat& v : values) p *= v;
  return p;
}

}  // namespace

Rat nsw_nth_power(const Instance& inst, const Allocation& x) {
  Rat product(1);
  for (int i = 0; i < inst.agents(); ++i) {
    Rat u = bundle_utility(inst, i, x[i]);
    if (inst.caps[i] && *inst.caps[i] < u) u = *inst.caps[i];
    product *= u;
  }
  return product;
}

double nth_root(const Rat& value, int n) {
  if (value.sign() <= 0) return 0.0;
  return std::exp(value.log() / n);
}

IndividualGuarantee individual_guarantee(const MarketState& s) {
  const Valuation& val = s.instance().valuation;
  const int n = s.agents();
  IndividualGuarantee out;
  for (int i = 0; i < n; ++i) {
    if (is_capped_agent(s, i)) continue;
    const Rat own = s.utility(i);
    for (int k = 0; k < n; ++k) {
      if (k == i || s.item_count(k) == 0) continue;
      // u_i(x_k - j) is smallest when the dropped copy is the one agent i
      // values most as the last copy of its good.
      const auto& mult = s.allocation()[k];
      const Rat whole = val.bundle_utility(i, mult);
      Rat best_drop(0);
      for (int j = 0; j < s.goods(); ++j) {
        if (mult[j] > 0) best_drop = std::max(best_drop, val.marginal(i, j, mult[j]));
      }
      const Rat rest = whole - best_drop;
      ExtRat ratio;
      if (own.is_zero()) {
        ratio = rest.is_zero() ? ExtRat(Rat(0)) : ExtRat::infinity();
      } else {
        ratio = rest / own;
      }
      if (!out.witness || ratio > out.worst_ratio) {
        out.worst_ratio = ratio;
        out.witness = EnvyWitness{i, k};
      }
    }
  }
  return out;
}

AuxiliaryBound auxiliary_upper_bound(const Instance& inst, const Allocation& x, const std::vector<Rat>& alpha) {
  const int n = inst.agents();
  AuxiliaryBound out;
  for (int i = 0; i < n; ++i) {
    if (alpha[i].sign() <= 0) throw std::invalid_argument("MBB ratios must be positive");
    for (int j = 0; j < inst.goods(); ++j) {
      for (int l = 0; l < x[i][j]; ++l) out.sorted_item_utils.push_back(inst.utils[i][j][l] / alpha[i]);
    }
    out.sorted_caps.push_back(inst.caps[i] ? ExtRat(*inst.caps[i] / alpha[i]) : ExtRat::infinity());
  }
  std::sort(out.sorted_item_utils.begin(), out.sorted_item_utils.end(), std::greater<>());
  std::sort(out.sorted_caps.begin(), out.sorted_caps.end(), std::greater<>());

  bool null_agent = false;
  for (int i = 0; i < n; ++i) null_agent = null_agent || inst.is_null_agent(i);
  const int items = static_cast<int>(out.sorted_item_utils.size());
  if (null_agent || inst.total_items() < n) {
    out.degenerate = true;
    out.bound_nth_power = Rat(0);
    return out;
  }

  const auto& u = out.sorted_item_utils;
  const auto& c = out.sorted_caps;
  // 1-based accessors matching the usual statement of the bound.
  auto u_at = [&](int idx) -> const Rat& { return u[idx - 1]; };
  auto c_at = [&](int idx) -> const ExtRat& { return c[idx - 1]; };
  int finite_caps = 0;
  for (const ExtRat& cap : c) finite_caps += cap.is_infinite() ? 0 : 1;

  std::vector<Rat> suffix_u(items + 2, Rat(0));  // suffix_u[h] = sum_{j > h} u_j
  for (int j = items; j >= 1; --j) suffix_u[j - 1] = suffix_u[j] + u_at(j);

  std::optional<Rat> best;
  Rat tail_caps(0);  // sum_{i > n - k} c_i
  Rat tail_caps_product(1);
  for (int k = 0; k <= finite_caps; ++k) {
    if (k > 0) {
      tail_caps += c_at(n - k + 1).value();
      tail_caps_product *= c_at(n - k + 1).value();
    }
    Rat head_product(1);  // prod_{i <= h} min(c_i, u_i)
    for (int h = 0; h < n - k && h <= items; ++h) {
      if (h > 0) head_product *= c_at(h).is_infinite() ? u_at(h) : std::min(c_at(h).value(), u_at(h));
      const int rest = n - h - k;
      const Rat delta = (suffix_u[h] - tail_caps) / Rat(rest);
      if (h >= 1 && !(delta < u_at(h))) continue;
      if (h + 1 <= items && !(u_at(h + 1) <= delta)) continue;
      if (k >= 1 && !(c_at(n - k + 1) <= ExtRat(delta))) continue;
      if (!(ExtRat(delta) < c_at(n - k))) continue;
      Rat bound = head_product * pow(delta, rest) * tail_caps_product;
      if (!best || bound < *best) {
        best = bound;
        out.h = h;
        out.k = k;
        out.delta = delta;
      }
    }
  }
  if (finite_caps == n) {
    Rat all_caps(1);
    for (const ExtRat& cap : c) all_caps *= cap.value();
    if (!best || all_caps < *best) {
      best = all_caps;
      out.from_caps_only = true;
    }
  }
  if (!best) throw std::logic_error("auxiliary bound: no valid (h, k) pair");
  out.bound_nth_power = *best * product_of(alpha);
  return out;
}

AuxiliaryBound auxiliary_upper_bound(const MarketState& s) {
  return auxiliary_upper_bound(s.instance().values, s.allocation(), s.mbbs());
}

BmvBound bmv_bound(const Instance& inst, const std::vector<Rat>& alpha, const std::vector<int>& scan_order) {
  const int n = inst.agents();
  const int m = inst.goods();
  for (int j = 0; j < m; ++j) {
    if (inst.copies[j] != 1) throw std::invalid_argument("BMV bound needs single-copy goods");
  }
  for (int i = 0; i < n; ++i) {
    if (inst.caps[i]) throw std::invalid_argument("BMV bound needs uncapped agents");
    if (alpha[i].sign() <= 0) throw std::invalid_argument("MBB ratios must be positive");
  }
  std::vector<int> order = scan_order;
  if (order.empty()) {
    for (int j = 0; j < m; ++j) order.push_back(j);
  }

  std::vector<Rat> scaled(m, Rat(0));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) scaled[j] = std::max(scaled[j], inst.utils[i][j][0] / alpha[i]);
  }

  BmvBound out;
  out.in_s.assign(m, true);
  Rat sum_s(0);
  for (const Rat& v : scaled) sum_s += v;
  int removed = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    const Rat average = sum_s / Rat(n - removed);
    for (int j : order) {
      if (!out.in_s[j] || !(scaled[j] > average)) continue;
      out.in_s[j] = false;
      sum_s -= scaled[j];
      ++removed;
      changed = true;
      break;
    }
  }
  out.average = sum_s / Rat(n - removed);
  Rat bound = pow(out.average, n - removed);
  for (int j = 0; j < m; ++j) {
    if (!out.in_s[j]) bound *= scaled[j];
  }
  out.bound_nth_power = bound * product_of(alpha);
  return out;
}

void check_delta_large(const Instance& inst, const Rat& delta) {
  const int n = inst.agents();
  for (int i = 0; i < n; ++i) {
    if (inst.caps[i]) throw NotLargeMarket("agent " + std::to_string(i + 1) + " is capped");
    Rat total(0);
    for (const auto& good : inst.utils[i]) {
      for (const Rat& u : good) total += u;
    }
    const Rat limit = delta * total / Rat(n);
    for (int j = 0; j < inst.goods(); ++j) {
      for (std::size_t l = 0; l < inst.utils[i][j].size(); ++l) {
        if (inst.utils[i][j][l] > limit) {
          throw NotLargeMarket("utility at (agent " + std::to_string(i + 1) + ", good " + std::to_string(j + 1) +
                               ", copy " + std::to_string(l + 1) + ") exceeds delta * u_i(G) / n");
        }
      }
    }
  }
}

LargeMarketCheck large_market_check(const MarketState& s, const Rat& delta) {
  if (delta.sign() <= 0 || delta >= Rat(1)) throw std::invalid_argument("delta must lie in (0, 1)");
  check_delta_large(s.instance().values, delta);
  const int n = s.agents();
  LargeMarketCheck out;
  out.factor = (Rat(1) + Rat(4) * s.instance().epsilon) / (Rat(1) - delta);
  Rat sum(0);
  Rat product(1);
  for (int i = 0; i < n; ++i) {
    const Rat p = bundle_value(s, i);
    sum += p;
    product *= p;
  }
  if (product.is_zero()) {
    out.ok = false;
    return out;
  }
  out.ratio_nth_power = pow(sum / Rat(n), n) / product;
  out.ok = out.ratio_nth_power <= pow(out.factor, n);
  return out;
}

double theoretical_factor(double gamma) { return std::exp(std::exp(-1.0 / (1.0 + gamma))); }

Certificate certify(const MarketState& s) {
  const RoundedInstance& inst = s.instance();
  const int n = s.agents();
  const Rat gamma = Rat(4) * inst.epsilon;
  Certificate out;
  out.market_ok = mbb_interval_violations(s).empty() && conservation_violations(s).empty();
  out.ef1_ok = is_eps_p_ef1(s, gamma).ok;
  out.individual = individual_guarantee(s);
  out.individual_ok = out.individual.worst_ratio <= ExtRat(Rat(2) + gamma);
  out.auxiliary = auxiliary_upper_bound(s);
  out.upper_bound_nth_power = out.auxiliary.bound_nth_power;
  out.alg_nsw_nth_power = nsw_nth_power(inst.values, s.allocation());
  if (out.alg_nsw_nth_power.is_zero()) {
    out.ratio_nth_power = out.upper_bound_nth_power.is_zero() ? ExtRat(Rat(1)) : ExtRat::infinity();
  } else {
    out.ratio_nth_power = out.upper_bound_nth_power / out.alg_nsw_nth_power;
  }
  out.ratio = out.ratio_nth_power.is_infinite() ? HUGE_VAL : nth_root(out.ratio_nth_power.value(), n);
  out.theoretical_cap = inst.r.to_double() * theoretical_factor(gamma.to_double());
  out.within_cap = out.ratio <= out.theoretical_cap + 1e-9;
  return out;
}

}  // namespace nsw
