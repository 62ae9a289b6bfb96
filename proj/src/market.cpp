#include "nsw/market.hpp"

#include <stdexcept>

namespace nsw {

namespace {

std::string pair_name(int i, int j) {
  return "(agent " + std::to_string(i + 1) + ", good " + std::to_string(j + 1) + ")";
}

// u / p as a bound of the interval condition, +inf when p is zero.
ExtRat ratio(const Rat& u, const Rat& p) {
  if (u.is_zero()) return Rat(0);
  if (p.is_zero()) return ExtRat::infinity();
  return u / p;
}

}  // namespace

MarketState::MarketState(std::shared_ptr<const RoundedInstance> inst)
    : inst_(std::move(inst)),
      mult_(inst_->agents(), std::vector<int>(inst_->goods(), 0)),
      price_(inst_->goods(), Rat(0)),
      mbb_(inst_->agents(), Rat(1)) {}

void MarketState::set_allocation(Allocation mult) {
  if (static_cast<int>(mult.size()) != agents()) {
    throw std::invalid_argument("allocation has wrong number of agents");
  }
  for (const auto& row : mult) {
    if (static_cast<int>(row.size()) != goods()) {
      throw std::invalid_argument("allocation has wrong number of goods");
    }
    for (int c : row) {
      if (c < 0) throw std::invalid_argument("negative multiplicity in allocation");
    }
  }
  mult_ = std::move(mult);
}

void MarketState::move_copy(int j, int from, int to) {
  if (mult_[from][j] < 1) {
    throw std::logic_error("move_copy: agent " + std::to_string(from + 1) + " holds no copy of good " +
                           std::to_string(j + 1));
  }
  --mult_[from][j];
  ++mult_[to][j];
}

const Rat& MarketState::next_utility(int i, int j) const {
  return inst_->valuation.marginal(i, j, mult_[i][j] + 1);
}

const Rat& MarketState::last_utility(int i, int j) const {
  return inst_->valuation.marginal(i, j, mult_[i][j]);
}

Rat MarketState::utility(int i) const { return inst_->valuation.bundle_utility(i, mult_[i]); }

int MarketState::item_count(int i) const {
  int total = 0;
  for (int c : mult_[i]) total += c;
  return total;
}

Rat bundle_value(const MarketState& s, int i) {
  if (s.mbb(i).sign() <= 0) {
    throw std::logic_error("non-positive MBB ratio for agent " + std::to_string(i + 1));
  }
  return s.utility(i) / s.mbb(i);
}

Rat bundle_value_minus_one(const MarketState& s, int k, int j) {
  if (s.multiplicity(k, j) < 1) {
    throw std::invalid_argument("agent " + std::to_string(k + 1) + " holds no copy of good " +
                                std::to_string(j + 1));
  }
  return bundle_value(s, k) - s.last_utility(k, j) / s.mbb(k);
}

std::optional<Rat> min_value_minus_one(const MarketState& s, int k) {
  // Removing the copy with the largest last marginal minimizes the rest.
  std::optional<Rat> best_drop;
  for (int j = 0; j < s.goods(); ++j) {
    if (s.multiplicity(k, j) < 1) continue;
    const Rat& drop = s.last_utility(k, j);
    if (!best_drop || drop > *best_drop) best_drop = drop;
  }
  if (!best_drop) return std::nullopt;
  return (s.utility(k) - *best_drop) / s.mbb(k);
}

bool is_capped_agent(const MarketState& s, int i) {
  const Cap& cap = s.instance().values.caps[i];
  return cap.has_value() && s.utility(i) >= *cap;
}

bool can_envy(const MarketState& s, int i) {
  return !is_capped_agent(s, i) && !s.instance().values.is_null_agent(i);
}

Ef1Verdict is_eps_p_ef1(const MarketState& s, const Rat& eps) {
  const int n = s.agents();
  std::vector<std::optional<Rat>> worst(n);
  for (int k = 0; k < n; ++k) worst[k] = min_value_minus_one(s, k);
  const Rat factor = Rat(1) + eps;
  for (int i = 0; i < n; ++i) {
    if (!can_envy(s, i)) continue;
    const Rat threshold = factor * bundle_value(s, i);
    for (int k = 0; k < n; ++k) {
      if (k == i || !worst[k]) continue;
      if (*worst[k] > threshold) return {false, EnvyWitness{i, k}};
    }
  }
  return {};
}

std::optional<int> least_spending_uncapped(const MarketState& s, const std::vector<bool>& skip) {
  std::optional<int> best;
  Rat best_value;
  for (int i = 0; i < s.agents(); ++i) {
    if (!skip.empty() && skip[i]) continue;
    if (!can_envy(s, i)) continue;
    Rat v = bundle_value(s, i);
    if (!best || v < best_value) {
      best = i;
      best_value = std::move(v);
    }
  }
  return best;
}

bool is_lower_tight(const MarketState& s, int i, int j) {
  const Rat& u = s.next_utility(i, j);
  if (u.is_zero() || s.price(j).is_zero()) return false;
  return s.mbb(i) * s.price(j) == u;
}

bool is_upper_tight(const MarketState& s, int i, int j) {
  if (s.multiplicity(i, j) < 1) return false;
  const Rat& u = s.last_utility(i, j);
  if (u.is_zero() || s.price(j).is_zero()) return false;
  return s.mbb(i) * s.price(j) == u;
}

std::vector<TightEdge> tight_graph(const MarketState& s) {
  std::vector<TightEdge> edges;
  for (int i = 0; i < s.agents(); ++i) {
    for (int j = 0; j < s.goods(); ++j) {
      if (is_lower_tight(s, i, j)) edges.push_back({TightEdge::Direction::AgentToGood, i, j});
      if (is_upper_tight(s, i, j)) edges.push_back({TightEdge::Direction::GoodToAgent, i, j});
    }
  }
  return edges;
}

std::vector<std::string> mbb_interval_violations(const MarketState& s) {
  std::vector<std::string> out;
  const auto& inst = s.instance().values;
  for (int i = 0; i < s.agents(); ++i) {
    const ExtRat alpha = s.mbb(i);
    if (s.mbb(i).sign() <= 0) {
      out.push_back("non-positive MBB ratio for agent " + std::to_string(i + 1));
      continue;
    }
    for (int j = 0; j < s.goods(); ++j) {
      const int m = s.multiplicity(i, j);
      const ExtRat lower = m == inst.copies[j] ? ExtRat(Rat(0)) : ratio(s.next_utility(i, j), s.price(j));
      ExtRat upper = ExtRat::infinity();
      if (m > 0 && !s.price(j).is_zero()) upper = s.last_utility(i, j) / s.price(j);
      if (lower > alpha) {
        out.push_back("lower bound " + lower.str() + " exceeds alpha " + alpha.str() + " at " + pair_name(i, j));
      }
      if (alpha > upper) {
        out.push_back("alpha " + alpha.str() + " exceeds upper bound " + upper.str() + " at " + pair_name(i, j));
      }
    }
  }
  return out;
}

std::vector<std::string> conservation_violations(const MarketState& s) {
  std::vector<std::string> out;
  const auto& copies = s.instance().values.copies;
  for (int j = 0; j < s.goods(); ++j) {
    long total = 0;
    for (int i = 0; i < s.agents(); ++i) total += s.multiplicity(i, j);
    if (total != copies[j]) {
      out.push_back("good " + std::to_string(j + 1) + " has " + std::to_string(total) + " copies allocated, expected " +
                    std::to_string(copies[j]));
    }
  }
  return out;
}

std::vector<std::string> welfare_optimality_violations(const MarketState& s) {
  std::vector<std::string> out;
  for (int j = 0; j < s.goods(); ++j) {
    for (int i = 0; i < s.agents(); ++i) {
      if (s.multiplicity(i, j) < 1) continue;
      const Rat loss = s.last_utility(i, j) / s.mbb(i);
      for (int k = 0; k < s.agents(); ++k) {
        if (k == i) continue;
        const Rat gain = s.next_utility(k, j) / s.mbb(k);
        if (gain > loss) {
          out.push_back("moving good " + std::to_string(j + 1) + " from agent " + std::to_string(i + 1) +
                        " to agent " + std::to_string(k + 1) + " gains scaled welfare");
        }
      }
    }
  }
  return out;
}

}  // namespace nsw
