#include "nsw/solver.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace nsw {

MarketState greedy_init(std::shared_ptr<const RoundedInstance> inst) {
  MarketState s(inst);
  const int n = s.agents();
  std::vector<int> held(n, 0);
  for (int j = 0; j < s.goods(); ++j) {
    const int copies = inst->values.copies[j];
    for (int l = 0; l < copies; ++l) {
      int best = 0;
      for (int i = 1; i < n; ++i) {
        const Rat& u = s.next_utility(i, j);
        const Rat& b = s.next_utility(best, j);
        if (u > b || (u == b && held[i] < held[best])) best = i;
      }
      if (l + 1 == copies) s.set_price(j, s.next_utility(best, j));
      s.assign_copy(j, best);
      ++held[best];
    }
  }
  return s;
}

namespace {

bool is_tree_ancestor(int agent, int good, const std::vector<int>& good_parent, const std::vector<int>& agent_parent) {
  int a = good_parent[good];
  while (a >= 0) {
    if (a == agent) return true;
    const int g = agent_parent[a];
    if (g < 0) break;
    a = good_parent[g];
  }
  return false;
}

}  // namespace

std::optional<ImprovingPath> find_improving_path(const MarketState& s, int i, const Rat& eps) {
  const int n = s.agents();
  const int m = s.goods();
  const Rat threshold = (Rat(1) + eps) * bundle_value(s, i);
  std::vector<int> agent_parent(n, -1);  // good through which the agent was reached
  std::vector<int> good_parent(m, -1);   // agent through which the good was reached
  std::vector<bool> seen_agent(n, false);
  std::vector<bool> seen_good(m, false);
  std::deque<int> queue{i};
  seen_agent[i] = true;

  auto build = [&](int last_good, int last_agent) {
    ImprovingPath path;
    path.agents.push_back(last_agent);
    int g = last_good;
    while (g >= 0) {
      path.goods.push_back(g);
      const int a = good_parent[g];
      path.agents.push_back(a);
      g = agent_parent[a];
    }
    std::reverse(path.agents.begin(), path.agents.end());
    std::reverse(path.goods.begin(), path.goods.end());
    return path;
  };

  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int g = 0; g < m; ++g) {
      if (seen_good[g] || !is_lower_tight(s, a, g)) continue;
      seen_good[g] = true;
      good_parent[g] = a;
      for (int b = 0; b < n; ++b) {
        if (b == i || !is_upper_tight(s, b, g)) continue;
        if (seen_agent[b] && is_tree_ancestor(b, g, good_parent, agent_parent)) continue;
        if (bundle_value_minus_one(s, b, g) > threshold) return build(g, b);
        if (!seen_agent[b]) {
          seen_agent[b] = true;
          agent_parent[b] = g;
          queue.push_back(b);
        }
      }
    }
  }
  return std::nullopt;
}

int execute_swaps(MarketState& s, const ImprovingPath& path, const Rat& eps) {
  const Rat threshold = (Rat(1) + eps) * bundle_value(s, path.agents.front());
  int l = path.length();
  do {
    s.move_copy(path.goods[l - 1], path.agents[l], path.agents[l - 1]);
    --l;
  } while (l >= 1 && bundle_value_minus_one(s, path.agents[l], path.goods[l - 1]) > threshold);
  return l;
}

ReachableSet reachable_set(const MarketState& s, int i) {
  const int n = s.agents();
  const int m = s.goods();
  ReachableSet out{std::vector<bool>(n, false), std::vector<bool>(m, false)};
  std::deque<int> queue{i};
  out.agents[i] = true;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int g = 0; g < m; ++g) {
      if (out.goods[g] || !is_lower_tight(s, a, g)) continue;
      out.goods[g] = true;
      for (int b = 0; b < n; ++b) {
        if (out.agents[b] || !is_upper_tight(s, b, g)) continue;
        out.agents[b] = true;
        queue.push_back(b);
      }
    }
  }
  return out;
}

PriceStep price_increase(MarketState& s, int i, const ReachableSet& reach) {
  const int n = s.agents();
  const int m = s.goods();
  const Rat& r = s.instance().r;
  PriceStep step;
  step.least_spender = i;
  step.reachable = reach;

  ExtRat beta1 = ExtRat::infinity();
  ExtRat beta2 = ExtRat::infinity();
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < m; ++j) {
      if (reach.agents[k] && !reach.goods[j]) {
        const Rat& u = s.next_utility(k, j);
        if (u.is_zero() || s.price(j).is_zero()) continue;
        beta1 = min(beta1, ExtRat(s.mbb(k) * s.price(j) / u));
      } else if (!reach.agents[k] && reach.goods[j] && s.multiplicity(k, j) >= 1) {
        const Rat& u = s.last_utility(k, j);
        if (u.is_zero() || s.price(j).is_zero()) continue;
        beta2 = min(beta2, ExtRat(u / (s.price(j) * s.mbb(k))));
      }
    }
  }

  ExtRat beta3 = ExtRat::infinity();
  ExtRat beta4 = ExtRat::infinity();
  const Rat p_i = bundle_value(s, i);
  if (!p_i.is_zero()) {
    std::optional<Rat> worst;
    for (int k = 0; k < n; ++k) {
      if (reach.agents[k]) continue;
      auto v = min_value_minus_one(s, k);
      if (v && (!worst || *v > *worst)) worst = std::move(v);
    }
    beta3 = worst ? ExtRat(*worst / (r * r * p_i)) : ExtRat(Rat(0));
    if (auto h = least_spending_uncapped(s, reach.agents)) {
      beta4 = pow(r, floor_log_ratio(bundle_value(s, *h) / p_i, r));
    }
  }

  step.beta1 = beta1;
  step.beta2 = beta2;
  step.beta3 = beta3;
  step.beta4 = beta4;
  step.beta = min(min(beta1, beta2), min(max(ExtRat(Rat(1)), beta3), beta4));
  step.terminated = beta3 <= min(min(beta1, beta2), beta4);
  if (step.beta.is_infinite()) {
    throw std::logic_error("price increase for agent " + std::to_string(i + 1) + " is unbounded");
  }
  const Rat& beta = step.beta.value();
  for (int j = 0; j < m; ++j) {
    if (reach.goods[j]) s.set_price(j, s.price(j) * beta);
  }
  for (int k = 0; k < n; ++k) {
    if (reach.agents[k]) s.set_mbb(k, s.mbb(k) / beta);
  }
  return step;
}

SolverOutput solve(std::shared_ptr<const RoundedInstance> inst, const SolveOptions& options) {
  const InstanceStats st = stats(*inst);
  SolverOutput out{greedy_init(inst), inst->epsilon};
  out.iteration_cap = st.iteration_cap;
  MarketState& s = out.state;
  const Rat& eps = inst->epsilon;

  std::optional<MarketState> before;
  if (options.observer) {
    SolverEvent ev;
    ev.before = &s;
    ev.after = &s;
    options.observer(ev);
  }

  while (true) {
    if (is_eps_p_ef1(s, eps).ok) {
      out.terminal = TerminalKind::Ef1Check;
      break;
    }
    ++out.iterations;
    if (out.iterations > out.iteration_cap) {
      throw IterationCapExceeded("iteration cap " + std::to_string(out.iteration_cap) + " exceeded");
    }
    const auto least = least_spending_uncapped(s);
    if (!least) throw std::logic_error("EF1 check failed without an envy-capable agent");
    const int i = *least;
    if (options.observer) before = s;

    if (auto path = find_improving_path(s, i, eps)) {
      SwapStep swap{i, *path, 0, (Rat(1) + eps) * bundle_value(s, i)};
      swap.h_prime = execute_swaps(s, *path, eps);
      ++out.swap_events;
      out.copy_moves += path->length() - swap.h_prime;
      if (options.observer) {
        SolverEvent ev{SolverEvent::Kind::Swap, out.iterations, &*before, &s, &swap, nullptr};
        options.observer(ev);
      }
      continue;
    }

    const ReachableSet reach = reachable_set(s, i);
    const PriceStep step = price_increase(s, i, reach);
    ++out.price_increases;
    if (options.observer) {
      SolverEvent ev{SolverEvent::Kind::PriceIncrease, out.iterations, &*before, &s, nullptr, &step};
      options.observer(ev);
    }
    if (step.terminated) {
      out.terminal = TerminalKind::Beta3Break;
      break;
    }
  }
  return out;
}

SolverOutput solve(const Instance& inst, const Rat& eps, const SolveOptions& options) {
  return solve(std::make_shared<const RoundedInstance>(cap_and_round(inst, eps)), options);
}

}  // namespace nsw
