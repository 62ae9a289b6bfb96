#include "nsw/instance.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nsw {

long Instance::total_items() const {
  long total = 0;
  for (int k : copies) total += k;
  return total;
}

bool Instance::is_null_agent(int i) const {
  for (const auto& good : utils[i]) {
    for (const Rat& u : good) {
      if (!u.is_zero()) return false;
    }
  }
  return true;
}

Validation validate(Instance raw) {
  Validation out;
  auto& errors = out.errors;
  const int n = raw.agents();
  const int m = raw.goods();
  if (n < 1) errors.emplace_back("n ≥ 1 required");
  if (m < 1) errors.emplace_back("m ≥ 1 required");
  for (int j = 0; j < m; ++j) {
    if (raw.copies[j] < 1) {
      errors.push_back("copies must be ≥ 1 at good " + std::to_string(j + 1));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (raw.caps[i] && raw.caps[i]->sign() <= 0) {
      errors.push_back("non-positive cap at agent " + std::to_string(i + 1));
    }
  }
  if (static_cast<int>(raw.utils.size()) != n) {
    errors.push_back("utilities list has " + std::to_string(raw.utils.size()) + " agents, expected " +
                     std::to_string(n));
    return out;
  }
  for (int i = 0; i < n; ++i) {
    const std::string agent = "agent " + std::to_string(i + 1);
    if (static_cast<int>(raw.utils[i].size()) != m) {
      errors.push_back("utilities of " + agent + " list " + std::to_string(raw.utils[i].size()) +
                       " goods, expected " + std::to_string(m));
      continue;
    }
    for (int j = 0; j < m; ++j) {
      const std::string where = "(" + agent + ", good " + std::to_string(j + 1) + ")";
      const auto& row = raw.utils[i][j];
      if (raw.copies[j] >= 1 && static_cast<int>(row.size()) != raw.copies[j]) {
        errors.push_back("utilities at " + where + " list " + std::to_string(row.size()) +
                         " copies, expected " + std::to_string(raw.copies[j]));
        continue;
      }
      bool negative = false;
      for (const Rat& u : row) negative = negative || u.sign() < 0;
      if (negative) errors.push_back("negative utility at " + where);
      for (std::size_t l = 1; l < row.size(); ++l) {
        if (row[l] > row[l - 1]) {
          errors.push_back("utilities increasing at " + where);
          break;
        }
      }
    }
  }
  if (errors.empty()) out.instance = std::move(raw);
  return out;
}

void check_epsilon(const Rat& eps) {
  if (eps.sign() <= 0 || eps > Rat(1, 4)) {
    throw ParameterError("epsilon must lie in (0, 1/4], got " + eps.str());
  }
}

Valuation::Valuation(const Instance& inst) {
  const int n = inst.agents();
  const int m = inst.goods();
  prefix_.assign(n, std::vector<std::vector<Rat>>(m));
  marginals_ = inst.utils;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      auto& p = prefix_[i][j];
      p.reserve(inst.copies[j] + 1);
      p.emplace_back(0);
      for (const Rat& u : inst.utils[i][j]) p.push_back(p.back() + u);
    }
  }
}

const Rat& Valuation::marginal(int i, int j, int l) const {
  const auto& row = marginals_[i][j];
  if (l < 1 || l > static_cast<int>(row.size())) return zero_;
  return row[l - 1];
}

Rat Valuation::bundle_utility(int i, const std::vector<int>& mult) const {
  Rat total(0);
  for (std::size_t j = 0; j < mult.size(); ++j) {
    if (mult[j] > 0) total += prefix_[i][j][mult[j]];
  }
  return total;
}

RoundedInstance cap_and_round(const Instance& inst, const Rat& eps) {
  check_epsilon(eps);
  RoundedInstance out;
  out.epsilon = eps;
  out.r = Rat(1) + eps;
  out.values = inst;
  const int n = inst.agents();
  const int m = inst.goods();
  out.utility_exponents.assign(n, std::vector<std::vector<std::optional<PowerOfR>>>(m));
  out.cap_exponents.assign(n, std::nullopt);
  for (int i = 0; i < n; ++i) {
    const Cap& cap = inst.caps[i];
    for (int j = 0; j < m; ++j) {
      auto& exps = out.utility_exponents[i][j];
      auto& vals = out.values.utils[i][j];
      exps.assign(vals.size(), std::nullopt);
      for (std::size_t l = 0; l < vals.size(); ++l) {
        Rat u = inst.utils[i][j][l];
        if (cap && u > *cap) u = *cap;
        if (u.is_zero()) continue;
        exps[l] = next_power_up(u, out.r);
        vals[l] = value(*exps[l], out.r);
      }
    }
    if (cap) {
      out.cap_exponents[i] = next_power_up(*cap, out.r);
      out.values.caps[i] = value(*out.cap_exponents[i], out.r);
    }
  }
  out.valuation = Valuation(out.values);
  return out;
}

InstanceStats stats(const RoundedInstance& inst) {
  InstanceStats s;
  const int n = inst.agents();
  s.total_items = inst.values.total_items();
  std::optional<std::int64_t> lo;
  std::optional<std::int64_t> hi;
  for (const auto& agent : inst.utility_exponents) {
    for (const auto& good : agent) {
      for (const auto& e : good) {
        if (!e) continue;
        if (!lo || e->exponent < *lo) lo = e->exponent;
        if (!hi || e->exponent > *hi) hi = e->exponent;
      }
    }
  }
  s.degenerate = !lo.has_value();
  if (!s.degenerate) {
    s.spread_exponent = *hi - *lo;
    s.utility_spread = pow(inst.r, s.spread_exponent);
  }

  // ceil(N log_r(M U)) with U = r^e is N e + ceil(N log_r M). The second
  // term is read off a float estimate unless it sits near an integer, where
  // M^N is compared against powers of r exactly (or rounded up by one when
  // M^N is too large to form).
  const long nn = static_cast<long>(n);
  const long big_n = nn * nn * nn * s.total_items * s.total_items;
  const std::int64_t spread_part = static_cast<std::int64_t>(big_n) * s.spread_exponent;
  std::int64_t items_part = 0;
  if (s.total_items > 1) {
    const double est = static_cast<double>(big_n) * std::log(static_cast<double>(s.total_items)) / inst.r.log();
    if (std::abs(est - std::round(est)) > 1e-6) {
      items_part = static_cast<std::int64_t>(std::ceil(est));
    } else if (est < 2.0e5) {
      items_part = next_power_up(pow(Rat(s.total_items), big_n), inst.r).exponent;
    } else {
      items_part = static_cast<std::int64_t>(std::ceil(est)) + 1;
    }
  }
  s.iteration_cap = spread_part + items_part;
  return s;
}

}  // namespace nsw
