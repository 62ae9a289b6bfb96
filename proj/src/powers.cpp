#include "nsw/powers.hpp"

#include <cmath>
#include <stdexcept>

namespace nsw {

namespace {

void require_base(const Rat& r) {
  if (!(r > Rat(1)) || r > Rat(3, 2)) {
    throw std::domain_error("power base r must satisfy 1 < r <= 3/2, got " + r.str());
  }
}

// Float estimate of log_r(q), only used as a starting point for the exact
// search below.
std::int64_t estimate(const Rat& q, const Rat& r) {
  const double est = q.log() / r.log();
  return static_cast<std::int64_t>(std::floor(est));
}

}  // namespace

Rat value(PowerOfR p, const Rat& r) { return pow(r, p.exponent); }

PowerOfR next_power_up(const Rat& u, const Rat& r) {
  require_base(r);
  if (u.sign() <= 0) throw std::domain_error("next_power_up of non-positive value " + u.str());
  std::int64_t t = estimate(u, r);
  while (pow(r, t) < u) ++t;
  while (pow(r, t - 1) >= u) --t;
  return {t};
}

std::int64_t floor_log_ratio(const Rat& q, const Rat& r) {
  require_base(r);
  if (q.sign() <= 0) throw std::domain_error("floor_log_ratio of non-positive value " + q.str());
  // t = largest integer with r^t <= q; the answer is t + 1.
  std::int64_t t = estimate(q, r);
  while (pow(r, t) > q) --t;
  while (pow(r, t + 1) <= q) ++t;
  return t + 1;
}

std::optional<std::int64_t> exact_power_exponent(const Rat& q, const Rat& r) {
  if (q.sign() <= 0) return std::nullopt;
  const PowerOfR p = next_power_up(q, r);
  if (value(p, r) == q) return p.exponent;
  return std::nullopt;
}

}  // namespace nsw
