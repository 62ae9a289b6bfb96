#pragma once

// Power-of-r bookkeeping. A run fixes r = 1 + eps as an exact Rat and every
// rounded utility, rounded cap, initial price and pre-terminal price/MBB value
// is r^t for an integer t.

#include <cstdint>
#include <optional>

#include "nsw/rat.hpp"

namespace nsw {

struct PowerOfR {
  std::int64_t exponent = 0;

  friend PowerOfR operator*(PowerOfR a, PowerOfR b) { return {a.exponent + b.exponent}; }
  friend PowerOfR operator/(PowerOfR a, PowerOfR b) { return {a.exponent - b.exponent}; }
  friend auto operator<=>(PowerOfR, PowerOfR) = default;
};

// r^t as an exact rational.
Rat value(PowerOfR p, const Rat& r);

// Smallest t with r^t >= u. Requires u > 0 and 1 < r <= 3/2
// (std::domain_error otherwise).
PowerOfR next_power_up(const Rat& u, const Rat& r);

// The integer s with r^(s-1) <= q < r^s. Requires q > 0.
std::int64_t floor_log_ratio(const Rat& q, const Rat& r);

// t if q == r^t exactly, nullopt otherwise (including q <= 0).
std::optional<std::int64_t> exact_power_exponent(const Rat& q, const Rat& r);

}  // namespace nsw
