#pragma once

// Exact rational scalar backed by GMP. Every market quantity in the solver
// (utilities, prices, MBB ratios, bundle values, price factors) is a Rat.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace nsw {

class Rat {
 public:
  Rat() = default;

  template <std::integral T>
  Rat(T value) : q_(static_cast<long>(value)) {}  // NOLINT: implicit by design of a numeric type

  Rat(long num, long den);
  explicit Rat(mpq_class q);

  // Parses "7", "-3", "1/4" or "12/-8". Throws std::invalid_argument.
  static Rat parse(std::string_view text);
  // Builds num/den from decimal integer strings.
  static Rat from_strings(const std::string& num, const std::string& den);

  const mpq_class& raw() const { return q_; }

  std::string numerator_string() const;
  std::string denominator_string() const;
  // "n" for integers, "n/d" otherwise.
  std::string str() const;

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  double to_double() const { return q_.get_d(); }
  // Natural logarithm of a positive value, accurate for numbers far outside
  // the double range.
  double log() const;

  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  Rat operator-() const;

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

// base^exponent; negative exponents invert. Throws std::domain_error for 0^-k.
Rat pow(const Rat& base, std::int64_t exponent);

// A Rat or +infinity. Used for price-increase factors and envy ratios whose
// defining minimum or quotient may be empty or unbounded.
class ExtRat {
 public:
  ExtRat() : value_(Rat(0)) {}
  ExtRat(Rat v) : value_(std::move(v)) {}  // NOLINT
  static ExtRat infinity() { return ExtRat(std::nullopt); }

  bool is_infinite() const { return !value_.has_value(); }
  // Precondition: finite.
  const Rat& value() const;
  std::string str() const { return is_infinite() ? "inf" : value_->str(); }
  double to_double() const;

  friend bool operator==(const ExtRat& a, const ExtRat& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

 private:
  explicit ExtRat(std::nullopt_t) {}
  std::optional<Rat> value_;
};

ExtRat min(const ExtRat& a, const ExtRat& b);
ExtRat max(const ExtRat& a, const ExtRat& b);

}  // namespace nsw
