#include "nsw/rat.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsw {

namespace {

bool parse_integer(std::string_view text, mpz_class& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return out.set_str(digits, 10) == 0;
}

double log_abs(const mpz_class& z) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

Rat::Rat(long num, long den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat::Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rat Rat::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  mpz_class num;
  mpz_class den(1);
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) {
      throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    }
  } else if (!parse_integer(text.substr(0, slash), num) ||
             !parse_integer(text.substr(slash + 1), den)) {
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  }
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return Rat(std::move(q));
}

Rat Rat::from_strings(const std::string& num, const std::string& den) {
  return parse(num + "/" + den);
}

std::string Rat::numerator_string() const { return q_.get_num().get_str(); }
std::string Rat::denominator_string() const { return q_.get_den().get_str(); }

std::string Rat::str() const {
  return is_integer() ? numerator_string() : numerator_string() + "/" + denominator_string();
}

bool Rat::is_integer() const { return q_.get_den() == 1; }

double Rat::log() const {
  if (sign() <= 0) throw std::domain_error("Rat::log of non-positive value");
  return log_abs(q_.get_num()) - log_abs(q_.get_den());
}

Rat& Rat::operator+=(const Rat& o) {
  q_ += o.q_;
  return *this;
}
Rat& Rat::operator-=(const Rat& o) {
  q_ -= o.q_;
  return *this;
}
Rat& Rat::operator*=(const Rat& o) {
  q_ *= o.q_;
  return *this;
}
Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  q_ /= o.q_;
  return *this;
}

Rat Rat::operator-() const { return Rat(mpq_class(-q_)); }

Rat pow(const Rat& base, std::int64_t exponent) {
  if (exponent == 0) return Rat(1);
  if (base.is_zero()) {
    if (exponent < 0) throw std::domain_error("pow: zero to a negative power");
    return Rat(0);
  }
  const auto e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), e);
  return exponent > 0 ? Rat(mpq_class(num, den)) : Rat(mpq_class(den, num));
}

const Rat& ExtRat::value() const {
  if (!value_) throw std::logic_error("ExtRat::value on infinity");
  return *value_;
}

double ExtRat::to_double() const {
  return value_ ? value_->to_double() : std::numeric_limits<double>::infinity();
}

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return a.value() <=> b.value();
}

ExtRat min(const ExtRat& a, const ExtRat& b) { return b < a ? b : a; }
ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

}  // namespace nsw
