#include "robexplore/exact.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace robexplore {

namespace {

using Wide = __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(Wide v) {
  if (v > kMax || v < -kMax) throw std::overflow_error("ExactNumber: value exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

// Reduces num/den (den > 0) and writes the canonical pair.
void reduce_into(Wide num, Wide den, std::int64_t& out_num, std::int64_t& out_den) {
  if (num < 0) throw std::domain_error("ExactNumber: negative result");
  if (num == 0) {
    out_num = 0;
    out_den = 1;
    return;
  }
  const Wide g = wide_gcd(num, den);
  out_num = narrow(num / g);
  out_den = narrow(den / g);
}

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("ExactNumber: malformed number '" + std::string(whole) + "'");
  std::int64_t value = 0;
  const auto* first = digits.data();
  const auto* last = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) throw std::overflow_error("ExactNumber: number too large");
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("ExactNumber: malformed number '" + std::string(whole) + "'");
  }
  return value;
}

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

ExactNumber::ExactNumber(std::int64_t value) : num_(value), den_(1) {
  if (value < 0) throw std::domain_error("ExactNumber: negative value");
}

ExactNumber::ExactNumber(std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0) throw std::domain_error("ExactNumber: denominator must be positive");
  reduce_into(numerator, denominator, num_, den_);
}

ExactNumber ExactNumber::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text == "inf" || text == "infinity" || text == "INF" || text == "Infinity") return infinity();
  if (text.empty()) throw std::invalid_argument("ExactNumber: empty number");
  if (text.front() == '+') text.remove_prefix(1);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto p = text.substr(0, slash);
    const auto q = text.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) {
      throw std::invalid_argument("ExactNumber: malformed fraction '" + std::string(text) + "'");
    }
    const auto den = parse_digits(q, text);
    if (den == 0) throw std::domain_error("ExactNumber: zero denominator");
    return {parse_digits(p, text), den};
  }
  const auto dot = text.find('.');
  const auto int_part = text.substr(0, dot);
  const auto frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (!all_digits(int_part) || !all_digits(frac_part) || (int_part.empty() && frac_part.empty())) {
    throw std::invalid_argument("ExactNumber: malformed number '" + std::string(text) + "'");
  }
  if (frac_part.size() > 18) throw std::overflow_error("ExactNumber: too many decimal digits");
  Wide num = int_part.empty() ? 0 : parse_digits(int_part, text);
  Wide den = 1;
  for (char c : frac_part) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  ExactNumber out;
  reduce_into(num, den, out.num_, out.den_);
  return out;
}

ExactNumber& ExactNumber::operator+=(const ExactNumber& rhs) {
  if (is_infinite() || rhs.is_infinite()) return *this = infinity();
  if (den_ == rhs.den_) {
    reduce_into(Wide(num_) + rhs.num_, den_, num_, den_);
    return *this;
  }
  reduce_into(Wide(num_) * rhs.den_ + Wide(rhs.num_) * den_, Wide(den_) * rhs.den_, num_, den_);
  return *this;
}

ExactNumber& ExactNumber::operator-=(const ExactNumber& rhs) {
  if (rhs.is_infinite()) throw std::domain_error("ExactNumber: subtracting infinity");
  if (is_infinite()) return *this;
  reduce_into(Wide(num_) * rhs.den_ - Wide(rhs.num_) * den_, Wide(den_) * rhs.den_, num_, den_);
  return *this;
}

ExactNumber& ExactNumber::operator*=(const ExactNumber& rhs) {
  if (is_infinite() || rhs.is_infinite()) {
    if (is_zero() || rhs.is_zero()) throw std::domain_error("ExactNumber: 0 * infinity");
    return *this = infinity();
  }
  reduce_into(Wide(num_) * rhs.num_, Wide(den_) * rhs.den_, num_, den_);
  return *this;
}

ExactNumber& ExactNumber::operator/=(const ExactNumber& rhs) {
  if (rhs.is_infinite()) throw std::domain_error("ExactNumber: division by infinity");
  if (rhs.is_zero()) throw std::domain_error("ExactNumber: division by zero");
  if (is_infinite()) return *this;
  reduce_into(Wide(num_) * rhs.den_, Wide(den_) * rhs.num_, num_, den_);
  return *this;
}

std::strong_ordering operator<=>(const ExactNumber& a, const ExactNumber& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return (a.is_infinite() ? 1 : 0) <=> (b.is_infinite() ? 1 : 0);
  }
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  const Wide lhs = Wide(a.num_) * b.den_;
  const Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExactNumber ExactNumber::halve() const {
  if (is_infinite()) return *this;
  ExactNumber out;
  reduce_into(num_, Wide(den_) * 2, out.num_, out.den_);
  return out;
}

ExactNumber ExactNumber::floor() const {
  if (is_infinite()) return *this;
  return ExactNumber(num_ / den_);
}

ExactNumber ExactNumber::mod(const ExactNumber& modulus) const {
  if (is_infinite() || modulus.is_infinite() || modulus.is_zero()) {
    throw std::domain_error("ExactNumber: mod needs finite operands and a positive modulus");
  }
  const ExactNumber quotient = (*this / modulus).floor();
  return *this - quotient * modulus;
}

ExactNumber ExactNumber::distance(const ExactNumber& a, const ExactNumber& b) {
  return a < b ? b - a : a - b;
}

std::string ExactNumber::to_string() const {
  if (is_infinite()) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double ExactNumber::to_double() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::ostream& operator<<(std::ostream& os, const ExactNumber& x) { return os << x.to_string(); }

std::string format_with_decimal(const ExactNumber& x) {
  if (x.is_infinite()) return "inf";
  std::ostringstream out;
  out << x.to_string() << " (" << std::setprecision(6) << std::showpoint << x.to_double() << ")";
  return out.str();
}

}  // namespace robexplore
