#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace robexplore {

/// Non-negative rational number in lowest terms, or +infinity.
///
/// Every distance, time and deadline in the library is an ExactNumber so that
/// equal sums compare equal on every platform. Values are stored as a pair of
/// 64-bit integers; intermediate products use 128-bit arithmetic and any result
/// that does not fit back into 64 bits throws std::overflow_error.
class ExactNumber {
 public:
  constexpr ExactNumber() = default;
  ExactNumber(std::int64_t value);  // NOLINT(google-explicit-constructor)
  ExactNumber(std::int64_t numerator, std::int64_t denominator);

  static constexpr ExactNumber infinity() {
    ExactNumber x;
    x.num_ = 1;
    x.den_ = 0;
    return x;
  }

  /// Accepts "12", "0.25", "3/4" and "inf"/"infinity".
  static ExactNumber parse(std::string_view text);

  bool is_infinite() const { return den_ == 0; }
  bool is_finite() const { return den_ != 0; }
  bool is_zero() const { return den_ != 0 && num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  ExactNumber& operator+=(const ExactNumber& rhs);
  ExactNumber& operator-=(const ExactNumber& rhs);
  ExactNumber& operator*=(const ExactNumber& rhs);
  ExactNumber& operator/=(const ExactNumber& rhs);

  friend ExactNumber operator+(ExactNumber lhs, const ExactNumber& rhs) { return lhs += rhs; }
  /// Throws std::domain_error when the result would be negative.
  friend ExactNumber operator-(ExactNumber lhs, const ExactNumber& rhs) { return lhs -= rhs; }
  friend ExactNumber operator*(ExactNumber lhs, const ExactNumber& rhs) { return lhs *= rhs; }
  friend ExactNumber operator/(ExactNumber lhs, const ExactNumber& rhs) { return lhs /= rhs; }

  friend bool operator==(const ExactNumber& a, const ExactNumber& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const ExactNumber& a, const ExactNumber& b);

  ExactNumber halve() const;
  ExactNumber floor() const;
  /// Remainder in [0, modulus) for finite positive modulus.
  ExactNumber mod(const ExactNumber& modulus) const;
  /// |a - b| for finite operands.
  static ExactNumber distance(const ExactNumber& a, const ExactNumber& b);

  std::string to_string() const;
  double to_double() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;  // 0 encodes infinity
};

inline const ExactNumber& min(const ExactNumber& a, const ExactNumber& b) { return b < a ? b : a; }
inline const ExactNumber& max(const ExactNumber& a, const ExactNumber& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const ExactNumber& x);

/// "p/q (d.ddddd)" with six significant digits, or "inf".
std::string format_with_decimal(const ExactNumber& x);

}  // namespace robexplore

template <>
struct std::hash<robexplore::ExactNumber> {
  std::size_t operator()(const robexplore::ExactNumber& x) const noexcept {
    const auto h1 = std::hash<std::int64_t>{}(x.numerator());
    const auto h2 = std::hash<std::int64_t>{}(x.denominator());
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};
