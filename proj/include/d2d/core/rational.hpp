#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace d2d {

/// Exact fraction of seconds. Means of integer-second durations are kept in
/// this form so that comparisons between modes never suffer rounding.
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t num) : num_(num), den_(1) {} // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  static Rational of(std::chrono::seconds s) { return Rational(s.count()); }

  constexpr std::int64_t num() const noexcept { return num_; }
  constexpr std::int64_t den() const noexcept { return den_; }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  double minutes() const noexcept { return to_double() / 60.0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                static_cast<Wide>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(static_cast<Wide>(a.num_) * b.den_ - static_cast<Wide>(b.num_) * a.den_,
                static_cast<Wide>(a.den_) * b.den_);
  }
  Rational operator-() const { return make(-static_cast<Wide>(num_), den_); }

  /// Division by a positive count, as used for means.
  friend Rational operator/(const Rational& a, std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("Rational: divisor must be positive");
    return make(a.num_, static_cast<Wide>(a.den_) * n);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    const Wide l = static_cast<Wide>(a.num_) * b.den_;
    const Wide r = static_cast<Wide>(b.num_) * a.den_;
    return l <=> r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num_;
    if (r.den_ != 1) os << '/' << r.den_;
    return os;
  }

private:
  using Wide = __int128;

  static Wide gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      Wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational make(Wide num, Wide den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const Wide g = gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr Wide lo = INT64_MIN, hi = INT64_MAX;
    if (num < lo || num > hi || den > hi) throw std::overflow_error("Rational: overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  void assign(std::int64_t num, std::int64_t den) { *this = make(num, den); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace d2d
