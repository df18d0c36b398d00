#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lcm {

// Exact rational on int64, always reduced, denominator > 0.
//
// Weight coefficients, m-values and jumping numbers in this library are small
// fractions, but the strict inequalities deciding ideal membership
// (a_j > c_j - 1) must never be settled in floating point.  Intermediates go
// through __int128; anything that still does not fit throws instead of
// silently wrapping.
class Rat {
 public:
  constexpr Rat() = default;
  Rat(std::int64_t value) : num_(value), den_(1) {}
  Rat(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }

  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }

  // Largest integer <= *this.
  [[nodiscard]] std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  // Smallest integer > *this (floor + 1 also when *this is an integer).
  [[nodiscard]] std::int64_t next_integer() const { return floor() + 1; }

  [[nodiscard]] double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rat operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  // Accepts "p/q" or "p" with optional sign; no whitespace.
  static Rat parse(std::string_view text) {
    const auto bad = [&] {
      throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    };
    if (text.empty()) bad();
    std::size_t slash = text.find('/');
    std::int64_t num = 0, den = 1;
    try {
      if (slash == std::string_view::npos) {
        num = std::stoll(std::string(text));
      } else {
        num = std::stoll(std::string(text.substr(0, slash)));
        den = std::stoll(std::string(text.substr(slash + 1)));
      }
    } catch (const std::exception&) {
      bad();
    }
    if (den == 0) bad();
    return Rat(num, den);
  }

  [[nodiscard]] std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  static std::int64_t fit(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
      throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(v);
  }

  static Rat from128(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 b = den;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a != 0) {
      num /= a;
      den /= a;
    }
    Rat r;
    r.num_ = fit(num);
    r.den_ = fit(den);
    return r;
  }

  void normalize() { *this = from128(num_, den_); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::string to_string(const Rat& r) { return r.str(); }

}  // namespace lcm
