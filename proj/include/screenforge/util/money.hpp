#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace screenforge {

// Exact currency amount in integer cents.
class Cents {
 public:
  constexpr Cents() = default;
  constexpr explicit Cents(std::int64_t value) : value_(value) {}

  constexpr std::int64_t value() const { return value_; }

  // Accepts "12", "12.3", "12.34", with an optional leading '-'.
  static Cents parse(std::string_view text);

  // Always two decimals, e.g. "4.49", "-0.05".
  std::string str() const;

  constexpr Cents operator+(Cents o) const { return Cents(value_ + o.value_); }
  constexpr Cents operator-(Cents o) const { return Cents(value_ - o.value_); }
  constexpr Cents operator*(std::int64_t n) const { return Cents(value_ * n); }
  constexpr Cents& operator+=(Cents o) {
    value_ += o.value_;
    return *this;
  }
  constexpr auto operator<=>(const Cents&) const = default;

 private:
  std::int64_t value_ = 0;
};

// Decimal fraction held exactly as numerator / 10^scale ("0.0825" -> 825 / 10^4).
struct DecimalRate {
  std::int64_t numerator = 0;
  int scale = 0;

  static DecimalRate parse(std::string_view text);
  std::string str() const;
  double approx() const;
};

// amount * rate rounded to whole cents, ties to even.
Cents apply_rate_half_even(Cents amount, DecimalRate rate);

}  // namespace screenforge
