#include "screenforge/util/money.hpp"

#include <cctype>
#include <cmath>

#include "screenforge/error.hpp"

namespace screenforge {

namespace {

std::int64_t pow10(int n) {
  std::int64_t p = 1;
  for (int i = 0; i < n; ++i) p *= 10;
  return p;
}

// Splits "[-]digits[.digits]" into sign, integer digits and fraction digits.
struct DecimalParts {
  bool negative = false;
  std::string_view whole;
  std::string_view fraction;
};

DecimalParts split_decimal(std::string_view text, std::string_view what) {
  DecimalParts parts;
  if (!text.empty() && text.front() == '-') {
    parts.negative = true;
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  parts.whole = text.substr(0, dot);
  if (dot != std::string_view::npos) parts.fraction = text.substr(dot + 1);
  auto all_digits = [](std::string_view s) {
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  if (parts.whole.empty() || !all_digits(parts.whole) || !all_digits(parts.fraction) ||
      (dot != std::string_view::npos && parts.fraction.empty()) || parts.whole.size() > 15) {
    throw Error(Errc::invalid_argument, "malformed " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return parts;
}

std::int64_t digits_value(std::string_view digits) {
  std::int64_t v = 0;
  for (char c : digits) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

Cents Cents::parse(std::string_view text) {
  const DecimalParts parts = split_decimal(text, "amount");
  if (parts.fraction.size() > 2) throw Error(Errc::invalid_argument, "amount has sub-cent digits: " + std::string(text));
  std::int64_t cents = digits_value(parts.whole) * 100;
  if (!parts.fraction.empty()) cents += digits_value(parts.fraction) * (parts.fraction.size() == 1 ? 10 : 1);
  return Cents(parts.negative ? -cents : cents);
}

std::string Cents::str() const {
  const std::int64_t mag = value_ < 0 ? -value_ : value_;
  std::string frac = std::to_string(mag % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return (value_ < 0 ? "-" : "") + std::to_string(mag / 100) + "." + frac;
}

DecimalRate DecimalRate::parse(std::string_view text) {
  const DecimalParts parts = split_decimal(text, "rate");
  if (parts.fraction.size() > 9) throw Error(Errc::invalid_argument, "rate precision above 1e-9: " + std::string(text));
  DecimalRate rate;
  rate.scale = static_cast<int>(parts.fraction.size());
  rate.numerator = digits_value(parts.whole) * pow10(rate.scale) + digits_value(parts.fraction);
  if (parts.negative) rate.numerator = -rate.numerator;
  return rate;
}

std::string DecimalRate::str() const {
  if (scale == 0) return std::to_string(numerator);
  const std::int64_t den = pow10(scale);
  const std::int64_t mag = numerator < 0 ? -numerator : numerator;
  std::string frac = std::to_string(mag % den);
  frac.insert(0, static_cast<std::size_t>(scale) - frac.size(), '0');
  return (numerator < 0 ? "-" : "") + std::to_string(mag / den) + "." + frac;
}

double DecimalRate::approx() const { return static_cast<double>(numerator) / static_cast<double>(pow10(scale)); }

Cents apply_rate_half_even(Cents amount, DecimalRate rate) {
  const __int128 product = static_cast<__int128>(amount.value()) * rate.numerator;
  const __int128 den = pow10(rate.scale);
  __int128 q = product / den;
  __int128 r = product % den;
  if (r < 0) {  // floor division
    r += den;
    q -= 1;
  }
  const __int128 twice = 2 * r;
  if (twice > den || (twice == den && (q % 2 != 0))) q += 1;
  return Cents(static_cast<std::int64_t>(q));
}

}  // namespace screenforge
