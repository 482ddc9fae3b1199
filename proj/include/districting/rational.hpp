#pragma once

#include <cstdint>
#include <string>

namespace districting {

// Exact rational arithmetic for population bounds and plan scores.
// Always normalized: den > 0 and gcd(|num|, den) = 1. Intermediates
// are carried in __int128; a result that does not reduce back into
// int64 throws std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // implicit by design
  Rational(std::int64_t num, std::int64_t den);

  // Parses a plain decimal such as "0.05", ".5", "2" or "-0.125".
  // At most 9 fractional digits.
  static Rational from_decimal(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const;

  // "37" when integral, "-37/2" otherwise. Exact; stable across runs.
  std::string to_string() const;

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

 private:
  static Rational reduce(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace districting
