#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "drgtet/integer.hpp"

namespace drgtet {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}        // NOLINT(google-explicit-constructor)
  Rational(long v) : num_(v) {}       // NOLINT(google-explicit-constructor)
  Rational(long long v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(Int v) : num_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  /// Throws std::domain_error if den is zero.
  Rational(Int num, Int den);

  /// Accepts "n" or "n/d".
  static Rational parse(std::string_view text);

  [[nodiscard]] const Int& num() const noexcept { return num_; }
  [[nodiscard]] const Int& den() const noexcept { return den_; }
  [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }
  [[nodiscard]] bool is_integer() const noexcept { return den_.is_one(); }
  [[nodiscard]] int sign() const noexcept { return num_.sign(); }
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string str() const;

  [[nodiscard]] Rational inverse() const;
  Rational operator-() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void reduce();

  Int num_{0};
  Int den_{1};
};

std::ostream& operator<<(std::ostream& os, const Rational& v);

}  // namespace drgtet
