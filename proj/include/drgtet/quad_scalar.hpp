#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "drgtet/rational.hpp"

namespace drgtet {

/// Returns true if m is a squarefree integer other than 0 and 1.
bool is_valid_field_tag(int64_t m) noexcept;

/// Element a + c*sqrt(m) of the quadratic field Q(sqrt(m)).
///
/// The tag m is a squarefree integer different from 1; m < 0 gives an
/// imaginary quadratic field. Rational values carry no tag: whenever c = 0
/// the stored tag is 0, so equality is plain componentwise comparison. Two
/// irrational values can only be combined when their tags agree.
class QuadScalar {
 public:
  QuadScalar() = default;
  QuadScalar(int v) : a_(v) {}             // NOLINT(google-explicit-constructor)
  QuadScalar(long v) : a_(v) {}            // NOLINT(google-explicit-constructor)
  QuadScalar(long long v) : a_(v) {}       // NOLINT(google-explicit-constructor)
  QuadScalar(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  /// Throws std::invalid_argument for an invalid tag when c != 0.
  QuadScalar(Rational a, Rational c, int64_t m);

  /// The element sqrt(m) itself.
  static QuadScalar sqrt_of(int64_t m);

  /// Parses the textual form produced by str(): "a", "a+c*sqrt(m)",
  /// "a-c*sqrt(m)" or "c*sqrt(m)", with a and c written as "n" or "n/d".
  static QuadScalar parse(std::string_view text);

  [[nodiscard]] const Rational& rational_part() const noexcept { return a_; }
  [[nodiscard]] const Rational& sqrt_part() const noexcept { return c_; }
  [[nodiscard]] int64_t field_tag() const noexcept { return m_; }
  [[nodiscard]] bool is_zero() const noexcept { return a_.is_zero() && c_.is_zero(); }
  [[nodiscard]] bool is_rational() const noexcept { return c_.is_zero(); }
  [[nodiscard]] std::string str() const;

  /// a^2 - m c^2, the field norm (equals |s|^2 for imaginary fields).
  [[nodiscard]] Rational norm() const;
  [[nodiscard]] QuadScalar inverse() const;
  /// Integer power; negative exponents require a nonzero base.
  [[nodiscard]] QuadScalar pow(int n) const;
  /// Approximate complex value (real, imaginary).
  [[nodiscard]] std::pair<double, double> to_complex() const;

  QuadScalar operator-() const;
  QuadScalar& operator+=(const QuadScalar& o);
  QuadScalar& operator-=(const QuadScalar& o);
  QuadScalar& operator*=(const QuadScalar& o);
  QuadScalar& operator/=(const QuadScalar& o);

  friend QuadScalar operator+(QuadScalar a, const QuadScalar& b) { return a += b; }
  friend QuadScalar operator-(QuadScalar a, const QuadScalar& b) { return a -= b; }
  friend QuadScalar operator*(QuadScalar a, const QuadScalar& b) { return a *= b; }
  friend QuadScalar operator/(QuadScalar a, const QuadScalar& b) { return a /= b; }
  friend bool operator==(const QuadScalar& a, const QuadScalar& b) = default;

 private:
  int64_t merged_tag(const QuadScalar& o) const;
  void canonicalize() noexcept;

  Rational a_;
  Rational c_;
  int64_t m_ = 0;
};

std::ostream& operator<<(std::ostream& os, const QuadScalar& v);

/// Complex conjugate: a - c*sqrt(m) when m < 0, identity otherwise.
QuadScalar conj(const QuadScalar& s);

/// Gaussian integer [n]_q = (q^n - q^-n) / (q - q^-1); requires q^2 != 1.
QuadScalar q_int(int n, const QuadScalar& q);

/// Writes b = s^2 * m with m squarefree; returns {s, m}. Requires b != 0.
std::pair<int64_t, int64_t> squarefree_decompose(int64_t b);

}  // namespace drgtet
