#pragma once

// Arbitrary-precision integer with an inline 64-bit fast path.
//
// Values that fit in int64_t are stored inline; anything larger lives in a
// heap-allocated GMP integer. The representation is canonical: the big form
// is used only when the value does not fit in 64 bits, so two Ints are equal
// iff their representations are equal.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace drgtet {

class Int {
 public:
  Int() noexcept = default;
  Int(int v) noexcept : small_(v) {}                // NOLINT(google-explicit-constructor)
  Int(long v) noexcept : small_(v) {}               // NOLINT(google-explicit-constructor)
  Int(long long v) noexcept : small_(v) {}          // NOLINT(google-explicit-constructor)
  explicit Int(const mpz_class& v);
  explicit Int(__int128 v);

  Int(const Int& o) : small_(o.small_), big_(o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr) {}
  Int(Int&&) noexcept = default;
  Int& operator=(const Int& o);
  Int& operator=(Int&&) noexcept = default;
  ~Int() = default;

  /// Parses an optionally signed decimal integer; throws std::invalid_argument.
  static Int parse(std::string_view text);

  [[nodiscard]] bool is_small() const noexcept { return !big_; }
  /// Only meaningful when is_small().
  [[nodiscard]] int64_t small() const noexcept { return small_; }
  [[nodiscard]] mpz_class to_mpz() const;

  [[nodiscard]] bool is_zero() const noexcept { return !big_ && small_ == 0; }
  [[nodiscard]] bool is_one() const noexcept { return !big_ && small_ == 1; }
  [[nodiscard]] int sign() const noexcept;
  /// Number of bits in |value| (0 for zero).
  [[nodiscard]] std::size_t bit_length() const noexcept;
  [[nodiscard]] bool fits_int64() const noexcept { return !big_; }
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string str() const;

  [[nodiscard]] Int abs() const;
  Int operator-() const;

  Int& operator+=(const Int& o);
  Int& operator-=(const Int& o);
  Int& operator*=(const Int& o);

  friend Int operator+(Int a, const Int& b) { return a += b; }
  friend Int operator-(Int a, const Int& b) { return a -= b; }
  friend Int operator*(Int a, const Int& b) { return a *= b; }

  /// Exact division; the caller guarantees b divides a.
  friend Int divexact(const Int& a, const Int& b);
  /// Truncating quotient and remainder.
  friend Int tdiv_q(const Int& a, const Int& b);
  friend Int tdiv_r(const Int& a, const Int& b);
  /// Non-negative greatest common divisor; gcd(0, 0) = 0.
  friend Int gcd(const Int& a, const Int& b);

  friend bool operator==(const Int& a, const Int& b) noexcept;
  friend std::strong_ordering operator<=>(const Int& a, const Int& b) noexcept;

 private:
  void set_from_mpz(const mpz_class& v);
  void normalize();

  int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Int& v);

/// gcd of two unsigned 64-bit values (binary algorithm).
uint64_t gcd_u64(uint64_t a, uint64_t b) noexcept;

}  // namespace drgtet
