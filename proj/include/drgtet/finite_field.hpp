#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace drgtet {

/// GF(p) or GF(p^2) = GF(p)[t]/(t^2 + u t + v).
struct FieldSpec {
  uint32_t p = 2;
  int degree = 1;
  uint32_t u = 0;  ///< linear coefficient of the irreducible quadratic
  uint32_t v = 0;  ///< constant coefficient of the irreducible quadratic

  /// Throws std::invalid_argument unless p is prime.
  static FieldSpec prime(uint32_t p);
  /// Uses the first monic irreducible t^2 + u t + v in (u, v) lexicographic
  /// order.
  static FieldSpec quadratic(uint32_t p);

  [[nodiscard]] uint32_t order() const noexcept { return degree == 1 ? p : p * p; }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(uint64_t n) noexcept;

/// Element c0 + c1 t of a FieldSpec field. Elements are indexed
/// c0 + c1 * p, which is the canonical residue order used for vertex labels.
class FFElem {
 public:
  FFElem() = default;
  FFElem(const FieldSpec& f, uint32_t c0, uint32_t c1 = 0);
  static FFElem from_index(const FieldSpec& f, uint32_t index);

  [[nodiscard]] const FieldSpec& field() const noexcept { return f_; }
  [[nodiscard]] uint32_t c0() const noexcept { return c0_; }
  [[nodiscard]] uint32_t c1() const noexcept { return c1_; }
  [[nodiscard]] uint32_t index() const noexcept { return c0_ + c1_ * f_.p; }
  [[nodiscard]] bool is_zero() const noexcept { return c0_ == 0 && c1_ == 0; }
  [[nodiscard]] std::string str() const;

  [[nodiscard]] FFElem inverse() const;
  [[nodiscard]] FFElem pow(uint64_t e) const;
  /// x -> x^p.
  [[nodiscard]] FFElem frobenius() const { return pow(f_.p); }

  FFElem operator-() const;
  FFElem& operator+=(const FFElem& o);
  FFElem& operator-=(const FFElem& o);
  FFElem& operator*=(const FFElem& o);
  FFElem& operator/=(const FFElem& o);
  friend FFElem operator+(FFElem a, const FFElem& b) { return a += b; }
  friend FFElem operator-(FFElem a, const FFElem& b) { return a -= b; }
  friend FFElem operator*(FFElem a, const FFElem& b) { return a *= b; }
  friend FFElem operator/(FFElem a, const FFElem& b) { return a /= b; }
  friend bool operator==(const FFElem&, const FFElem&) = default;

 private:
  void check_same(const FFElem& o) const;

  FieldSpec f_;
  uint32_t c0_ = 0;
  uint32_t c1_ = 0;
};

/// Rank of a rows x cols matrix (row-major) over a finite field.
int ff_rank(std::vector<FFElem> entries, int rows, int cols);

}  // namespace drgtet
