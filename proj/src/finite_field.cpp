#include "drgtet/finite_field.hpp"

#include <stdexcept>
#include <utility>

namespace drgtet {

bool is_prime(uint64_t n) noexcept {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  return FieldSpec{p, 1, 0, 0};
}

FieldSpec FieldSpec::quadratic(uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  for (uint32_t u = 0; u < p; ++u) {
    for (uint32_t v = 0; v < p; ++v) {
      bool has_root = false;
      for (uint64_t x = 0; x < p && !has_root; ++x) {
        has_root = (x * x + u * x + v) % p == 0;
      }
      if (!has_root) return FieldSpec{p, 2, u, v};
    }
  }
  throw std::logic_error("no irreducible quadratic found");
}

FFElem::FFElem(const FieldSpec& f, uint32_t c0, uint32_t c1) : f_(f), c0_(c0 % f.p), c1_(c1 % f.p) {
  if (f_.degree == 1 && c1_ != 0) throw std::invalid_argument("prime field element with t-component");
}

FFElem FFElem::from_index(const FieldSpec& f, uint32_t index) {
  if (index >= f.order()) throw std::out_of_range("field element index");
  return FFElem(f, index % f.p, index / f.p);
}

std::string FFElem::str() const {
  if (f_.degree == 1) return std::to_string(c0_);
  return std::to_string(c0_) + "+" + std::to_string(c1_) + "t";
}

void FFElem::check_same(const FFElem& o) const {
  if (!(f_ == o.f_)) throw std::invalid_argument("mismatched finite fields");
}

FFElem FFElem::operator-() const { return FFElem(f_, (f_.p - c0_) % f_.p, (f_.p - c1_) % f_.p); }

FFElem& FFElem::operator+=(const FFElem& o) {
  check_same(o);
  c0_ = (c0_ + o.c0_) % f_.p;
  c1_ = (c1_ + o.c1_) % f_.p;
  return *this;
}

FFElem& FFElem::operator-=(const FFElem& o) { return *this += -o; }

FFElem& FFElem::operator*=(const FFElem& o) {
  check_same(o);
  const uint64_t p = f_.p;
  if (f_.degree == 1) {
    c0_ = static_cast<uint32_t>(uint64_t{c0_} * o.c0_ % p);
    return *this;
  }
  // (a0 + a1 t)(b0 + b1 t) with t^2 = -u t - v.
  const uint64_t s0 = uint64_t{c0_} * o.c0_ % p;
  const uint64_t s1 = (uint64_t{c0_} * o.c1_ + uint64_t{c1_} * o.c0_) % p;
  const uint64_t s2 = uint64_t{c1_} * o.c1_ % p;
  const uint64_t new0 = (s0 + (p - s2) * f_.v) % p;
  const uint64_t new1 = (s1 + (p - s2) * f_.u) % p;
  c0_ = static_cast<uint32_t>(new0);
  c1_ = static_cast<uint32_t>(new1);
  return *this;
}

FFElem FFElem::pow(uint64_t e) const {
  FFElem result(f_, 1, 0);
  FFElem base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

FFElem FFElem::inverse() const {
  if (is_zero()) throw std::domain_error("finite field division by zero");
  return pow(uint64_t{f_.order()} - 2);
}

FFElem& FFElem::operator/=(const FFElem& o) {
  check_same(o);
  return *this *= o.inverse();
}

int ff_rank(std::vector<FFElem> a, int rows, int cols) {
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r) {
      if (!a[r * cols + col].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != rank) {
      for (int c = 0; c < cols; ++c) std::swap(a[piv * cols + c], a[rank * cols + c]);
    }
    const FFElem inv = a[rank * cols + col].inverse();
    for (int r = rank + 1; r < rows; ++r) {
      if (a[r * cols + col].is_zero()) continue;
      const FFElem f = a[r * cols + col] * inv;
      for (int c = col; c < cols; ++c) a[r * cols + c] -= f * a[rank * cols + c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace drgtet
