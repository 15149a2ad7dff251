#include "drgtet/integer.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace drgtet {

namespace {

mpz_class mpz_from_i64(int64_t v) { return mpz_class(static_cast<long>(v)); }

mpz_class mpz_from_i128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

uint64_t gcd_u64(uint64_t a, uint64_t b) noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = __builtin_ctzll(a | b);
  a >>= __builtin_ctzll(a);
  do {
    b >>= __builtin_ctzll(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

Int::Int(const mpz_class& v) { set_from_mpz(v); }

Int::Int(__int128 v) {
  if (v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max()) {
    small_ = static_cast<int64_t>(v);
  } else {
    big_ = std::make_unique<mpz_class>(mpz_from_i128(v));
  }
}

Int& Int::operator=(const Int& o) {
  if (this == &o) return *this;
  small_ = o.small_;
  if (o.big_) {
    if (big_) {
      *big_ = *o.big_;
    } else {
      big_ = std::make_unique<mpz_class>(*o.big_);
    }
  } else {
    big_.reset();
  }
  return *this;
}

Int Int::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("malformed integer literal: " + s);
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed integer literal: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  return Int(mpz_class(s, 10));
}

void Int::set_from_mpz(const mpz_class& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) {
    small_ = mpz_get_si(v.get_mpz_t());
    big_.reset();
  } else {
    small_ = 0;
    if (big_) {
      *big_ = v;
    } else {
      big_ = std::make_unique<mpz_class>(v);
    }
  }
}

void Int::normalize() {
  if (big_ && mpz_fits_slong_p(big_->get_mpz_t())) {
    small_ = mpz_get_si(big_->get_mpz_t());
    big_.reset();
  }
}

mpz_class Int::to_mpz() const { return big_ ? *big_ : mpz_from_i64(small_); }

int Int::sign() const noexcept {
  if (big_) return mpz_sgn(big_->get_mpz_t());
  return (small_ > 0) - (small_ < 0);
}

std::size_t Int::bit_length() const noexcept {
  if (big_) return mpz_sizeinbase(big_->get_mpz_t(), 2);
  if (small_ == 0) return 0;
  const uint64_t u = small_ < 0 ? static_cast<uint64_t>(-(small_ + 1)) + 1 : static_cast<uint64_t>(small_);
  return 64 - static_cast<std::size_t>(__builtin_clzll(u));
}

double Int::to_double() const { return big_ ? big_->get_d() : static_cast<double>(small_); }

std::string Int::str() const { return big_ ? big_->get_str(10) : std::to_string(small_); }

Int Int::abs() const { return sign() < 0 ? -*this : *this; }

Int Int::operator-() const {
  if (!big_) {
    if (small_ != std::numeric_limits<int64_t>::min()) return Int(-small_);
    return Int(-static_cast<__int128>(small_));
  }
  return Int(mpz_class(-*big_));
}

Int& Int::operator+=(const Int& o) {
  if (!big_ && !o.big_) {
    int64_t r;
    if (!__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    *this = Int(static_cast<__int128>(small_) + o.small_);
    return *this;
  }
  set_from_mpz(to_mpz() + o.to_mpz());
  return *this;
}

Int& Int::operator-=(const Int& o) {
  if (!big_ && !o.big_) {
    int64_t r;
    if (!__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    *this = Int(static_cast<__int128>(small_) - o.small_);
    return *this;
  }
  set_from_mpz(to_mpz() - o.to_mpz());
  return *this;
}

Int& Int::operator*=(const Int& o) {
  if (!big_ && !o.big_) {
    int64_t r;
    if (!__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    *this = Int(static_cast<__int128>(small_) * o.small_);
    return *this;
  }
  set_from_mpz(to_mpz() * o.to_mpz());
  return *this;
}

Int divexact(const Int& a, const Int& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    if (b.small_ == -1) return -a;
    return Int(a.small_ / b.small_);
  }
  mpz_class r;
  const mpz_class am = a.to_mpz();
  const mpz_class bm = b.to_mpz();
  mpz_divexact(r.get_mpz_t(), am.get_mpz_t(), bm.get_mpz_t());
  return Int(r);
}

Int tdiv_q(const Int& a, const Int& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    if (b.small_ == -1) return -a;
    return Int(a.small_ / b.small_);
  }
  mpz_class r;
  const mpz_class am = a.to_mpz();
  const mpz_class bm = b.to_mpz();
  mpz_tdiv_q(r.get_mpz_t(), am.get_mpz_t(), bm.get_mpz_t());
  return Int(r);
}

Int tdiv_r(const Int& a, const Int& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    if (b.small_ == -1) return Int(0);
    return Int(a.small_ % b.small_);
  }
  mpz_class r;
  const mpz_class am = a.to_mpz();
  const mpz_class bm = b.to_mpz();
  mpz_tdiv_r(r.get_mpz_t(), am.get_mpz_t(), bm.get_mpz_t());
  return Int(r);
}

Int gcd(const Int& a, const Int& b) {
  if (a.is_small() && b.is_small()) {
    auto uabs = [](int64_t v) {
      return v < 0 ? static_cast<uint64_t>(-(v + 1)) + 1 : static_cast<uint64_t>(v);
    };
    const uint64_t g = gcd_u64(uabs(a.small_), uabs(b.small_));
    if (g <= static_cast<uint64_t>(std::numeric_limits<int64_t>::max())) return Int(static_cast<int64_t>(g));
    return Int(static_cast<__int128>(g));
  }
  mpz_class r;
  const mpz_class am = a.to_mpz();
  const mpz_class bm = b.to_mpz();
  mpz_gcd(r.get_mpz_t(), am.get_mpz_t(), bm.get_mpz_t());
  return Int(r);
}

bool operator==(const Int& a, const Int& b) noexcept {
  if (a.is_small() != b.is_small()) return false;
  if (a.is_small()) return a.small_ == b.small_;
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Int& a, const Int& b) noexcept {
  if (a.is_small() && b.is_small()) return a.small_ <=> b.small_;
  const int c = cmp(a.to_mpz(), b.to_mpz());
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Int& v) { return os << v.str(); }

}  // namespace drgtet
