#include "drgtet/quad_scalar.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace drgtet {

bool is_valid_field_tag(int64_t m) noexcept {
  if (m == 0 || m == 1) return false;
  uint64_t u = m < 0 ? static_cast<uint64_t>(-(m + 1)) + 1 : static_cast<uint64_t>(m);
  for (uint64_t p = 2; p * p <= u; ++p) {
    if (u % (p * p) == 0) return false;
  }
  return true;
}

std::pair<int64_t, int64_t> squarefree_decompose(int64_t b) {
  if (b == 0) throw std::invalid_argument("squarefree_decompose: zero");
  int64_t sign = b < 0 ? -1 : 1;
  int64_t u = b < 0 ? -b : b;
  int64_t s = 1;
  for (int64_t p = 2; p * p <= u; ++p) {
    while (u % (p * p) == 0) {
      u /= p * p;
      s *= p;
    }
  }
  return {s, sign * u};
}

QuadScalar::QuadScalar(Rational a, Rational c, int64_t m) : a_(std::move(a)), c_(std::move(c)), m_(m) {
  if (!c_.is_zero() && !is_valid_field_tag(m)) {
    throw std::invalid_argument("invalid quadratic field tag " + std::to_string(m));
  }
  canonicalize();
}

QuadScalar QuadScalar::sqrt_of(int64_t m) { return QuadScalar(Rational(0), Rational(1), m); }

void QuadScalar::canonicalize() noexcept {
  if (c_.is_zero()) m_ = 0;
}

int64_t QuadScalar::merged_tag(const QuadScalar& o) const {
  if (m_ == o.m_ || o.m_ == 0) return m_;
  if (m_ == 0) return o.m_;
  throw std::invalid_argument("incompatible quadratic fields: sqrt(" + std::to_string(m_) + ") vs sqrt(" +
                              std::to_string(o.m_) + ")");
}

QuadScalar QuadScalar::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s.push_back(ch);
  }
  const auto sq = s.find("sqrt(");
  if (sq == std::string::npos) return QuadScalar(Rational::parse(s));
  if (s.back() != ')') throw std::invalid_argument("malformed quadratic scalar: " + s);
  const int64_t m = std::stoll(s.substr(sq + 5, s.size() - sq - 6));
  std::string head = s.substr(0, sq);
  if (!head.empty() && head.back() == '*') head.pop_back();
  // Split head into the rational part and the signed coefficient of sqrt(m).
  std::size_t split = std::string::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  }
  Rational a(0);
  std::string coef = head;
  if (split != std::string::npos) {
    a = Rational::parse(head.substr(0, split));
    coef = head.substr(split);
  }
  Rational c;
  if (coef.empty() || coef == "+") {
    c = Rational(1);
  } else if (coef == "-") {
    c = Rational(-1);
  } else {
    c = Rational::parse(coef[0] == '+' ? coef.substr(1) : coef);
  }
  return QuadScalar(a, c, m);
}

std::string QuadScalar::str() const {
  if (c_.is_zero()) return a_.str();
  std::string tail = "sqrt(" + std::to_string(m_) + ")";
  if (a_.is_zero()) return c_.str() + "*" + tail;
  if (c_.sign() < 0) return a_.str() + "-" + (-c_).str() + "*" + tail;
  return a_.str() + "+" + c_.str() + "*" + tail;
}

Rational QuadScalar::norm() const {
  if (c_.is_zero()) return a_ * a_;
  return a_ * a_ - Rational(m_) * c_ * c_;
}

QuadScalar QuadScalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (c_.is_zero()) return QuadScalar(a_.inverse());
  const Rational n = norm();
  return QuadScalar(a_ / n, -c_ / n, m_);
}

QuadScalar QuadScalar::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  QuadScalar result(1);
  QuadScalar base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

std::pair<double, double> QuadScalar::to_complex() const {
  const double a = a_.to_double();
  if (c_.is_zero()) return {a, 0.0};
  const double c = c_.to_double();
  if (m_ > 0) return {a + c * std::sqrt(static_cast<double>(m_)), 0.0};
  return {a, c * std::sqrt(static_cast<double>(-m_))};
}

QuadScalar QuadScalar::operator-() const {
  QuadScalar r = *this;
  r.a_ = -r.a_;
  r.c_ = -r.c_;
  return r;
}

QuadScalar& QuadScalar::operator+=(const QuadScalar& o) {
  m_ = merged_tag(o);
  a_ += o.a_;
  if (!o.c_.is_zero()) c_ += o.c_;
  canonicalize();
  return *this;
}

QuadScalar& QuadScalar::operator-=(const QuadScalar& o) {
  m_ = merged_tag(o);
  a_ -= o.a_;
  if (!o.c_.is_zero()) c_ -= o.c_;
  canonicalize();
  return *this;
}

QuadScalar& QuadScalar::operator*=(const QuadScalar& o) {
  const int64_t m = merged_tag(o);
  if (c_.is_zero() && o.c_.is_zero()) {
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + Rational(m) * c_ * o.c_;
  Rational c = a_ * o.c_ + c_ * o.a_;
  a_ = std::move(a);
  c_ = std::move(c);
  m_ = m;
  canonicalize();
  return *this;
}

QuadScalar& QuadScalar::operator/=(const QuadScalar& o) {
  merged_tag(o);
  return *this *= o.inverse();
}

std::ostream& operator<<(std::ostream& os, const QuadScalar& v) { return os << v.str(); }

QuadScalar conj(const QuadScalar& s) {
  if (s.field_tag() >= 0) return s;
  return QuadScalar(s.rational_part(), -s.sqrt_part(), s.field_tag());
}

QuadScalar q_int(int n, const QuadScalar& q) {
  if (q.is_zero()) throw std::domain_error("q_int: q = 0");
  const QuadScalar q2 = q * q;
  if (q2 == QuadScalar(1)) throw std::domain_error("q_int: q^2 = 1");
  return (q.pow(n) - q.pow(-n)) / (q - q.inverse());
}

}  // namespace drgtet
