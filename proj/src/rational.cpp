#include "drgtet/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace drgtet {

Rational::Rational(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational with zero denominator");
  reduce();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(Int::parse(text));
  return Rational(Int::parse(text.substr(0, slash)), Int::parse(text.substr(slash + 1)));
}

void Rational::reduce() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = Int(1);
    return;
  }
  if (den_.is_one()) return;
  Int g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = divexact(num_, g);
    den_ = divexact(den_, g);
  }
}

double Rational::to_double() const {
  if (num_.is_small() && den_.is_small()) return static_cast<double>(num_.small()) / static_cast<double>(den_.small());
  return mpq_class(num_.to_mpz(), den_.to_mpz()).get_d();
}

std::string Rational::str() const { return den_.is_one() ? num_.str() : num_.str() + "/" + den_.str(); }

Rational Rational::inverse() const {
  if (num_.is_zero()) throw std::domain_error("division by zero");
  return Rational(den_, num_);
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    reduce();
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  reduce();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    return *this;
  }
  num_ *= o.num_;
  den_ *= o.den_;
  reduce();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.inverse(); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ <=> b.num_ * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.str(); }

}  // namespace drgtet
