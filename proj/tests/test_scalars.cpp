#include <doctest.h>

#include <random>

#include "drgtet/finite_field.hpp"
#include "drgtet/quad_scalar.hpp"
#include "drgtet/rational.hpp"

using namespace drgtet;

namespace {

QuadScalar qs(long long a, long long c, int64_t m) { return QuadScalar(Rational(a), Rational(c), m); }

}  // namespace

TEST_CASE("Int promotes to big values and back") {
  Int a(INT64_MAX);
  Int b = a + Int(1);
  CHECK_FALSE(b.is_small());
  CHECK(b.str() == "9223372036854775808");
  CHECK((b - Int(1)).is_small());
  CHECK(b - Int(1) == a);
  Int c = Int::parse("-123456789012345678901234567890");
  CHECK(c.sign() == -1);
  CHECK((c * c).str() == "15241578753238836750495351562536198787501905199875019052100");
  CHECK(gcd(Int(12), Int(-18)) == Int(6));
  CHECK(divexact(c * Int(7), Int(7)) == c);
}

TEST_CASE("Rational arithmetic stays reduced") {
  Rational x = Rational::parse("6/-4");
  CHECK(x.str() == "-3/2");
  CHECK(x + Rational(3, 2) == Rational(0));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK((Rational(2, 3) / Rational(4, 9)).str() == "3/2");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("Quadratic field arithmetic") {
  CHECK(qs(1, 1, 2) * qs(1, -1, 2) == QuadScalar(-1));
  CHECK(QuadScalar::sqrt_of(-2) * QuadScalar::sqrt_of(-2) == QuadScalar(-2));
  const QuadScalar num(Rational(3, 2), Rational(1, 2), 2);
  CHECK(num / qs(1, 1, 2) == QuadScalar(Rational(-1, 2), Rational(1), 2));
  CHECK(conj(QuadScalar::sqrt_of(-2)) == -QuadScalar::sqrt_of(-2));
  CHECK(conj(QuadScalar::sqrt_of(2)) == QuadScalar::sqrt_of(2));
  CHECK(qs(1, 1, 2).norm() == Rational(-1));
  CHECK((QuadScalar::sqrt_of(2) - QuadScalar::sqrt_of(2)).field_tag() == 0);
  CHECK_THROWS_AS(QuadScalar::sqrt_of(2) + QuadScalar::sqrt_of(3), std::invalid_argument);
  CHECK_THROWS_AS(QuadScalar::sqrt_of(4), std::invalid_argument);
}

TEST_CASE("Quadratic scalars round-trip through text") {
  for (const char* text : {"0", "-7/3", "1+sqrt(2)", "1/2-3/4*sqrt(-2)", "sqrt(-2)", "-sqrt(5)"}) {
    const QuadScalar v = QuadScalar::parse(text);
    CHECK(QuadScalar::parse(v.str()) == v);
  }
  CHECK(QuadScalar::parse("2*sqrt(2)") == qs(0, 2, 2));
}

TEST_CASE("Gaussian integers") {
  const QuadScalar q = QuadScalar::sqrt_of(2);
  CHECK(q_int(3, q) == QuadScalar(Rational(7, 2)));
  CHECK(q_int(1, q) == QuadScalar(1));
  CHECK(q_int(0, q) == QuadScalar(0));
  CHECK(q_int(-2, q) == -q_int(2, q));
  // [n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}
  const QuadScalar r = qs(1, 1, 3);
  for (int n = 1; n <= 6; ++n) {
    QuadScalar sum(0);
    for (int k = 1 - n; k <= n - 1; k += 2) sum += r.pow(k);
    CHECK(q_int(n, r) == sum);
  }
  CHECK_THROWS_AS(q_int(2, QuadScalar(-1)), std::domain_error);
}

TEST_CASE("Squarefree decomposition") {
  CHECK(squarefree_decompose(8) == std::pair<int64_t, int64_t>{2, 2});
  CHECK(squarefree_decompose(4) == std::pair<int64_t, int64_t>{2, 1});
  CHECK(squarefree_decompose(-2) == std::pair<int64_t, int64_t>{1, -2});
  CHECK(squarefree_decompose(-8) == std::pair<int64_t, int64_t>{2, -2});
  CHECK(squarefree_decompose(18) == std::pair<int64_t, int64_t>{3, 2});
}

TEST_CASE("Quadratic field axioms on random samples") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int m : {2, -2, 3, -1}) {
    for (int t = 0; t < 200; ++t) {
      const QuadScalar a(Rational(d(rng), 1 + (d(rng) + 9) % 5), Rational(d(rng)), m);
      const QuadScalar b(Rational(d(rng)), Rational(d(rng), 3), m);
      const QuadScalar c(Rational(d(rng)), Rational(d(rng)), m);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      if (!a.is_zero()) CHECK(a * a.inverse() == QuadScalar(1));
      CHECK(conj(a * b) == conj(a) * conj(b));
    }
  }
}

TEST_CASE("GF(4) arithmetic") {
  const FieldSpec f = FieldSpec::quadratic(2);
  CHECK(f.order() == 4);
  const FFElem t = FFElem::from_index(f, 2);
  const FFElem one = FFElem::from_index(f, 1);
  CHECK(t * t == t + one);
  CHECK(t.frobenius() == t + one);
  CHECK(t * t.inverse() == one);
  CHECK(t.pow(3) == one);
}

TEST_CASE("Finite field axioms") {
  for (uint32_t p : {2u, 3u, 5u}) {
    for (const FieldSpec& f : {FieldSpec::prime(p), FieldSpec::quadratic(p)}) {
      const FFElem one = FFElem::from_index(f, 1);
      for (uint32_t i = 1; i < f.order(); ++i) {
        const FFElem a = FFElem::from_index(f, i);
        CHECK(a * a.inverse() == one);
        CHECK(a.pow(f.order() - 1) == one);
        for (uint32_t j = 0; j < f.order(); ++j) {
          const FFElem b = FFElem::from_index(f, j);
          CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
          CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
        }
      }
    }
  }
}

TEST_CASE("Rank over a finite field") {
  const FieldSpec f = FieldSpec::prime(2);
  auto e = [&](uint32_t v) { return FFElem::from_index(f, v); };
  CHECK(ff_rank({e(1), e(1), e(1), e(1)}, 2, 2) == 1);
  CHECK(ff_rank({e(1), e(0), e(0), e(1)}, 2, 2) == 2);
  CHECK(ff_rank({e(0), e(0), e(0), e(0)}, 2, 2) == 0);
}
