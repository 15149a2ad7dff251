#include <doctest.h>

#include <random>

#include "drgtet/exact_matrix.hpp"

using namespace drgtet;

namespace {

QuadScalar qs(long long a, long long c, int64_t m) { return QuadScalar(Rational(a), Rational(c), m); }

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int64_t m, int density = 2) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::uniform_int_distribution<int> z(0, density);
  std::vector<QuadScalar> e(r * c);
  for (auto& x : e) {
    if (z(rng) == 0) continue;
    x = m == 0 ? QuadScalar(Rational(d(rng), 1 + (d(rng) + 5) % 3))
               : QuadScalar(Rational(d(rng)), Rational(d(rng), 1 + (d(rng) + 5) % 2), m);
  }
  return ExactMatrix::from_entries(r, c, e, m);
}

// Schoolbook product on scalars.
ExactMatrix naive_product(const ExactMatrix& a, const ExactMatrix& b) {
  std::vector<QuadScalar> e(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      QuadScalar s(0);
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      e[i * b.cols() + j] = s;
    }
  }
  return ExactMatrix::from_entries(a.rows(), b.cols(), e, a.field() ? a.field() : b.field());
}

}  // namespace

TEST_CASE("Entries, canonical form and equality") {
  const ExactMatrix a = ExactMatrix::from_entries(2, 2, {QuadScalar(Rational(1, 2)), QuadScalar(0), QuadScalar(0),
                                                         QuadScalar(Rational(3, 4))});
  CHECK(a.denominator() == Int(4));
  CHECK(a(0, 0) == QuadScalar(Rational(1, 2)));
  CHECK(a * QuadScalar(4) == ExactMatrix::diagonal({2, 3}));
  ExactMatrix b = ExactMatrix::identity(2, 2);
  b.set(0, 1, QuadScalar::sqrt_of(2));
  CHECK_FALSE(b.is_rational());
  b.set(0, 1, QuadScalar(0));
  CHECK(b.is_rational());
  CHECK(b.is_identity());
  CHECK(b == ExactMatrix::identity(2));
}

TEST_CASE("Products agree with the schoolbook formula") {
  std::mt19937_64 rng(11);
  for (int64_t m : {0, 2, -2}) {
    for (int t = 0; t < 10; ++t) {
      const ExactMatrix a = random_matrix(rng, 5, 7, m);
      const ExactMatrix b = random_matrix(rng, 7, 4, m);
      CHECK(a * b == naive_product(a, b));
      CHECK((a * b).transpose() == b.transpose() * a.transpose());
      CHECK((a * b).conj() == a.conj() * b.conj());
    }
  }
}

TEST_CASE("Products with large entries take the multiprecision path") {
  std::vector<QuadScalar> e;
  for (int i = 0; i < 9; ++i) e.emplace_back(Rational(Int::parse("123456789012345678901") * Int(i + 1), Int(7)));
  const ExactMatrix a = ExactMatrix::from_entries(3, 3, e);
  CHECK(a * a == naive_product(a, a));
  const ExactMatrix s = a * QuadScalar::sqrt_of(2);
  CHECK(s * s == naive_product(a, a) * QuadScalar(2));
}

TEST_CASE("Small eliminations") {
  const ExactMatrix a = ExactMatrix::from_integers(2, 2, {2, 1, 0, 3});
  const ExactMatrix ai = a.inverse();
  CHECK(ai == ExactMatrix::from_entries(2, 2, {QuadScalar(Rational(1, 2)), QuadScalar(Rational(-1, 6)), QuadScalar(0),
                                               QuadScalar(Rational(1, 3))}));
  const ExactMatrix u = ExactMatrix::from_entries(2, 2, {QuadScalar(1), -QuadScalar::sqrt_of(2), QuadScalar(0),
                                                         QuadScalar(1)});
  CHECK(u.inverse() == ExactMatrix::from_entries(2, 2, {QuadScalar(1), QuadScalar::sqrt_of(2), QuadScalar(0),
                                                        QuadScalar(1)}));
  CHECK_THROWS_AS((void)ExactMatrix::from_integers(2, 2, {1, 2, 2, 4}).inverse(), std::domain_error);
  CHECK(ExactMatrix::from_integers(2, 2, {1, 2, 2, 4}).rank() == 1);
  // rows (1, sqrt2) and (sqrt2, 2) are dependent over Q(sqrt 2)
  const ExactMatrix d = ExactMatrix::from_entries(2, 2, {QuadScalar(1), QuadScalar::sqrt_of(2), QuadScalar::sqrt_of(2),
                                                         QuadScalar(2)});
  CHECK(d.rank() == 1);
  const ExactMatrix n = d.nullspace();
  CHECK(n.cols() == 1);
  CHECK((d * n).is_zero());
}

TEST_CASE("Inverse and solve on random matrices") {
  std::mt19937_64 rng(5);
  for (int64_t m : {0, 2, -2, 5}) {
    for (int t = 0; t < 8; ++t) {
      const ExactMatrix a = random_matrix(rng, 6, 6, m, 4);
      if (a.rank() < 6) continue;
      const ExactMatrix ai = a.inverse();
      CHECK((a * ai).is_identity());
      CHECK((ai * a).is_identity());
      const ExactMatrix rhs = random_matrix(rng, 6, 3, m);
      CHECK(a * a.solve(rhs) == rhs);
    }
  }
}

TEST_CASE("Rank-nullity and reduced form on random matrices") {
  std::mt19937_64 rng(9);
  for (int64_t m : {0, 2, -2}) {
    for (int t = 0; t < 10; ++t) {
      // product of thin factors has controlled rank
      const std::size_t k = 1 + t % 4;
      const ExactMatrix a = random_matrix(rng, 7, k, m, 5) * random_matrix(rng, k, 9, m, 5);
      const auto rr = a.rref();
      const ExactMatrix n = a.nullspace();
      CHECK(rr.pivots.size() == a.rank());
      CHECK(rr.pivots.size() + n.cols() == 9);
      CHECK((a * n).is_zero());
      CHECK(n.rank() == n.cols());
      for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
        for (std::size_t r = 0; r < rr.pivots.size(); ++r) {
          CHECK(rr.reduced(r, rr.pivots[i]) == QuadScalar(r == i ? 1 : 0));
        }
      }
      // reduced rows span the row space: stacking adds no rank
      CHECK(ExactMatrix::vconcat({&rr.reduced, &a}).rank() == rr.pivots.size());
    }
  }
}

TEST_CASE("Concatenation and selection") {
  const ExactMatrix a = ExactMatrix::from_integers(2, 2, {1, 2, 3, 4});
  const ExactMatrix b = ExactMatrix::identity(2) * QuadScalar::sqrt_of(2);
  const ExactMatrix h = ExactMatrix::hconcat({&a, &b});
  CHECK(h.cols() == 4);
  CHECK(h.select_columns({0, 1}) == a);
  CHECK(h.select_columns({2, 3}) == b);
  const ExactMatrix v = ExactMatrix::vconcat({&a, &b});
  CHECK(v.select_rows({2, 3}) == b);
  CHECK(a.hadamard(a) == ExactMatrix::from_integers(2, 2, {1, 4, 9, 16}));
  CHECK(a.trace() == QuadScalar(5));
  CHECK(a.scale_rows({QuadScalar(1), QuadScalar::sqrt_of(2)})(1, 0) == QuadScalar(Rational(0), Rational(3), 2));
}
