#include <doctest.h>

#include <map>
#include <set>

#include "chain.hpp"
#include "drgtet/uq_pullback.hpp"

using namespace drgtet;
using drgtet::testing::build_chain;

namespace {

const QuadScalar kSqrt2(Rational(0), Rational(1), 2);
const QuadScalar kISqrt2(Rational(0), Rational(1), -2);

// (q x y - q^-1 y x) - (q - q^-1) rhs without the division, as a second
// reading of each q-Weyl relation.
ExactMatrix weyl_undivided(const ExactMatrix& x, const ExactMatrix& y, const ExactMatrix& rhs, const QuadScalar& q) {
  return (x * y) * q - (y * x) * q.inverse() - rhs * (q - q.inverse());
}

// Evaluation module of U_q(affine sl2) on a 2-dimensional space with K1 = K,
// K0 = K^-1, e1^+ = e^+, e1^- = e^-, e0^+ = e^-, e0^- = e^+.
UqAction<ExactMatrix> evaluation_module(const QuadScalar& q) {
  const int64_t f = q.field_tag();
  const ExactMatrix k = ExactMatrix::diagonal({q, q.inverse()}, f);
  const ExactMatrix k_inv = ExactMatrix::diagonal({q.inverse(), q}, f);
  const ExactMatrix ep = ExactMatrix::from_integers(2, 2, {0, 1, 0, 0}, f);
  const ExactMatrix em = ExactMatrix::from_integers(2, 2, {0, 0, 1, 0}, f);
  UqAction<ExactMatrix> u;
  u.q = q;
  u.K = {k_inv, k};
  u.K_inv = {k, k_inv};
  u.e_plus = {em, ep};
  u.e_minus = {ep, em};
  u.x = u.K;
  u.x_inv = u.K_inv;
  const auto yz = equitable_from_chevalley(u);
  for (int j = 0; j < 2; ++j) {
    u.y[j] = yz[j].first;
    u.z[j] = yz[j].second;
  }
  return u;
}

}  // namespace

TEST_CASE("relation list has 4 inverse, 12 q-Weyl and 4 q-Serre instances closed under rotation") {
  const auto rels = qtet_relations();
  REQUIRE(rels.size() == 20);
  std::map<QTetRelation::Kind, int> count;
  std::set<std::string> ids;
  for (const auto& r : rels) {
    ++count[r.kind];
    ids.insert(r.id);
    CHECK(is_qtet_generator(r.h, r.i));
  }
  CHECK(count[QTetRelation::Kind::Inverse] == 4);
  CHECK(count[QTetRelation::Kind::QWeyl] == 12);
  CHECK(count[QTetRelation::Kind::QSerre] == 4);
  CHECK(ids.size() == 20);
  // Shifting every index by one permutes the instances.
  for (const auto& r : rels) {
    bool found = false;
    for (const auto& s : rels) {
      const bool same = s.kind == r.kind && s.h == (r.h + 1) % 4 && s.i == (r.i + 1) % 4 &&
                        (r.kind == QTetRelation::Kind::Inverse || s.j == (r.j + 1) % 4);
      found = found || same;
    }
    CHECK_MESSAGE(found, r.id);
  }
  int generators = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) generators += is_qtet_generator(i, j) ? 1 : 0;
  }
  CHECK(generators == 8);
  CHECK(qtet_generator_name(5, -1) == "x13");
}

TEST_CASE("q-tetrahedron action on Bil2(2,2)") {
  const auto c = build_chain<ExactMatrix>(build_bilinear(2, 2, 2));
  const auto& act = c.act;
  const QuadScalar q = c.cp.q;
  const auto rep = verify_qtet_relations(act);
  REQUIRE(rep.records.size() == 20);
  CHECK(rep.all_zero());
  CHECK(rep.failures() == 0);

  SUBCASE("generators are the stated products") {
    CHECK(act.at(0, 1) == c.pair.a * c.sm.Phi * c.sm.Psi_inv);
    CHECK(act.at(1, 2) == c.sm.B * c.sm.Phi_inv);
    CHECK(act.at(2, 3) == c.pair.astar() * c.sm.Phi * c.sm.Psi);
    CHECK(act.at(3, 0) == c.sm.Bstar * c.sm.Phi_inv);
    CHECK(act.at(0, 2) == c.sm.K * c.sm.Psi_inv);
    CHECK(act.at(1, 3) == c.sm.Kstar * c.sm.Psi);
    CHECK((act.at(0, 2) * act.at(2, 0)).is_identity());
    CHECK((act.at(1, 3) * act.at(3, 1)).is_identity());
    CHECK_THROWS_AS((void)act.at(0, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)act.at(1, 1), std::invalid_argument);
  }

  SUBCASE("undivided q-Weyl form agrees") {
    const ExactMatrix id = ExactMatrix::identity(c.g.n, 2);
    for (const auto& r : qtet_relations()) {
      if (r.kind != QTetRelation::Kind::QWeyl) continue;
      CHECK_MESSAGE(weyl_undivided(act.at(r.h, r.i), act.at(r.i, r.j), id, q).is_zero(), r.id);
    }
  }

  SUBCASE("a perturbed generator breaks exactly the relations it enters") {
    auto bad = act;
    ExactMatrix m = bad.x[4 * 0 + 1];
    m.set(3, 5, m(3, 5) + QuadScalar(1));
    bad.x[4 * 0 + 1] = m;
    const auto r = verify_qtet_relations(bad);
    CHECK_FALSE(r.all_zero());
    for (const auto& rec : r.records) {
      const bool uses01 = rec.relation.find("x01") != std::string::npos;
      CHECK_MESSAGE(rec.zero == !uses01, rec.id);
      if (!rec.zero) CHECK(rec.residual.rfind("entry (", 0) == 0);
    }
    CHECK_FALSE(flip_negation_check(bad, rep));
  }

  SUBCASE("a wrong q fails the q-Weyl relations") {
    auto bad = act;
    bad.q = q.inverse();
    const auto r = verify_qtet_relations(bad);
    std::size_t weyl_fail = 0;
    for (const auto& rec : r.records) weyl_fail += (rec.kind == "q-weyl" && !rec.zero) ? 1 : 0;
    CHECK(weyl_fail > 0);
  }

  SUBCASE("negation invariance") {
    const auto neg = negated(act);
    CHECK(neg.at(0, 1) == -act.at(0, 1));
    CHECK(verify_qtet_relations(neg).all_zero());
    CHECK(flip_negation_check(act, rep));
  }
}

TEST_CASE("q-tetrahedron action with imaginary q on Her(2,2), both roots") {
  for (bool neg : {false, true}) {
    const auto c = build_chain<ExactMatrix>(build_hermitean(2, 2), neg);
    CHECK(c.cp.q == (neg ? -kISqrt2 : kISqrt2));
    const auto rep = verify_qtet_relations(c.act);
    CHECK(rep.all_zero());
    CHECK(flip_negation_check(c.act, rep));
  }
}

TEST_CASE("q-tetrahedron action with rational q on Alt2(4)") {
  const auto c = build_chain<ExactMatrix>(build_alternating(2, 4));
  CHECK(c.cp.q == QuadScalar(2));
  CHECK(c.act.at(0, 1).is_rational());
  CHECK(verify_qtet_relations(c.act).all_zero());
}

TEST_CASE("q_weyl_residual on scalars") {
  const QuadScalar q(3);
  const auto x = ExactMatrix::from_integers(1, 1, {2});
  const auto y = ExactMatrix::from_integers(1, 1, {5});
  // (3*10 - 10/3) / (3 - 1/3) = 10, so residual against 10 is zero.
  CHECK(q_weyl_residual(x, y, ExactMatrix::from_integers(1, 1, {10}), q).is_zero());
  CHECK(q_weyl_residual(x, y, ExactMatrix::from_integers(1, 1, {9}), q)(0, 0) == QuadScalar(1));
}

TEST_CASE("Chevalley and equitable presentations on the 2-dimensional evaluation module") {
  for (const QuadScalar& q : {QuadScalar(2), kSqrt2, kISqrt2}) {
    auto u = evaluation_module(q);
    const auto ch = verify_uq_chevalley(u);
    CHECK(ch.all_zero());
    const auto eq = verify_uq_equitable(u);
    for (const auto& r : eq.records) CHECK_MESSAGE(r.zero, r.id << " " << r.residual);
    CHECK(verify_uq_sl2(u).all_zero());
    // Deriving Chevalley generators back from (x, y, z) reproduces the module.
    auto v = u;
    derive_chevalley(v);
    for (int j = 0; j < 2; ++j) {
      CHECK(v.e_plus[j] == u.e_plus[j]);
      CHECK(v.e_minus[j] == u.e_minus[j]);
    }
    CHECK(chevalley_round_trip(v));
  }
}

TEST_CASE("Chevalley suite rejects a broken module") {
  auto u = evaluation_module(QuadScalar(2));
  u.e_plus[1] = u.e_plus[1] * QuadScalar(2);
  const auto ch = verify_uq_chevalley(u);
  CHECK_FALSE(ch.all_zero());
  std::set<std::string> failed;
  for (const auto& r : ch.records) {
    if (!r.zero) failed.insert(r.id);
  }
  CHECK(failed.count("bracket-e1") == 1);
  CHECK(failed.count("bracket-e0") == 0);
}

TEST_CASE("U_q pullbacks of Bil2(2,2), Alt2(4) and Her(2,2) for all four indices") {
  const GraphData graphs[] = {build_bilinear(2, 2, 2), build_alternating(2, 4), build_hermitean(2, 2)};
  for (const auto& g : graphs) {
    const auto c = build_chain<ExactMatrix>(g);
    for (int i = 0; i < 4; ++i) {
      const auto u = pullback(c.act, i);
      CHECK(u.index == i);
      CHECK(u.x[1] == c.act.at(i, i + 2));
      CHECK(u.y[0] == c.act.at(i, i + 1));
      CHECK(u.z[1] == c.act.at(i + 3, i));
      CHECK((u.x[0] * u.x[1]).is_identity());
      const auto eq = verify_uq_equitable(u);
      const auto ch = verify_uq_chevalley(u);
      for (const auto& r : eq.records) CHECK_MESSAGE(r.zero, g.family << " i=" << i << " " << r.id);
      for (const auto& r : ch.records) CHECK_MESSAGE(r.zero, g.family << " i=" << i << " " << r.id);
      CHECK(verify_uq_sl2(u).all_zero());
      CHECK(chevalley_round_trip(u));
    }
    CHECK(pullback(c.act, 5).x[1] == pullback(c.act, 1).x[1]);
  }
}

TEST_CASE("float backend agrees on Bil2(2,2)") {
  const auto c = build_chain<FloatMatrix>(build_bilinear(2, 2, 2));
  CHECK(verify_qtet_relations(c.act).all_zero());
  for (int i = 0; i < 4; ++i) {
    const auto u = pullback(c.act, i);
    CHECK(verify_uq_equitable(u).all_zero());
    CHECK(verify_uq_chevalley(u).all_zero());
  }
}
