#include <doctest.h>

#include <map>

#include "chain.hpp"
#include "drgtet/analysis.hpp"

using namespace drgtet;
using drgtet::testing::build_chain;

TEST_CASE("Phi and Psi commute with A and A*") {
  const GraphData graphs[] = {build_bilinear(2, 2, 2), build_alternating(2, 4), build_hermitean(2, 2)};
  for (const auto& g : graphs) {
    const auto c = build_chain<ExactMatrix>(g);
    const auto recs = check_centrality(c.sm, c.pair);
    REQUIRE(recs.size() == 4);
    for (const auto& r : recs) {
      CHECK_MESSAGE(r.zero, g.family << " " << r.id);
      CHECK(r.residual == "0");
    }
    // B is not central: the check is not vacuous.
    const ExactMatrix comm = c.sm.B * c.pair.a - c.pair.a * c.sm.B;
    CHECK_FALSE(comm.is_zero());
  }
}

TEST_CASE("centrality check reports a non-commuting substitute") {
  const auto c = build_chain<ExactMatrix>(build_bilinear(2, 2, 2));
  auto sm = c.sm;
  sm.Phi = c.sm.K;
  const auto recs = check_centrality(sm, c.pair);
  std::map<std::string, bool> zero;
  for (const auto& r : recs) zero[r.id] = r.zero;
  CHECK_FALSE((zero["[Phi,A*]"] && zero["[Phi,A]"]));
  CHECK(zero["[Psi,A]"]);
}

TEST_CASE("transpose conjectures give structured records") {
  const auto c = build_chain<ExactMatrix>(build_bilinear(2, 2, 2));
  const auto recs = conjecture_transpose(c.sm, false);
  REQUIRE(recs.size() == 4);
  for (const auto& r : recs) {
    CHECK(r.observed_pass);
    CHECK(r.witness.empty());
    CHECK_FALSE(r.supplementary);
  }
  CHECK(check_psi_identity(c.sm) == c.sm.Psi.is_identity());

  SUBCASE("a non-symmetric Phi is an observed fail with a witness") {
    auto sm = c.sm;
    ExactMatrix m = sm.Phi;
    m.set(0, 1, m(0, 1) + QuadScalar(1));
    sm.Phi = m;
    const auto bad = conjecture_transpose(sm, false);
    CHECK_FALSE(bad[0].observed_pass);
    CHECK(bad[0].witness.find("entry (") == 0);
    CHECK(bad[1].observed_pass);
  }
}

TEST_CASE("conjugate-transpose variants are supplementary") {
  const auto c = build_chain<ExactMatrix>(build_hermitean(2, 2));
  const auto recs = conjecture_transpose(c.sm, true);
  REQUIRE(recs.size() == 8);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK_FALSE(recs[k].supplementary);
    CHECK(recs[k + 4].supplementary);
    CHECK(recs[k + 4].id == recs[k].id + "-conjugate");
    CHECK(recs[k + 4].statement.find("^H") != std::string::npos);
  }
  // Plain and conjugate transposes differ on this graph unless the matrix is real.
  const bool phi_real = c.sm.Phi == c.sm.Phi.conj();
  if (phi_real) CHECK(recs[0].observed_pass == recs[4].observed_pass);
}

TEST_CASE("tilde orthogonality pairs") {
  const auto c = build_chain<ExactMatrix>(build_bilinear(2, 2, 2));
  const auto rep = conjecture_orthogonality(*c.sys);
  // Independent count of nonzero block pairs, split into exempt and checked.
  std::size_t checked = 0, exempt = 0;
  const int d = c.arr.D;
  const std::pair<std::pair<Dir, Dir>, std::pair<Dir, Dir>> pairs[] = {
      {{Dir::Down, Dir::Down}, {Dir::Up, Dir::Up}}, {{Dir::Down, Dir::Up}, {Dir::Up, Dir::Down}}};
  for (const auto& [a, b] : pairs) {
    const auto da = c.sys->grid(a.first, a.second).dimensions();
    const auto db = c.sys->grid(b.first, b.second).dimensions();
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j)
        for (int r = 0; r <= d; ++r)
          for (int s = 0; s <= d; ++s) {
            if (da[i][j] == 0 || db[r][s] == 0) continue;
            (i + r == d && j + s == d ? exempt : checked) += 1;
          }
  }
  CHECK(rep.pairs_checked == checked);
  CHECK(rep.pairs_exempt == exempt);
  CHECK(rep.observed_pass());
  // Direct Gram check of one checked pair.
  const auto& dd = c.sys->grid(Dir::Down, Dir::Down);
  const auto& uu = c.sys->grid(Dir::Up, Dir::Up);
  const ExactMatrix gram = dd.tilde_at(1, 1).rows() * uu.tilde_at(0, 0).rows().conj().transpose();
  CHECK(gram.is_zero() == rep.observed_pass());
}

TEST_CASE("entry patterns: exhaustive below the pair budget, seeded sampling above") {
  auto c = build_chain<ExactMatrix>(build_bilinear(2, 2, 2));
  const auto full = entry_pattern_report(c.sm.Phi, "Phi", c.g, 0, 1000, 7);
  CHECK(full.exhaustive);
  CHECK(full.pairs == 256);
  std::size_t total = 0;
  for (const auto& cl : full.classes) total += cl.samples;
  CHECK(total == 256);
  // The identity matrix is constant on every class.
  const auto id = entry_pattern_report(ExactMatrix::identity(16), "I", c.g, 0, 1000, 7);
  for (const auto& cl : id.classes) {
    CHECK(cl.constant);
    CHECK(cl.value == (cl.yz == 0 ? "1" : "0"));
  }
  // A_1 is constant with value [d(y,z) = 1].
  const auto adj = entry_pattern_report(c.g.adjacency(), "A", c.g, 0, 1000, 7);
  for (const auto& cl : adj.classes) CHECK(cl.value == (cl.yz == 1 ? "1" : "0"));

  const auto s1 = entry_pattern_report(c.sm.Phi, "Phi", c.g, 0, 100, 42);
  const auto s2 = entry_pattern_report(c.sm.Phi, "Phi", c.g, 0, 100, 42);
  CHECK_FALSE(s1.exhaustive);
  CHECK(s1.pairs == 100);
  CHECK(s1.seed == 42);
  REQUIRE(s1.classes.size() == s2.classes.size());
  for (std::size_t k = 0; k < s1.classes.size(); ++k) {
    CHECK(s1.classes[k].samples == s2.classes[k].samples);
    CHECK(s1.classes[k].value == s2.classes[k].value);
  }
  for (std::size_t k = 1; k < full.classes.size(); ++k) {
    const auto& a = full.classes[k - 1];
    const auto& b = full.classes[k];
    CHECK(std::tie(a.xy, a.yz, a.zx) < std::tie(b.xy, b.yz, b.zx));
  }
}

TEST_CASE("Phi and Psi spectra match eigenspace dimensions") {
  const GraphData graphs[] = {build_bilinear(2, 2, 2), build_hermitean(2, 2)};
  for (const auto& g : graphs) {
    const auto c = build_chain<ExactMatrix>(g);
    const auto sp = phi_psi_spectrum(*c.sys, c.cp.q);
    const int64_t f = c.cp.q.field_tag();
    for (const auto& [list, m] : {std::pair{&sp.phi, &c.sm.Phi}, std::pair{&sp.psi, &c.sm.Psi}}) {
      std::size_t total = 0;
      for (const auto& e : *list) {
        total += e.multiplicity;
        const QuadScalar v = c.cp.q.pow(e.exponent);
        CHECK(e.value == v.str());
        // Diagonalizable, so the eigenspace dimension is the nullity.
        const ExactMatrix shifted = *m - ExactMatrix::scalar(g.n, v, f);
        CHECK(g.n - shifted.rank() == e.multiplicity);
      }
      CHECK(total == g.n);
    }
  }
}

TEST_CASE("analysis agrees between backends") {
  const auto ce = build_chain<ExactMatrix>(build_bilinear(2, 2, 2));
  const auto cf = build_chain<FloatMatrix>(build_bilinear(2, 2, 2));
  const auto re = conjecture_transpose(ce.sm, false);
  const auto rf = conjecture_transpose(cf.sm, false);
  for (std::size_t k = 0; k < re.size(); ++k) CHECK(re[k].observed_pass == rf[k].observed_pass);
  for (const auto& r : check_centrality(cf.sm, cf.pair)) CHECK(r.zero);
  CHECK(conjecture_orthogonality(*cf.sys).observed_pass() == conjecture_orthogonality(*ce.sys).observed_pass());
}
