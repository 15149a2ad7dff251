#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "drgtet/graph.hpp"
#include "drgtet/spectral.hpp"

using namespace drgtet;

namespace {

struct Prepared {
  GraphData g;
  IntersectionArray arr;
  ClassicalParams cp;
};

Prepared prepare(GraphData g) {
  bfs_distances(g);
  Prepared p{std::move(g), {}, {}};
  p.arr = verify_distance_regular(p.g);
  p.cp = fit_classical_params(p.arr);
  return p;
}

// Determinant by cofactor expansion along the first row.
QuadScalar cofactor_det(const std::vector<std::vector<QuadScalar>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  QuadScalar total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<QuadScalar>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<QuadScalar> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(row);
    }
    const QuadScalar term = m[0][c] * cofactor_det(minor);
    total += (c % 2 == 0) ? term : -term;
  }
  return total;
}

QuadScalar tridiagonal_det(const IntersectionArray& arr, const QuadScalar& theta) {
  const int w = arr.D + 1;
  std::vector<std::vector<QuadScalar>> m(w, std::vector<QuadScalar>(w, QuadScalar(0)));
  for (int i = 0; i < w; ++i) {
    m[i][i] = QuadScalar(arr.a[i]) - theta;
    if (i + 1 < w) m[i][i + 1] = QuadScalar(arr.b[i]);
    if (i > 0) m[i][i - 1] = QuadScalar(arr.c[i]);
  }
  return cofactor_det(m);
}

// Cosine sequences u_i(l) from the three-term recurrence give the dual
// eigenmatrix Q_{li} = m_i u_i(l) and q^h_{ij} = sum_l k_l Q_li Q_lj Q_lh / (|X| m_h).
struct CosineOracle {
  std::vector<Rational> mult;
  std::vector<Rational> krein;  // (h * w + i) * w + j
};

CosineOracle cosine_oracle(const IntersectionArray& arr, const std::vector<QuadScalar>& theta, int64_t n) {
  const int w = arr.D + 1;
  std::vector<std::vector<Rational>> u(w, std::vector<Rational>(w));
  for (int i = 0; i < w; ++i) {
    const Rational th = theta[i].rational_part();
    REQUIRE(theta[i].is_rational());
    u[i][0] = 1;
    if (w > 1) u[i][1] = th / Rational(arr.valency());
    for (int l = 1; l + 1 < w; ++l) {
      u[i][l + 1] = (th * u[i][l] - Rational(arr.c[l]) * u[i][l - 1] - Rational(arr.a[l]) * u[i][l]) /
                    Rational(arr.b[l]);
    }
  }
  CosineOracle o;
  for (int i = 0; i < w; ++i) {
    Rational s = 0;
    for (int l = 0; l < w; ++l) s += Rational(arr.k(l)) * u[i][l] * u[i][l];
    o.mult.push_back(Rational(n) / s);
  }
  o.krein.resize(static_cast<std::size_t>(w * w * w));
  for (int h = 0; h < w; ++h) {
    for (int i = 0; i < w; ++i) {
      for (int j = 0; j < w; ++j) {
        Rational s = 0;
        for (int l = 0; l < w; ++l) {
          s += Rational(arr.k(l)) * (o.mult[i] * u[i][l]) * (o.mult[j] * u[j][l]) * (o.mult[h] * u[h][l]);
        }
        o.krein[(h * w + i) * w + j] = s / (Rational(n) * o.mult[h]);
      }
    }
  }
  return o;
}

GraphData petersen() {
  // Kneser graph K(5,2): 2-subsets, adjacent when disjoint.
  std::vector<std::pair<int, int>> sets;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) sets.emplace_back(a, b);
  }
  GraphData g;
  g.n = sets.size();
  g.adj.resize(g.n);
  for (std::size_t x = 0; x < g.n; ++x) {
    for (std::size_t y = 0; y < g.n; ++y) {
      const auto [a, b] = sets[x];
      const auto [c, d] = sets[y];
      if (a != c && a != d && b != c && b != d) g.adj[x].push_back(static_cast<uint32_t>(y));
    }
  }
  return g;
}

}  // namespace

TEST_CASE("eigenvalues of Bil2(2,2) from the classical form") {
  auto p = prepare(build_bilinear(2, 2, 2));
  const Eigenvalues ev = solve_eigenvalues(p.arr, p.cp);
  CHECK(ev.theta == std::vector<QuadScalar>{9, 1, -3});
  CHECK(ev.alpha0 == QuadScalar(-7));
  CHECK(ev.alpha1 == QuadScalar(8));
  CHECK(ev.theta[0] == QuadScalar(p.arr.valency()));
  for (const auto& t : ev.theta) {
    CHECK(tridiagonal_det(p.arr, t).is_zero());
    CHECK(intersection_char_poly(p.arr, t) == tridiagonal_det(p.arr, t));
  }
  // Off-root values agree with the cofactor determinant too.
  for (int v : {0, 2, 5, -1}) CHECK(intersection_char_poly(p.arr, v) == tridiagonal_det(p.arr, v));
}

TEST_CASE("eigenvalues of Bil2(3,3) are integers with alpha1 in Q*sqrt(2)") {
  auto p = prepare(build_bilinear(2, 3, 3));
  const Eigenvalues ev = solve_eigenvalues(p.arr, p.cp);
  CHECK(ev.theta == std::vector<QuadScalar>{49, 17, 1, -7});
  CHECK(ev.alpha0 == QuadScalar(-15));
  CHECK(ev.alpha1.rational_part().is_zero());
  CHECK(ev.alpha1.field_tag() == 2);
  CHECK(ev.alpha1 == QuadScalar(0, 16, 2));
  for (const auto& t : ev.theta) CHECK(tridiagonal_det(p.arr, t).is_zero());
}

TEST_CASE("solve_eigenvalues rejects parameters that do not fit the array") {
  auto p = prepare(build_bilinear(2, 2, 2));
  ClassicalParams wrong = p.cp;
  wrong.q = root_of(3);
  CHECK_THROWS_AS((void)solve_eigenvalues(p.arr, wrong), SpectralError);
}

TEST_CASE("primitive idempotents and Krein parameters of Bil2(2,2)") {
  auto p = prepare(build_bilinear(2, 2, 2));
  const Eigenvalues ev = solve_eigenvalues(p.arr, p.cp);
  const ExactMatrix a1 = p.g.adjacency();
  const auto e = primitive_idempotents(a1, ev.theta);
  REQUIRE(e.size() == 3);

  ExactMatrix j0(16, 16);
  for (std::size_t r = 0; r < 16; ++r) {
    for (std::size_t c = 0; c < 16; ++c) j0.set(r, c, Rational(1, 16));
  }
  CHECK(e[0] == j0);

  const auto kp = krein_parameters(e);
  CHECK(kp.multiplicities[0] == 1);
  CHECK(std::accumulate(kp.multiplicities.begin(), kp.multiplicities.end(), int64_t{0}) == 16);
  for (int i = 0; i < 3; ++i) CHECK(e[i].rank() == static_cast<std::size_t>(kp.multiplicities[i]));
  CHECK(kp.expansion_holds);
  CHECK(kp.real_nonnegative);

  const auto oracle = cosine_oracle(p.arr, ev.theta, 16);
  for (int i = 0; i < 3; ++i) CHECK(QuadScalar(oracle.mult[i]) == QuadScalar(kp.multiplicities[i]));
  for (int h = 0; h < 3; ++h) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        CHECK(kp.krein(h, i, j) == QuadScalar(oracle.krein[(h * 3 + i) * 3 + j]));
        if (i == 0) CHECK(kp.krein(h, 0, j) == QuadScalar(h == j ? 1 : 0));
      }
    }
  }
  CHECK(check_self_dual(p.arr, kp).ok);
  CHECK(check_q_polynomial(kp).ok);

  // Bose-Mesner multiplication A_i A_j = sum_h p^h_ij A_h.
  std::vector<ExactMatrix> dist;
  for (int i = 0; i < 3; ++i) dist.push_back(p.g.distance_matrix(i));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      ExactMatrix rhs(16, 16);
      for (int h = 0; h < 3; ++h) rhs += dist[h] * QuadScalar(p.arr.intersection(h, i, j));
      CHECK(dist[i] * dist[j] == rhs);
    }
  }
}

TEST_CASE("dual structures, triple products and the normalized pair on Bil2(2,2)") {
  auto p = prepare(build_bilinear(2, 2, 2));
  const Eigenvalues ev = solve_eigenvalues(p.arr, p.cp);
  const ExactMatrix a1 = p.g.adjacency();
  const auto e = primitive_idempotents(a1, ev.theta);
  const auto kp = krein_parameters(e);
  const auto dual = dual_structures(p.g, e, kp, 0);

  ExactMatrix unit0(16, 16);
  unit0.set(0, 0, 1);
  CHECK(dual.estar(0) == unit0);
  CHECK(dual.astar_matrix(0).is_identity());
  ExactMatrix sum_estar(16, 16);
  for (int i = 0; i < 3; ++i) {
    sum_estar += dual.estar(i);
    CHECK(dual.estar(i) * dual.estar(i) == dual.estar(i));
  }
  CHECK(sum_estar.is_identity());
  CHECK(dual.theta_star == ev.theta);
  CHECK(dual.multiplication_holds);

  const auto rep = triple_product_checks(p.g, p.arr, kp, dual);
  CHECK(rep.checked == 54);
  CHECK(rep.ok());
  // Spot-check the shortcut against explicit products.
  for (int h = 0; h < 3; ++h) {
    for (int j = 0; j < 3; ++j) {
      const bool zero = (e[h] * dual.astar_matrix(1) * e[j]).is_zero();
      CHECK(zero == kp.krein(h, 1, j).is_zero());
      if (std::abs(h - j) > 1) CHECK(zero);
    }
  }

  const QuadScalar& q = p.cp.q;
  const auto pair = normalize_pair(a1, dual, e, ev, q);
  CHECK(pair.eigen_relations_hold);
  CHECK(a1 == ExactMatrix::identity(16) * ev.alpha0 + pair.a * ev.alpha1);
  for (int i = 0; i < 3; ++i) {
    const QuadScalar lam = (ev.theta[i] + QuadScalar(7)) / QuadScalar(8);
    CHECK(lam == q.pow(2 - 2 * i));
  }
  ExactMatrix ones(16, 1);
  for (std::size_t r = 0; r < 16; ++r) ones.set(r, 0, 1);
  CHECK(pair.a * ones == ones * q.pow(2));

  const auto serre = check_q_serre(pair, q);
  CHECK(serre.ok());
  // The generic evaluator agrees with the diagonal fast path.
  CHECK(q_serre(pair.a, pair.astar(), q) == serre.first);
  CHECK(q_serre(pair.astar(), pair.a, q) == serre.second);
  CHECK(q_serre(pair.a, pair.a, q).is_zero());
  // A wrong q breaks the relation.
  CHECK_FALSE(q_serre(pair.a, pair.astar(), root_of(3)).is_zero());
}

TEST_CASE("Petersen graph is not formally self-dual") {
  auto g = petersen();
  bfs_distances(g);
  const auto arr = verify_distance_regular(g);
  const auto e = primitive_idempotents(g.adjacency(), {3, 1, -2});
  const auto kp = krein_parameters(e);
  CHECK(kp.multiplicities == std::vector<int64_t>{1, 5, 4});
  const auto res = check_self_dual(arr, kp);
  CHECK_FALSE(res.ok);
  CHECK(res.detail.find("q^h_ij") != std::string::npos);
  // A wrong eigenvalue list fails the minimal polynomial check.
  CHECK_THROWS_AS((void)primitive_idempotents(g.adjacency(), std::vector<QuadScalar>{3, 1, -1}), SpectralError);
}

TEST_CASE("float backend mirrors the exact spectral data on Bil2(2,2)") {
  auto p = prepare(build_bilinear(2, 2, 2));
  const Eigenvalues ev = solve_eigenvalues(p.arr, p.cp);
  const FloatMatrix a1 = FloatMatrix::lift(p.g.adjacency());
  const auto e = primitive_idempotents(a1, ev.theta);
  const auto kp = krein_parameters(e);
  CHECK(kp.multiplicities == std::vector<int64_t>{1, 9, 6});
  CHECK(check_self_dual(p.arr, kp).ok);
  CHECK(check_q_polynomial(kp).ok);
  const auto dual = dual_structures(p.g, e, kp, 3);
  CHECK(triple_product_checks(p.g, p.arr, kp, dual).ok());
  const auto pair = normalize_pair(a1, dual, e, ev, p.cp.q);
  CHECK(check_q_serre(pair, p.cp.q).ok());
}

TEST_CASE("Hermitean forms graph: A* eigenvalues lie in Q(sqrt(-2))") {
  auto p = prepare(build_hermitean(2, 2));
  const Eigenvalues ev = solve_eigenvalues(p.arr, p.cp);
  const ExactMatrix a1 = p.g.adjacency();
  const auto e = primitive_idempotents(a1, ev.theta);
  const auto kp = krein_parameters(e);
  CHECK(check_self_dual(p.arr, kp).ok);
  const auto dual = dual_structures(p.g, e, kp, 0);
  const auto pair = normalize_pair(a1, dual, e, ev, p.cp.q);
  for (int i = 0; i <= p.arr.D; ++i) {
    const QuadScalar v = pair.astar_diag[dual.spheres[i].front()];
    CHECK(v == p.cp.q.pow(p.arr.D - 2 * i));
    CHECK((v.is_rational() || v.field_tag() == -2));
  }
  CHECK(check_q_serre(pair, p.cp.q).ok());
}
