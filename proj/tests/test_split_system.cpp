#include <doctest.h>

#include <set>

#include "drgtet/graph.hpp"
#include "drgtet/spectral.hpp"
#include "drgtet/split_system.hpp"

using namespace drgtet;

namespace {

template <class Mat>
struct Pipeline {
  GraphData g;
  IntersectionArray arr;
  ClassicalParams cp;
  Eigenvalues ev;
  std::vector<Mat> e;
  KreinData<Mat> kp;
  DualData<Mat> dual;
};

template <class Mat>
Pipeline<Mat> run(GraphData g, std::size_t base = 0) {
  Pipeline<Mat> p;
  bfs_distances(g);
  p.g = std::move(g);
  p.arr = verify_distance_regular(p.g);
  p.cp = fit_classical_params(p.arr);
  p.ev = solve_eigenvalues(p.arr, p.cp);
  p.e = primitive_idempotents(Mat::lift(p.g.adjacency()), p.ev.theta);
  p.kp = krein_parameters(p.e);
  p.dual = dual_structures(p.g, p.e, p.kp, base);
  return p;
}

// Flag spaces through the generic intersection routine: coordinate subspace
// of the distance range, intersected with the column space of the partial sum.
Subspace flag_oracle(const Pipeline<ExactMatrix>& p, Dir eta, Dir mu, int i, int j) {
  const int d = p.arr.D;
  const std::size_t n = p.g.n;
  if (i < 0 || j < 0) return Subspace(n);
  std::vector<std::size_t> coords;
  for (std::size_t y = 0; y < n; ++y) {
    const int dist = p.g.distance(0, y);
    if (eta == Dir::Down ? dist <= i : dist >= d - i) coords.push_back(y);
  }
  ExactMatrix partial(n, n);
  for (int l = 0; l <= j; ++l) partial += p.e[mu == Dir::Down ? l : d - l];
  return intersect(Subspace::coordinate(n, coords), Subspace::span(partial));
}

}  // namespace

TEST_CASE("flag subspaces of Bil2(2,2) agree with direct intersections") {
  const auto p = run<ExactMatrix>(build_bilinear(2, 2, 2));
  const FlagContext<ExactMatrix> ctx(p.e, p.dual);
  const int d = 2;
  CHECK(flag_subspace(ctx, Dir::Down, Dir::Down, -1, 1).is_zero());
  CHECK(flag_subspace(ctx, Dir::Up, Dir::Down, 2, -1).is_zero());
  CHECK(flag_subspace(ctx, Dir::Down, Dir::Down, d, d) == Subspace::full(16));
  CHECK(flag_subspace(ctx, Dir::Down, Dir::Down, 0, d).dim() == 1);
  CHECK_THROWS_AS((void)flag_subspace(ctx, Dir::Down, Dir::Down, 3, 0), std::out_of_range);
  CHECK_THROWS_AS((void)flag_subspace(ctx, Dir::Down, Dir::Down, 0, -2), std::out_of_range);
  for (Dir eta : {Dir::Down, Dir::Up}) {
    for (Dir mu : {Dir::Down, Dir::Up}) {
      for (int i = -1; i <= d; ++i) {
        for (int j = -1; j <= d; ++j) {
          CHECK(flag_subspace(ctx, eta, mu, i, j) == flag_oracle(p, eta, mu, i, j));
        }
      }
    }
  }
}

TEST_CASE("tilde spaces form direct sums on Bil2(2,2)") {
  const auto p = run<ExactMatrix>(build_bilinear(2, 2, 2));
  const FlagContext<ExactMatrix> ctx(p.e, p.dual);
  for (Dir eta : {Dir::Down, Dir::Up}) {
    for (Dir mu : {Dir::Down, Dir::Up}) {
      const auto grid = tilde_spaces(ctx, eta, mu);
      CHECK(grid.tilde_at(0, 0) == grid.flag(0, 0));
      std::size_t total = 0;
      for (int i = 0; i <= 2; ++i) {
        for (int j = 0; j <= 2; ++j) {
          const auto& t = grid.tilde_at(i, j);
          total += t.dim();
          CHECK(grid.flag(i, j).contains(t));
          // Orthogonal to both predecessors under u^t conj(v).
          for (const auto& pred : {i > 0 ? grid.flag(i - 1, j) : Subspace(16), j > 0 ? grid.flag(i, j - 1) : Subspace(16)}) {
            if (!pred.is_zero() && !t.is_zero()) CHECK((t.rows() * pred.rows().conj().transpose()).is_zero());
          }
          const auto prev = sum(i > 0 ? grid.flag(i - 1, j) : Subspace(16), j > 0 ? grid.flag(i, j - 1) : Subspace(16));
          if (prev == grid.flag(i, j)) CHECK(t.is_zero());
        }
      }
      CHECK(total == 16);
      CHECK(verify_direct_sum(grid));
      CHECK(decompose(grid).has_value());

      auto truncated = grid;
      for (auto& t : truncated.tilde) {
        if (!t.is_zero()) {
          t = Subspace(16);
          break;
        }
      }
      CHECK_FALSE(verify_direct_sum(truncated));
      CHECK_FALSE(decompose(truncated).has_value());
    }
  }
}

TEST_CASE("down-up tilde spaces are supported on the antidiagonal") {
  const auto p = run<ExactMatrix>(build_bilinear(2, 2, 2));
  const FlagContext<ExactMatrix> ctx(p.e, p.dual);
  const auto grid = tilde_spaces(ctx, Dir::Down, Dir::Up);
  const auto dims = grid.dimensions();
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; j <= 2; ++j) {
      if (i + j != 2) CHECK(dims[i][j] == 0);
    }
  }
  // The base vertex row gives the sphere sizes k_i on the antidiagonal.
  CHECK(dims[0][2] == 1);
  CHECK(dims[1][1] == 9);
  CHECK(dims[2][0] == 6);
}

TEST_CASE("split matrices act by their block scalars") {
  const auto p = run<ExactMatrix>(build_bilinear(2, 2, 2));
  const FlagContext<ExactMatrix> ctx(p.e, p.dual);
  const auto sys = build_split_system(ctx);
  REQUIRE(sys.direct_sums_hold());
  const QuadScalar& q = p.cp.q;
  const auto sm = split_matrices(sys, q);
  const int d = 2;

  const auto& top = sys.grid(Dir::Down, Dir::Down).tilde_at(d, d);
  if (!top.is_zero()) CHECK(sm.Phi * top.basis() == top.basis() * q.pow(d));
  CHECK(sm.K * sm.Phi == sm.Phi * sm.K);
  CHECK(sm.B * sm.Psi == sm.Psi * sm.B);
  CHECK((sm.Phi * sm.Phi_inv).is_identity());
  CHECK((sm.Psi * sm.Psi_inv).is_identity());
  for (const auto* m : {&sm.B, &sm.Bstar, &sm.K, &sm.Kstar, &sm.Phi, &sm.Psi}) CHECK(m->rank() == 16);

  // Block-by-block action, read from the table.
  struct Rule {
    const ExactMatrix* m;
    Dir eta, mu;
    QuadScalar (*scalar)(const QuadScalar&, int, int, int);
  };
  const Rule rules[] = {{&sm.B, Dir::Down, Dir::Up, split_scalar_B},      {&sm.Bstar, Dir::Up, Dir::Down, split_scalar_Bstar},
                        {&sm.K, Dir::Down, Dir::Down, split_scalar_K},    {&sm.Kstar, Dir::Up, Dir::Up, split_scalar_Kstar},
                        {&sm.Phi, Dir::Down, Dir::Down, split_scalar_Phi}, {&sm.Psi, Dir::Down, Dir::Up, split_scalar_Psi}};
  for (const auto& r : rules) {
    std::set<std::string> seen;
    ExactMatrix annihilator = ExactMatrix::identity(16);
    for (int i = 0; i <= d; ++i) {
      for (int j = 0; j <= d; ++j) {
        const auto& t = sys.grid(r.eta, r.mu).tilde_at(i, j);
        const QuadScalar lam = r.scalar(q, d, i, j);
        if (t.is_zero()) continue;
        CHECK(((*r.m) * t.basis() - t.basis() * lam).is_zero());
        if (seen.insert(lam.str()).second) annihilator = annihilator * r.m->add_identity(-lam);
      }
    }
    CHECK(annihilator.is_zero());
  }
  CHECK(split_scalar_B(q, d, 0, 2) == q.pow(-2));
  CHECK(split_scalar_Bstar(q, d, 0, 2) == q.pow(2));
  CHECK(split_scalar_Phi(q, d, 2, 2) == q.pow(2));
}

TEST_CASE("split system on the 16-vertex Hermitean forms graph") {
  const auto p = run<ExactMatrix>(build_hermitean(2, 2));
  const FlagContext<ExactMatrix> ctx(p.e, p.dual);
  const auto sys = build_split_system(ctx);
  CHECK(sys.direct_sums_hold());
  for (const auto& g : sys.grids) CHECK(verify_direct_sum(g));
  const auto sm = split_matrices(sys, p.cp.q);
  CHECK(sm.K * sm.Phi == sm.Phi * sm.K);
  CHECK(sm.B * sm.Psi == sm.Psi * sm.B);
}

TEST_CASE("float split system matches the exact dimension grids") {
  const auto pe = run<ExactMatrix>(build_bilinear(2, 2, 2), 5);
  const auto pf = run<FloatMatrix>(build_bilinear(2, 2, 2), 5);
  const FlagContext<ExactMatrix> ce(pe.e, pe.dual);
  const FlagContext<FloatMatrix> cf(pf.e, pf.dual);
  const auto se = build_split_system(ce);
  const auto sf = build_split_system(cf);
  REQUIRE(sf.direct_sums_hold());
  for (std::size_t k = 0; k < 4; ++k) CHECK(se.grids[k].dimensions() == sf.grids[k].dimensions());
  const auto me = split_matrices(se, pe.cp.q);
  const auto mf = split_matrices(sf, pf.cp.q);
  CHECK(FloatMatrix::lift(me.Phi) == mf.Phi);
  CHECK(FloatMatrix::lift(me.B) == mf.B);
}
