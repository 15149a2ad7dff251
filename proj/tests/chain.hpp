#pragma once
// Runs the library stages up to the q-tetrahedron action for tests that
// start from the assembled matrices.

#include <optional>

#include "drgtet/graph.hpp"
#include "drgtet/qtet_action.hpp"
#include "drgtet/spectral.hpp"
#include "drgtet/split_system.hpp"

namespace drgtet::testing {

template <class Mat>
struct Chain {
  GraphData g;
  IntersectionArray arr;
  ClassicalParams cp;
  Eigenvalues ev;
  std::vector<Mat> e;
  KreinData<Mat> kp;
  DualData<Mat> dual;
  NormalizedPair<Mat> pair;
  std::optional<SplitSystem<Mat>> sys;
  SplitMatrices<Mat> sm;
  QTetAction<Mat> act;
};

template <class Mat>
Chain<Mat> build_chain(GraphData g, bool negative_root = false) {
  Chain<Mat> c;
  bfs_distances(g);
  c.g = std::move(g);
  c.arr = verify_distance_regular(c.g);
  c.cp = fit_classical_params(c.arr, negative_root);
  c.ev = solve_eigenvalues(c.arr, c.cp);
  const Mat a1 = Mat::lift(c.g.adjacency());
  c.e = primitive_idempotents(a1, c.ev.theta);
  c.kp = krein_parameters(c.e);
  c.dual = dual_structures(c.g, c.e, c.kp, 0);
  c.pair = normalize_pair(a1, c.dual, c.e, c.ev, c.cp.q);
  const FlagContext<Mat> ctx(c.e, c.dual);
  c.sys = build_split_system(ctx);
  c.sm = split_matrices(*c.sys, c.cp.q);
  c.act = assemble_action(c.pair, c.sm, c.cp.q);
  return c;
}

}  // namespace drgtet::testing
