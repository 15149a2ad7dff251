#pragma once

#include "drgtet/qtet_action.hpp"

namespace drgtet {

/// Matrices of a U_q(affine sl2)-module obtained by pulling the q-tetrahedron
/// action back along the i-th homomorphism:
///   x1 -> x_{i,i+2}, x1^-1 -> x_{i+2,i}, y1 -> x_{i+2,i+3}, z1 -> x_{i+3,i},
///   x0 -> x_{i+2,i}, x0^-1 -> x_{i,i+2}, y0 -> x_{i,i+1},   z0 -> x_{i+1,i+2}.
/// Chevalley generators come from the inverse isomorphism:
///   K_j = x_j, e_j^- = y_j - x_j^-1, e_j^+ = (1 - x_j z_j) q^-1 (q - q^-1)^-2.
template <class Mat>
struct UqAction {
  int index = 0;
  QuadScalar q;
  std::array<Mat, 2> x, x_inv, y, z;
  std::array<Mat, 2> K, K_inv, e_plus, e_minus;
};

template <class Mat>
UqAction<Mat> pullback(const QTetAction<Mat>& act, int i);

/// Chevalley generators from equitable ones.
template <class Mat>
void derive_chevalley(UqAction<Mat>& u);

/// Equitable generators back from Chevalley ones:
/// y_j = K_j^-1 + e_j^-, z_j = K_j^-1 - K_j^-1 e_j^+ q (q - q^-1)^2.
/// Returns the pair (y, z) for each j.
template <class Mat>
std::array<std::pair<Mat, Mat>, 2> equitable_from_chevalley(const UqAction<Mat>& u);

/// The equitable presentation: inverse pairs, centrality of x0 x1, the three
/// q-Weyl relations per j, the mixed relations and the q-Serre relations for
/// (y0, y1) and (z0, z1).
template <class Mat>
RelationReport verify_uq_equitable(const UqAction<Mat>& u);

/// The Chevalley presentation of U_q(affine sl2).
template <class Mat>
RelationReport verify_uq_chevalley(const UqAction<Mat>& u);

/// The U_q(sl2) sub-presentation on (x, y, z) = (x1, y1, z1).
template <class Mat>
RelationReport verify_uq_sl2(const UqAction<Mat>& u);

/// True iff equitable -> Chevalley -> equitable reproduces y_j, z_j exactly.
template <class Mat>
bool chevalley_round_trip(const UqAction<Mat>& u);

}  // namespace drgtet
