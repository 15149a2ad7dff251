#pragma once

#include <array>
#include <string>
#include <vector>

#include "drgtet/spectral.hpp"
#include "drgtet/split_system.hpp"

namespace drgtet {

/// One evaluated relation: the left-hand side minus the right-hand side must
/// be the zero matrix.
struct RelationRecord {
  std::string id;        ///< e.g. "weyl(0,1,2)"
  std::string kind;      ///< "inverse", "q-weyl", "q-serre", ...
  std::string relation;  ///< human-readable statement
  bool zero = false;
  std::string residual;  ///< residual_text of the difference
};

struct RelationReport {
  std::vector<RelationRecord> records;
  [[nodiscard]] bool all_zero() const {
    for (const auto& r : records) {
      if (!r.zero) return false;
    }
    return !records.empty();
  }
  [[nodiscard]] std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.zero ? 0 : 1;
    return n;
  }
};

/// x_{ij} is a generator of the q-tetrahedron algebra iff j - i is 1 or 2 mod 4.
bool is_qtet_generator(int i, int j);
/// "x01", "x20", ...
std::string qtet_generator_name(int i, int j);

template <class Mat>
struct QTetAction {
  QuadScalar q;
  /// Indexed by 4 * i + j; only generator slots are populated.
  std::array<Mat, 16> x;

  /// Indices are taken mod 4; throws std::invalid_argument for a non-generator.
  [[nodiscard]] const Mat& at(int i, int j) const;
};

/// x01 = A Phi Psi^-1, x12 = B Phi^-1, x23 = A* Phi Psi, x30 = B* Phi^-1,
/// x02 = K Psi^-1, x13 = K* Psi, x20 = Psi K^-1, x31 = Psi^-1 K*^-1.
template <class Mat>
QTetAction<Mat> assemble_action(const NormalizedPair<Mat>& pair, const SplitMatrices<Mat>& sm, const QuadScalar& q);

struct QTetRelation {
  enum class Kind { Inverse, QWeyl, QSerre } kind;
  int h = 0, i = 0, j = 0, k = 0;  ///< unused trailing indices are 0
  std::string id;
  std::string statement;
};

/// The 20 defining relations, generated from Z_4 index arithmetic: 4 inverse
/// pairs x_ij x_ji = 1 (j - i = 2), 12 q-Weyl instances for
/// (i - h, j - i) in {(1,1), (1,2), (2,1)}, and 4 cubic q-Serre instances
/// for consecutive h, i, j, k.
std::vector<QTetRelation> qtet_relations();

/// Evaluates every relation exactly (or to tolerance in float mode).
template <class Mat>
RelationReport verify_qtet_relations(const QTetAction<Mat>& act);

/// The action with every generator replaced by its negative.
template <class Mat>
QTetAction<Mat> negated(const QTetAction<Mat>& act);

/// Re-runs the relation suite on the negated action; true iff every relation
/// holds there too and each residual matches the original one.
template <class Mat>
bool flip_negation_check(const QTetAction<Mat>& act, const RelationReport& original);

/// (q X Y - q^-1 Y X) / (q - q^-1) - rhs.
template <class Mat>
Mat q_weyl_residual(const Mat& x, const Mat& y, const Mat& rhs, const QuadScalar& q);

}  // namespace drgtet
