#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "drgtet/exact_matrix.hpp"
#include "drgtet/float_matrix.hpp"

namespace drgtet {

/// Subspace of an ambient coordinate space, stored by the reduced row-echelon
/// form of its basis vectors (one row per vector). The transpose of that form
/// is the reduced column-echelon basis; it is unique for a given subspace, so
/// equality of subspaces is equality of the stored matrices.
template <class Mat>
class BasicSubspace {
 public:
  BasicSubspace() = default;
  /// Zero subspace.
  explicit BasicSubspace(std::size_t ambient, int64_t field = 0) : ambient_(ambient), rows_(0, ambient, field) {}

  /// Column space of m (canonical_basis).
  static BasicSubspace span(const Mat& columns);
  /// Row space of m.
  static BasicSubspace row_span(const Mat& rows);
  static BasicSubspace full(std::size_t ambient, int64_t field = 0);
  /// Span of the standard basis vectors e_k, k in idx.
  static BasicSubspace coordinate(std::size_t ambient, const std::vector<std::size_t>& idx, int64_t field = 0);

  [[nodiscard]] std::size_t ambient() const noexcept { return ambient_; }
  [[nodiscard]] std::size_t dim() const noexcept { return rows_.rows(); }
  [[nodiscard]] bool is_zero() const noexcept { return dim() == 0; }
  /// ambient x dim matrix whose columns are the canonical basis.
  [[nodiscard]] Mat basis() const { return rows_.transpose(); }
  /// dim x ambient reduced row-echelon form.
  [[nodiscard]] const Mat& rows() const noexcept { return rows_; }
  [[nodiscard]] const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  /// True when every vector of other lies in this subspace.
  [[nodiscard]] bool contains(const BasicSubspace& other) const;

  friend bool operator==(const BasicSubspace& a, const BasicSubspace& b) {
    return a.ambient_ == b.ambient_ && a.dim() == b.dim() && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t ambient_ = 0;
  Mat rows_;
  std::vector<std::size_t> pivots_;
};

using Subspace = BasicSubspace<ExactMatrix>;
using FloatSubspace = BasicSubspace<FloatMatrix>;

/// S1 ∩ S2. Throws std::invalid_argument on ambient mismatch.
template <class Mat>
BasicSubspace<Mat> intersect(const BasicSubspace<Mat>& a, const BasicSubspace<Mat>& b);

/// S1 + S2.
template <class Mat>
BasicSubspace<Mat> sum(const BasicSubspace<Mat>& a, const BasicSubspace<Mat>& b);

/// {w in outer : <w, v> = 0 for all v in inner} with <u, v> = u^t conj(v).
/// Throws std::invalid_argument unless inner ⊆ outer.
template <class Mat>
BasicSubspace<Mat> ortho_complement_within(const BasicSubspace<Mat>& inner, const BasicSubspace<Mat>& outer);

/// A direct-sum decomposition of the ambient space into blocks, with the
/// change-of-basis matrix U (block bases concatenated in order) and U^{-1}.
/// Operators acting by a scalar on each block are then U diag(...) U^{-1}.
template <class Mat>
class BlockDecomposition {
 public:
  /// Throws std::invalid_argument when the blocks are dependent or do not
  /// span the ambient space.
  explicit BlockDecomposition(std::vector<BasicSubspace<Mat>> blocks);

  [[nodiscard]] std::size_t block_count() const noexcept { return blocks_.size(); }
  [[nodiscard]] const BasicSubspace<Mat>& block(std::size_t k) const { return blocks_[k]; }
  [[nodiscard]] const Mat& change_of_basis() const noexcept { return u_; }
  [[nodiscard]] const Mat& inverse_change_of_basis() const noexcept { return u_inv_; }

  /// The operator acting as scalars[k] on block k.
  [[nodiscard]] Mat assemble(const std::vector<typename Mat::Scalar>& scalars) const;

 private:
  std::vector<BasicSubspace<Mat>> blocks_;
  Mat u_;
  Mat u_inv_;
};

/// One-shot form of BlockDecomposition::assemble.
template <class Mat>
Mat assemble_block_scalar(const std::vector<std::pair<BasicSubspace<Mat>, typename Mat::Scalar>>& blocks);

}  // namespace drgtet
