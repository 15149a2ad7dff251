#include "drgtet/subspace.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace drgtet {

template <class Mat>
BasicSubspace<Mat> BasicSubspace<Mat>::row_span(const Mat& rows) {
  BasicSubspace out;
  out.ambient_ = rows.cols();
  auto rr = rows.rref();
  out.rows_ = std::move(rr.reduced);
  out.pivots_ = std::move(rr.pivots);
  if (out.rows_.rows() == 0) out.rows_ = Mat(0, out.ambient_, rows.field());
  return out;
}

template <class Mat>
BasicSubspace<Mat> BasicSubspace<Mat>::span(const Mat& columns) {
  return row_span(columns.transpose());
}

template <class Mat>
BasicSubspace<Mat> BasicSubspace<Mat>::full(std::size_t ambient, int64_t field) {
  BasicSubspace out;
  out.ambient_ = ambient;
  out.rows_ = Mat::identity(ambient, field);
  out.pivots_.resize(ambient);
  for (std::size_t i = 0; i < ambient; ++i) out.pivots_[i] = i;
  return out;
}

template <class Mat>
BasicSubspace<Mat> BasicSubspace<Mat>::coordinate(std::size_t ambient, const std::vector<std::size_t>& idx,
                                                  int64_t field) {
  std::vector<std::size_t> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  BasicSubspace out;
  out.ambient_ = ambient;
  out.rows_ = Mat::identity(ambient, field).select_rows(sorted);
  out.pivots_ = sorted;
  return out;
}

template <class Mat>
bool BasicSubspace<Mat>::contains(const BasicSubspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("subspace ambient dimensions differ");
  if (other.dim() > dim()) return false;
  if (other.is_zero()) return true;
  // Reducing by a reduced row-echelon basis leaves v - v[pivots] * rows.
  const Mat residual = other.rows_ - other.rows_.select_columns(pivots_) * rows_;
  return residual.is_zero();
}

template <class Mat>
BasicSubspace<Mat> intersect(const BasicSubspace<Mat>& a, const BasicSubspace<Mat>& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("intersect: ambient dimensions differ");
  const int64_t field = a.rows().field() ? a.rows().field() : b.rows().field();
  if (a.is_zero() || b.is_zero()) return BasicSubspace<Mat>(a.ambient(), field);
  // c^t R_a lies in b exactly when c^t (R_a - R_a[:, piv_b] R_b) = 0.
  const Mat& ra = a.rows();
  const Mat defect = ra - ra.select_columns(b.pivots()) * b.rows();
  const Mat coeffs = defect.transpose().nullspace();
  if (coeffs.cols() == 0) return BasicSubspace<Mat>(a.ambient(), field);
  return BasicSubspace<Mat>::row_span(coeffs.transpose() * ra);
}

template <class Mat>
BasicSubspace<Mat> sum(const BasicSubspace<Mat>& a, const BasicSubspace<Mat>& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("sum: ambient dimensions differ");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return BasicSubspace<Mat>::row_span(Mat::vconcat({&a.rows(), &b.rows()}));
}

template <class Mat>
BasicSubspace<Mat> ortho_complement_within(const BasicSubspace<Mat>& inner, const BasicSubspace<Mat>& outer) {
  if (inner.ambient() != outer.ambient()) {
    throw std::invalid_argument("ortho_complement_within: ambient dimensions differ");
  }
  if (!outer.contains(inner)) throw std::invalid_argument("ortho_complement_within: inner not contained in outer");
  if (inner.is_zero()) return outer;
  // w = R_o^t c is orthogonal to every row v of R_i iff conj(R_i) R_o^t c = 0.
  const Mat gram = inner.rows().conj() * outer.rows().transpose();
  const Mat coeffs = gram.nullspace();
  const int64_t field = outer.rows().field() ? outer.rows().field() : inner.rows().field();
  if (coeffs.cols() == 0) return BasicSubspace<Mat>(outer.ambient(), field);
  return BasicSubspace<Mat>::row_span(coeffs.transpose() * outer.rows());
}

template <class Mat>
BlockDecomposition<Mat>::BlockDecomposition(std::vector<BasicSubspace<Mat>> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("block decomposition: no blocks");
  const std::size_t n = blocks_.front().ambient();
  std::size_t total = 0;
  std::vector<const Mat*> parts;
  for (const auto& b : blocks_) {
    if (b.ambient() != n) throw std::invalid_argument("block decomposition: ambient dimensions differ");
    total += b.dim();
    if (!b.is_zero()) parts.push_back(&b.rows());
  }
  if (total != n) {
    throw std::invalid_argument("block decomposition: dimensions sum to " + std::to_string(total) + ", expected " +
                                std::to_string(n));
  }
  const Mat ut = Mat::vconcat(parts);
  u_ = ut.transpose();
  try {
    u_inv_ = u_.inverse();
  } catch (const std::domain_error&) {
    throw std::invalid_argument("block decomposition: blocks are not independent");
  }
}

template <class Mat>
Mat BlockDecomposition<Mat>::assemble(const std::vector<typename Mat::Scalar>& scalars) const {
  if (scalars.size() != blocks_.size()) throw std::invalid_argument("assemble: one scalar per block required");
  std::vector<typename Mat::Scalar> diag;
  diag.reserve(u_.cols());
  for (std::size_t k = 0; k < blocks_.size(); ++k) diag.insert(diag.end(), blocks_[k].dim(), scalars[k]);
  return u_ * u_inv_.scale_rows(diag);
}

template <class Mat>
Mat assemble_block_scalar(const std::vector<std::pair<BasicSubspace<Mat>, typename Mat::Scalar>>& blocks) {
  std::vector<BasicSubspace<Mat>> spaces;
  std::vector<typename Mat::Scalar> scalars;
  for (const auto& [s, l] : blocks) {
    spaces.push_back(s);
    scalars.push_back(l);
  }
  return BlockDecomposition<Mat>(std::move(spaces)).assemble(scalars);
}

#define DRGTET_INSTANTIATE_SUBSPACE(M)                                                                         \
  template class BasicSubspace<M>;                                                                             \
  template class BlockDecomposition<M>;                                                                        \
  template BasicSubspace<M> intersect(const BasicSubspace<M>&, const BasicSubspace<M>&);                       \
  template BasicSubspace<M> sum(const BasicSubspace<M>&, const BasicSubspace<M>&);                             \
  template BasicSubspace<M> ortho_complement_within(const BasicSubspace<M>&, const BasicSubspace<M>&);         \
  template M assemble_block_scalar(const std::vector<std::pair<BasicSubspace<M>, typename M::Scalar>>&);

DRGTET_INSTANTIATE_SUBSPACE(ExactMatrix)
DRGTET_INSTANTIATE_SUBSPACE(FloatMatrix)

#undef DRGTET_INSTANTIATE_SUBSPACE

}  // namespace drgtet
