#include "drgtet/float_matrix.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace drgtet {

namespace {

std::atomic<double> g_pivot_tol{1e-9};
std::atomic<double> g_residual_tol{1e-8};

}  // namespace

double FloatMatrix::pivot_tolerance() { return g_pivot_tol.load(); }
double FloatMatrix::residual_tolerance() { return g_residual_tol.load(); }
void FloatMatrix::set_tolerances(double pivot, double residual) {
  g_pivot_tol.store(pivot);
  g_residual_tol.store(residual);
}

FloatMatrix::FloatMatrix(std::size_t rows, std::size_t cols, int64_t field)
    : data_(Storage::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols))), field_(field) {}

FloatMatrix FloatMatrix::identity(std::size_t n, int64_t field) {
  return FloatMatrix(Storage::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)), field);
}

FloatMatrix FloatMatrix::scalar(std::size_t n, const Scalar& s, int64_t field) { return identity(n, field) * s; }

FloatMatrix FloatMatrix::diagonal(const std::vector<Scalar>& diag, int64_t field) {
  FloatMatrix m(diag.size(), diag.size(), field);
  for (std::size_t i = 0; i < diag.size(); ++i) m.data_(i, i) = diag[i];
  return m;
}

FloatMatrix FloatMatrix::from_integers(std::size_t rows, std::size_t cols, const std::vector<int64_t>& entries,
                                       int64_t field) {
  if (entries.size() != rows * cols) throw std::invalid_argument("from_integers: size mismatch");
  FloatMatrix m(rows, cols, field);
  for (std::size_t k = 0; k < entries.size(); ++k) m.data_(k / cols, k % cols) = static_cast<double>(entries[k]);
  return m;
}

FloatMatrix FloatMatrix::lift(const ExactMatrix& m) {
  FloatMatrix out(m.rows(), m.cols(), m.field());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.data_(i, j) = lift(m(i, j));
  }
  return out;
}

FloatMatrix::Scalar FloatMatrix::lift(const QuadScalar& s) {
  const auto [re, im] = s.to_complex();
  return {re, im};
}

bool FloatMatrix::is_zero() const { return max_abs() <= residual_tolerance(); }

bool FloatMatrix::is_identity() const {
  if (!is_square()) return false;
  return (data_ - Storage::Identity(data_.rows(), data_.cols())).cwiseAbs().maxCoeff() <= residual_tolerance();
}

std::size_t FloatMatrix::nonzero_count() const {
  std::size_t n = 0;
  for (Eigen::Index k = 0; k < data_.size(); ++k) {
    if (std::abs(data_.data()[k]) > residual_tolerance()) ++n;
  }
  return n;
}

double FloatMatrix::max_abs() const { return data_.size() == 0 ? 0.0 : data_.cwiseAbs().maxCoeff(); }

std::pair<std::size_t, std::size_t> FloatMatrix::first_nonzero_position() const {
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) {
      if (std::abs(data_(i, j)) > residual_tolerance()) return {i, j};
    }
  }
  return {rows(), cols()};
}

FloatMatrix::Scalar FloatMatrix::first_nonzero() const {
  const auto [i, j] = first_nonzero_position();
  return i == rows() ? Scalar{} : data_(i, j);
}

FloatMatrix FloatMatrix::hadamard(const FloatMatrix& o) const {
  return FloatMatrix(data_.cwiseProduct(o.data_), field_ ? field_ : o.field_);
}

FloatMatrix FloatMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  FloatMatrix out(rows(), idx.size(), field_);
  for (std::size_t t = 0; t < idx.size(); ++t) out.data_.col(t) = data_.col(idx[t]);
  return out;
}

FloatMatrix FloatMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  FloatMatrix out(idx.size(), cols(), field_);
  for (std::size_t t = 0; t < idx.size(); ++t) out.data_.row(t) = data_.row(idx[t]);
  return out;
}

FloatMatrix FloatMatrix::hconcat(const std::vector<const FloatMatrix*>& blocks) {
  if (blocks.empty()) return FloatMatrix();
  std::size_t cols = 0;
  int64_t field = 0;
  for (const auto* b : blocks) {
    cols += b->cols();
    field = field ? field : b->field_;
  }
  FloatMatrix out(blocks.front()->rows(), cols, field);
  std::size_t off = 0;
  for (const auto* b : blocks) {
    if (b->rows() != out.rows()) throw std::invalid_argument("hconcat: row mismatch");
    out.data_.middleCols(off, b->cols()) = b->data_;
    off += b->cols();
  }
  return out;
}

FloatMatrix FloatMatrix::vconcat(const std::vector<const FloatMatrix*>& blocks) {
  if (blocks.empty()) return FloatMatrix();
  std::size_t rows = 0;
  int64_t field = 0;
  for (const auto* b : blocks) {
    rows += b->rows();
    field = field ? field : b->field_;
  }
  FloatMatrix out(rows, blocks.front()->cols(), field);
  std::size_t off = 0;
  for (const auto* b : blocks) {
    if (b->cols() != out.cols()) throw std::invalid_argument("vconcat: column mismatch");
    out.data_.middleRows(off, b->rows()) = b->data_;
    off += b->rows();
  }
  return out;
}

FloatMatrix FloatMatrix::scale_rows(const std::vector<Scalar>& s) const {
  if (s.size() != rows()) throw std::invalid_argument("scale_rows: size mismatch");
  FloatMatrix out = *this;
  for (std::size_t i = 0; i < rows(); ++i) out.data_.row(i) *= s[i];
  return out;
}

std::vector<FloatMatrix::Scalar> FloatMatrix::entries() const {
  return std::vector<Scalar>(data_.data(), data_.data() + data_.size());
}

FloatMatrix& FloatMatrix::operator+=(const FloatMatrix& o) {
  if (rows() != o.rows() || cols() != o.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
  data_ += o.data_;
  field_ = field_ ? field_ : o.field_;
  return *this;
}

FloatMatrix& FloatMatrix::operator-=(const FloatMatrix& o) {
  if (rows() != o.rows() || cols() != o.cols()) throw std::invalid_argument("matrix difference: shape mismatch");
  data_ -= o.data_;
  field_ = field_ ? field_ : o.field_;
  return *this;
}

FloatMatrix& FloatMatrix::operator*=(const Scalar& s) {
  data_ *= s;
  return *this;
}

FloatMatrix operator*(const FloatMatrix& a, const FloatMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  FloatMatrix::Storage c = a.data_ * b.data_;
  return FloatMatrix(std::move(c), a.field_ ? a.field_ : b.field_);
}

bool operator==(const FloatMatrix& a, const FloatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).is_zero();
}

FloatMatrix FloatMatrix::add_identity(const Scalar& s) const {
  if (!is_square()) throw std::invalid_argument("add_identity: non-square");
  return *this + scalar(rows(), s, field_);
}

FloatMatrix::Rref FloatMatrix::rref(std::size_t pivot_limit) const {
  Storage m = data_;
  const auto nr = static_cast<Eigen::Index>(rows());
  const auto limit = static_cast<Eigen::Index>(std::min(pivot_limit, cols()));
  const double scale = std::max(1.0, limit > 0 ? m.leftCols(limit).cwiseAbs().maxCoeff() : 0.0);
  const double tol = pivot_tolerance() * scale;
  std::vector<std::size_t> pivots;
  Eigen::Index pr = 0;
  for (Eigen::Index col = 0; col < limit && pr < nr; ++col) {
    Eigen::Index best = -1;
    double best_abs = tol;
    for (Eigen::Index i = pr; i < nr; ++i) {
      const double v = std::abs(m(i, col));
      if (v > best_abs) {
        best_abs = v;
        best = i;
      }
    }
    if (best < 0) {
      m.block(pr, col, nr - pr, 1).setZero();
      continue;
    }
    m.row(pr).swap(m.row(best));
    m.row(pr) /= m(pr, col);
    for (Eigen::Index i = 0; i < nr; ++i) {
      if (i == pr) continue;
      const Scalar f = m(i, col);
      if (f != Scalar{}) m.row(i).noalias() -= f * m.row(pr);
      m(i, col) = Scalar{};
    }
    pivots.push_back(static_cast<std::size_t>(col));
    ++pr;
  }
  return Rref{FloatMatrix(Storage(m.topRows(pr)), field_), std::move(pivots)};
}

std::size_t FloatMatrix::rank() const { return rref().pivots.size(); }

FloatMatrix FloatMatrix::nullspace() const {
  const Rref rr = rref();
  std::vector<char> is_pivot(cols(), 0);
  for (auto p : rr.pivots) is_pivot[p] = 1;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < cols(); ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  FloatMatrix out(cols(), free_cols.size(), field_);
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    out.data_(free_cols[t], t) = 1.0;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) out.data_(rr.pivots[i], t) = -rr.reduced.data_(i, free_cols[t]);
  }
  return out;
}

FloatMatrix FloatMatrix::solve(const FloatMatrix& rhs) const {
  if (!is_square() || rhs.rows() != rows()) throw std::invalid_argument("solve: shape mismatch");
  Eigen::FullPivLU<Storage> lu(data_);
  lu.setThreshold(pivot_tolerance());
  if (!lu.isInvertible()) throw std::domain_error("singular matrix");
  return FloatMatrix(Storage(lu.solve(rhs.data_)), field_ ? field_ : rhs.field_);
}

FloatMatrix FloatMatrix::inverse() const {
  if (!is_square()) throw std::invalid_argument("inverse of non-square matrix");
  return solve(identity(rows(), field_));
}

std::string FloatMatrix::scalar_str(const Scalar& s) {
  char buf[96];
  if (s.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", s.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", s.real(), s.imag());
  }
  return buf;
}

std::string to_string(const FloatMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << FloatMatrix::scalar_str(m(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace drgtet
