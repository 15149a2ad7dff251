#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "drgtet/exact_matrix.hpp"
#include "drgtet/quad_scalar.hpp"

namespace drgtet {

/// Complex double mirror of ExactMatrix with the same interface.
///
/// Zero tests use two process-wide tolerances: pivot_tolerance (relative to
/// the largest entry) during elimination, residual_tolerance (absolute, on
/// the largest entry) for is_zero / is_identity / ==.
class FloatMatrix {
 public:
  using Scalar = std::complex<double>;
  using Storage = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  FloatMatrix() = default;
  FloatMatrix(std::size_t rows, std::size_t cols, int64_t field = 0);
  explicit FloatMatrix(Storage data, int64_t field = 0) : data_(std::move(data)), field_(field) {}

  static FloatMatrix identity(std::size_t n, int64_t field = 0);
  static FloatMatrix scalar(std::size_t n, const Scalar& s, int64_t field = 0);
  static FloatMatrix diagonal(const std::vector<Scalar>& diag, int64_t field = 0);
  static FloatMatrix from_integers(std::size_t rows, std::size_t cols, const std::vector<int64_t>& entries,
                                   int64_t field = 0);
  static FloatMatrix lift(const ExactMatrix& m);
  static Scalar lift(const QuadScalar& s);

  static double pivot_tolerance();
  static double residual_tolerance();
  static void set_tolerances(double pivot, double residual);

  [[nodiscard]] std::size_t rows() const noexcept { return static_cast<std::size_t>(data_.rows()); }
  [[nodiscard]] std::size_t cols() const noexcept { return static_cast<std::size_t>(data_.cols()); }
  [[nodiscard]] int64_t field() const noexcept { return field_; }
  [[nodiscard]] const Storage& data() const noexcept { return data_; }

  [[nodiscard]] Scalar operator()(std::size_t i, std::size_t j) const { return data_(i, j); }
  void set(std::size_t i, std::size_t j, const Scalar& v) { data_(i, j) = v; }

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] bool is_square() const noexcept { return rows() == cols(); }
  [[nodiscard]] std::size_t nonzero_count() const;
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] Scalar first_nonzero() const;
  [[nodiscard]] std::pair<std::size_t, std::size_t> first_nonzero_position() const;

  [[nodiscard]] FloatMatrix transpose() const { return FloatMatrix(data_.transpose(), field_); }
  [[nodiscard]] FloatMatrix conj() const { return FloatMatrix(data_.conjugate(), field_); }
  [[nodiscard]] FloatMatrix hadamard(const FloatMatrix& o) const;
  [[nodiscard]] Scalar trace() const { return data_.trace(); }
  [[nodiscard]] FloatMatrix select_columns(const std::vector<std::size_t>& idx) const;
  [[nodiscard]] FloatMatrix select_rows(const std::vector<std::size_t>& idx) const;
  static FloatMatrix hconcat(const std::vector<const FloatMatrix*>& blocks);
  static FloatMatrix vconcat(const std::vector<const FloatMatrix*>& blocks);
  [[nodiscard]] FloatMatrix scale_rows(const std::vector<Scalar>& s) const;
  [[nodiscard]] std::vector<Scalar> entries() const;

  FloatMatrix operator-() const { return FloatMatrix(-data_, field_); }
  FloatMatrix& operator+=(const FloatMatrix& o);
  FloatMatrix& operator-=(const FloatMatrix& o);
  FloatMatrix& operator*=(const Scalar& s);
  friend FloatMatrix operator+(FloatMatrix a, const FloatMatrix& b) { return a += b; }
  friend FloatMatrix operator-(FloatMatrix a, const FloatMatrix& b) { return a -= b; }
  friend FloatMatrix operator*(FloatMatrix a, const Scalar& s) { return a *= s; }
  friend FloatMatrix operator*(const Scalar& s, FloatMatrix a) { return a *= s; }
  friend FloatMatrix operator*(const FloatMatrix& a, const FloatMatrix& b);
  /// Approximate equality under residual_tolerance.
  friend bool operator==(const FloatMatrix& a, const FloatMatrix& b);

  [[nodiscard]] FloatMatrix add_identity(const Scalar& s) const;

  struct Rref;
  [[nodiscard]] Rref rref(std::size_t pivot_limit = SIZE_MAX) const;
  [[nodiscard]] std::size_t rank() const;
  [[nodiscard]] FloatMatrix nullspace() const;
  [[nodiscard]] FloatMatrix inverse() const;
  [[nodiscard]] FloatMatrix solve(const FloatMatrix& rhs) const;

  [[nodiscard]] static bool approx_zero(const Scalar& s) { return std::abs(s) <= residual_tolerance(); }
  [[nodiscard]] static std::string scalar_str(const Scalar& s);

 private:
  Storage data_;
  int64_t field_ = 0;
};

struct FloatMatrix::Rref {
  FloatMatrix reduced;
  std::vector<std::size_t> pivots;
};

std::string to_string(const FloatMatrix& m);

}  // namespace drgtet
