#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drgtet/integer.hpp"
#include "drgtet/quad_scalar.hpp"

namespace drgtet {

/// Dense matrix over Q(sqrt(m)).
///
/// Entries are stored as (rat + irr*sqrt(m)) / den with integer numerator
/// arrays and one positive common denominator. The representation is kept
/// canonical (den is minimal, irr is dropped when it is identically zero),
/// so structural equality is value equality.
class ExactMatrix {
 public:
  using Scalar = QuadScalar;

  ExactMatrix() = default;
  /// Zero matrix.
  ExactMatrix(std::size_t rows, std::size_t cols, int64_t field = 0);

  static ExactMatrix identity(std::size_t n, int64_t field = 0);
  static ExactMatrix scalar(std::size_t n, const QuadScalar& s, int64_t field = 0);
  static ExactMatrix diagonal(const std::vector<QuadScalar>& diag, int64_t field = 0);
  /// Row-major entries.
  static ExactMatrix from_entries(std::size_t rows, std::size_t cols, const std::vector<QuadScalar>& entries,
                                  int64_t field = 0);
  static ExactMatrix from_integers(std::size_t rows, std::size_t cols, const std::vector<int64_t>& entries,
                                   int64_t field = 0);
  static ExactMatrix lift(const ExactMatrix& m) { return m; }
  static QuadScalar lift(const QuadScalar& s) { return s; }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  /// Field tag m (0 when the matrix is declared over Q).
  [[nodiscard]] int64_t field() const noexcept { return field_; }
  [[nodiscard]] bool is_rational() const noexcept { return irr_.empty(); }
  [[nodiscard]] const Int& denominator() const noexcept { return den_; }

  [[nodiscard]] QuadScalar operator()(std::size_t i, std::size_t j) const;
  /// Replaces one entry; rescales the whole matrix if the denominator grows.
  void set(std::size_t i, std::size_t j, const QuadScalar& v);

  [[nodiscard]] bool is_zero() const noexcept;
  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
  /// Number of nonzero entries.
  [[nodiscard]] std::size_t nonzero_count() const;
  /// Largest |entry| as a double (approximate; report use only).
  [[nodiscard]] double max_abs() const;
  /// First nonzero entry in row-major order, or 0.
  [[nodiscard]] QuadScalar first_nonzero() const;
  /// Position of the first nonzero entry, or {rows, cols}.
  [[nodiscard]] std::pair<std::size_t, std::size_t> first_nonzero_position() const;

  [[nodiscard]] ExactMatrix transpose() const;
  /// Entrywise complex conjugation.
  [[nodiscard]] ExactMatrix conj() const;
  [[nodiscard]] ExactMatrix hadamard(const ExactMatrix& o) const;
  [[nodiscard]] QuadScalar trace() const;
  [[nodiscard]] ExactMatrix select_columns(const std::vector<std::size_t>& idx) const;
  [[nodiscard]] ExactMatrix select_rows(const std::vector<std::size_t>& idx) const;
  static ExactMatrix hconcat(const std::vector<const ExactMatrix*>& blocks);
  static ExactMatrix vconcat(const std::vector<const ExactMatrix*>& blocks);
  /// Scales row i by s[i].
  [[nodiscard]] ExactMatrix scale_rows(const std::vector<QuadScalar>& s) const;
  /// Row-major entries.
  [[nodiscard]] std::vector<QuadScalar> entries() const;

  ExactMatrix operator-() const;
  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  ExactMatrix& operator*=(const QuadScalar& s);
  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
  friend ExactMatrix operator*(ExactMatrix a, const QuadScalar& s) { return a *= s; }
  friend ExactMatrix operator*(const QuadScalar& s, ExactMatrix a) { return a *= s; }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

  /// Adds s on the diagonal.
  [[nodiscard]] ExactMatrix add_identity(const QuadScalar& s) const;

  struct Rref;
  /// Reduced row-echelon form, pivoting only inside the first pivot_limit
  /// columns (all columns by default).
  [[nodiscard]] Rref rref(std::size_t pivot_limit = SIZE_MAX) const;
  [[nodiscard]] std::size_t rank() const;
  /// Columns form a basis of {v : M v = 0}.
  [[nodiscard]] ExactMatrix nullspace() const;
  /// Throws std::domain_error if singular.
  [[nodiscard]] ExactMatrix inverse() const;
  /// Solves M X = rhs for square nonsingular M.
  [[nodiscard]] ExactMatrix solve(const ExactMatrix& rhs) const;

  [[nodiscard]] static bool approx_zero(const QuadScalar& s) { return s.is_zero(); }
  [[nodiscard]] static std::string scalar_str(const QuadScalar& s) { return s.str(); }

 private:
  friend class ExactMatrixAccess;
  void canonicalize();
  void require_field(int64_t other);
  [[nodiscard]] int64_t merged_field(const ExactMatrix& o) const;
  [[nodiscard]] ExactMatrix scaled_to(const Int& den) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int64_t field_ = 0;
  Int den_{1};
  std::vector<Int> rat_;
  std::vector<Int> irr_;
};

struct ExactMatrix::Rref {
  ExactMatrix reduced;              ///< nonzero rows of the reduced row-echelon form
  std::vector<std::size_t> pivots;  ///< pivot column of each row
};

std::string to_string(const ExactMatrix& m);

}  // namespace drgtet
