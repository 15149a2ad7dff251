#include "drgtet/exact_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "drgtet/parallel.hpp"
#include "int_kernels.hpp"

namespace drgtet {

using detail::content_gcd;
using detail::divide_all;
using detail::int_gemm;
using detail::mul_sub;
using detail::mul_sub3;
using detail::multiply_all;

class ExactMatrixAccess {
 public:
  static const std::vector<Int>& rat(const ExactMatrix& m) { return m.rat_; }
  static const std::vector<Int>& irr(const ExactMatrix& m) { return m.irr_; }
};

namespace {

Int lcm(const Int& a, const Int& b) {
  if (a.is_one()) return b;
  if (b.is_one() || a == b) return a;
  return divexact(a, gcd(a, b)) * b;
}

void check_tag(int64_t m) {
  if (m != 0 && !is_valid_field_tag(m)) throw std::invalid_argument("invalid field tag " + std::to_string(m));
}

// Integer rows over Z[sqrt(m)] for fraction-free Gauss-Jordan elimination.
// Each row is an arbitrary nonzero rescaling of the rational row it stands
// for; rows are kept primitive (content 1) after every update.
struct RowSystem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  int64_t m = 0;
  bool quad = false;
  std::vector<Int> r;  // rational components
  std::vector<Int> s;  // sqrt(m) components (empty unless quad)

  [[nodiscard]] bool nonzero(std::size_t i, std::size_t j) const {
    return !r[i * cols + j].is_zero() || (quad && !s[i * cols + j].is_zero());
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(r.begin() + a * cols, r.begin() + (a + 1) * cols, r.begin() + b * cols);
    if (quad) std::swap_ranges(s.begin() + a * cols, s.begin() + (a + 1) * cols, s.begin() + b * cols);
  }

  void make_primitive(std::size_t i, std::size_t start) {
    Int g(0);
    for (std::size_t j = start; j < cols && !g.is_one(); ++j) {
      const Int& x = r[i * cols + j];
      if (!x.is_zero()) g = gcd(g, x);
      if (quad) {
        const Int& y = s[i * cols + j];
        if (!y.is_zero() && !g.is_one()) g = gcd(g, y);
      }
    }
    if (g.is_zero() || g.is_one()) return;
    for (std::size_t j = start; j < cols; ++j) {
      Int& x = r[i * cols + j];
      if (!x.is_zero()) x = divexact(x, g);
      if (quad) {
        Int& y = s[i * cols + j];
        if (!y.is_zero()) y = divexact(y, g);
      }
    }
  }

  // Rescales row i so that its entry in column col is a positive integer.
  void normalize_pivot(std::size_t i, std::size_t col) {
    if (quad && !s[i * cols + col].is_zero()) {
      const Int a = r[i * cols + col];
      const Int b = s[i * cols + col];
      for (std::size_t j = col; j < cols; ++j) {
        Int& x = r[i * cols + j];
        Int& y = s[i * cols + j];
        if (x.is_zero() && y.is_zero()) continue;
        // (x + y sqrt m)(a - b sqrt m)
        Int nx = mul_sub3(x, a, Int(0), Int(0), m, y, b);
        Int ny = mul_sub(y, a, x, b);
        x = std::move(nx);
        y = std::move(ny);
      }
    }
    if (r[i * cols + col].sign() < 0) {
      for (std::size_t j = col; j < cols; ++j) {
        Int& x = r[i * cols + j];
        if (!x.is_zero()) x = -x;
        if (quad) {
          Int& y = s[i * cols + j];
          if (!y.is_zero()) y = -y;
        }
      }
    }
    make_primitive(i, col);
  }

  // row_i <- P * row_i - e * row_p over columns [start, cols).
  void eliminate(std::size_t i, std::size_t p, std::size_t col, std::size_t start) {
    const Int piv = r[p * cols + col];
    const Int er = r[i * cols + col];
    if (!quad) {
      for (std::size_t j = start; j < cols; ++j) {
        Int& x = r[i * cols + j];
        const Int& y = r[p * cols + j];
        if (y.is_zero()) {
          if (!x.is_zero()) x *= piv;
        } else {
          x = mul_sub(piv, x, er, y);
        }
      }
    } else {
      const Int es = s[i * cols + col];
      for (std::size_t j = start; j < cols; ++j) {
        Int& x = r[i * cols + j];
        Int& xs = s[i * cols + j];
        const Int& y = r[p * cols + j];
        const Int& ys = s[p * cols + j];
        if (y.is_zero() && ys.is_zero()) {
          if (!x.is_zero()) x *= piv;
          if (!xs.is_zero()) xs *= piv;
          continue;
        }
        Int nx = mul_sub3(piv, x, er, y, m, es, ys);
        Int ny = mul_sub3(piv, xs, er, ys, 1, es, y);
        x = std::move(nx);
        xs = std::move(ny);
      }
    }
    make_primitive(i, start);
  }

  // Gauss-Jordan elimination; returns pivot columns (row k pivots at [k]).
  std::vector<std::size_t> gauss_jordan(std::size_t pivot_limit) {
    std::vector<std::size_t> pivots;
    const std::size_t limit = std::min(pivot_limit, cols);
    std::size_t pr = 0;
    for (std::size_t col = 0; col < limit && pr < rows; ++col) {
      std::size_t piv = rows;
      for (std::size_t i = pr; i < rows; ++i) {
        if (nonzero(i, col)) {
          piv = i;
          break;
        }
      }
      if (piv == rows) continue;
      swap_rows(piv, pr);
      normalize_pivot(pr, col);
      std::vector<std::size_t> targets;
      for (std::size_t i = 0; i < rows; ++i) {
        if (i != pr && nonzero(i, col)) targets.push_back(i);
      }
      const std::size_t chunk = std::max<std::size_t>(1, 4096 / std::max<std::size_t>(1, cols));
      parallel_for(0, targets.size(), chunk, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t t = lo; t < hi; ++t) {
          const std::size_t i = targets[t];
          eliminate(i, pr, col, i < pr ? pivots[i] : col);
        }
      });
      pivots.push_back(col);
      ++pr;
    }
    return pivots;
  }
};

RowSystem to_rows(const std::vector<const ExactMatrix*>& blocks, int64_t m) {
  // Horizontal concatenation, brought to a common denominator so each row is
  // a plain rescaling of the concatenated rational row.
  RowSystem sys;
  sys.rows = blocks.front()->rows();
  for (const auto* b : blocks) sys.cols += b->cols();
  sys.m = m;
  sys.quad = std::any_of(blocks.begin(), blocks.end(), [](const ExactMatrix* b) { return !b->is_rational(); });
  sys.r.assign(sys.rows * sys.cols, Int(0));
  if (sys.quad) sys.s.assign(sys.rows * sys.cols, Int(0));
  Int den(1);
  for (const auto* b : blocks) den = lcm(den, b->denominator());
  std::size_t offset = 0;
  for (const auto* b : blocks) {
    const Int factor = divexact(den, b->denominator());
    const auto& rat = ExactMatrixAccess::rat(*b);
    const auto& irr = ExactMatrixAccess::irr(*b);
    for (std::size_t i = 0; i < b->rows(); ++i) {
      for (std::size_t j = 0; j < b->cols(); ++j) {
        const std::size_t src = i * b->cols() + j;
        const std::size_t dst = i * sys.cols + offset + j;
        if (!rat[src].is_zero()) sys.r[dst] = factor.is_one() ? rat[src] : rat[src] * factor;
        if (!irr.empty() && !irr[src].is_zero()) sys.s[dst] = factor.is_one() ? irr[src] : irr[src] * factor;
      }
    }
    offset += b->cols();
  }
  return sys;
}

}  // namespace

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, int64_t field)
    : rows_(rows), cols_(cols), field_(field), rat_(rows * cols) {
  check_tag(field);
}

ExactMatrix ExactMatrix::identity(std::size_t n, int64_t field) {
  ExactMatrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m.rat_[i * n + i] = Int(1);
  return m;
}

ExactMatrix ExactMatrix::scalar(std::size_t n, const QuadScalar& s, int64_t field) {
  return identity(n, field == 0 ? s.field_tag() : field) * s;
}

ExactMatrix ExactMatrix::diagonal(const std::vector<QuadScalar>& diag, int64_t field) {
  const std::size_t n = diag.size();
  std::vector<QuadScalar> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return from_entries(n, n, e, field);
}

ExactMatrix ExactMatrix::from_entries(std::size_t rows, std::size_t cols, const std::vector<QuadScalar>& entries,
                                      int64_t field) {
  if (entries.size() != rows * cols) throw std::invalid_argument("from_entries: size mismatch");
  ExactMatrix out(rows, cols, field);
  Int den(1);
  bool any_irr = false;
  for (const auto& e : entries) {
    if (!e.is_rational()) {
      if (out.field_ == 0) {
        out.field_ = e.field_tag();
      } else if (out.field_ != e.field_tag()) {
        throw std::invalid_argument("from_entries: mixed quadratic fields");
      }
      any_irr = true;
      den = lcm(den, e.sqrt_part().den());
    }
    den = lcm(den, e.rational_part().den());
  }
  out.den_ = den;
  if (any_irr) out.irr_.assign(rows * cols, Int(0));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.is_zero()) continue;
    out.rat_[i] = divexact(den, e.rational_part().den()) * e.rational_part().num();
    if (!e.is_rational()) out.irr_[i] = divexact(den, e.sqrt_part().den()) * e.sqrt_part().num();
  }
  out.canonicalize();
  return out;
}

ExactMatrix ExactMatrix::from_integers(std::size_t rows, std::size_t cols, const std::vector<int64_t>& entries,
                                       int64_t field) {
  if (entries.size() != rows * cols) throw std::invalid_argument("from_integers: size mismatch");
  ExactMatrix out(rows, cols, field);
  for (std::size_t i = 0; i < entries.size(); ++i) out.rat_[i] = Int(static_cast<long long>(entries[i]));
  return out;
}

QuadScalar ExactMatrix::operator()(std::size_t i, std::size_t j) const {
  const std::size_t k = i * cols_ + j;
  Rational a(rat_[k], den_);
  if (irr_.empty() || irr_[k].is_zero()) return QuadScalar(std::move(a));
  return QuadScalar(std::move(a), Rational(irr_[k], den_), field_);
}

void ExactMatrix::set(std::size_t i, std::size_t j, const QuadScalar& v) {
  if (!v.is_rational()) require_field(v.field_tag());
  Int den = lcm(den_, v.rational_part().den());
  if (!v.is_rational()) den = lcm(den, v.sqrt_part().den());
  if (!(den == den_)) {
    const Int f = divexact(den, den_);
    multiply_all(rat_, f);
    multiply_all(irr_, f);
    den_ = den;
  }
  const std::size_t k = i * cols_ + j;
  rat_[k] = divexact(den_, v.rational_part().den()) * v.rational_part().num();
  if (!v.is_rational()) {
    if (irr_.empty()) irr_.assign(rows_ * cols_, Int(0));
    irr_[k] = divexact(den_, v.sqrt_part().den()) * v.sqrt_part().num();
  } else if (!irr_.empty()) {
    irr_[k] = Int(0);
  }
  canonicalize();
}

void ExactMatrix::require_field(int64_t other) {
  if (other == 0 || other == field_) return;
  if (field_ == 0) {
    field_ = other;
    return;
  }
  throw std::invalid_argument("incompatible quadratic fields: " + std::to_string(field_) + " vs " +
                              std::to_string(other));
}

int64_t ExactMatrix::merged_field(const ExactMatrix& o) const {
  if (field_ == o.field_ || o.field_ == 0) return field_;
  if (field_ == 0) return o.field_;
  throw std::invalid_argument("incompatible quadratic fields: " + std::to_string(field_) + " vs " +
                              std::to_string(o.field_));
}

void ExactMatrix::canonicalize() {
  if (!irr_.empty() && std::all_of(irr_.begin(), irr_.end(), [](const Int& x) { return x.is_zero(); })) {
    irr_.clear();
  }
  if (den_.is_one()) return;
  Int g = content_gcd(den_, rat_);
  g = content_gcd(g, irr_);
  if (!g.is_one()) {
    den_ = divexact(den_, g);
    divide_all(rat_, g);
    divide_all(irr_, g);
  }
}

ExactMatrix ExactMatrix::scaled_to(const Int& den) const {
  ExactMatrix out = *this;
  const Int f = divexact(den, den_);
  multiply_all(out.rat_, f);
  multiply_all(out.irr_, f);
  out.den_ = den;
  return out;
}

bool ExactMatrix::is_zero() const noexcept {
  return irr_.empty() && std::all_of(rat_.begin(), rat_.end(), [](const Int& x) { return x.is_zero(); });
}

bool ExactMatrix::is_identity() const {
  if (rows_ != cols_ || !irr_.empty() || !den_.is_one()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const Int& x = rat_[i * cols_ + j];
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  }
  return true;
}

std::size_t ExactMatrix::nonzero_count() const {
  std::size_t n = 0;
  for (std::size_t k = 0; k < rat_.size(); ++k) {
    if (!rat_[k].is_zero() || (!irr_.empty() && !irr_[k].is_zero())) ++n;
  }
  return n;
}

double ExactMatrix::max_abs() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const std::size_t k = i * cols_ + j;
      if (rat_[k].is_zero() && (irr_.empty() || irr_[k].is_zero())) continue;
      const auto [re, im] = (*this)(i, j).to_complex();
      best = std::max(best, std::hypot(re, im));
    }
  }
  return best;
}

std::pair<std::size_t, std::size_t> ExactMatrix::first_nonzero_position() const {
  for (std::size_t k = 0; k < rat_.size(); ++k) {
    if (!rat_[k].is_zero() || (!irr_.empty() && !irr_[k].is_zero())) return {k / cols_, k % cols_};
  }
  return {rows_, cols_};
}

QuadScalar ExactMatrix::first_nonzero() const {
  const auto [i, j] = first_nonzero_position();
  if (i == rows_) return QuadScalar(0);
  return (*this)(i, j);
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix out(cols_, rows_, field_);
  out.den_ = den_;
  if (!irr_.empty()) out.irr_.assign(rat_.size(), Int(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out.rat_[j * rows_ + i] = rat_[i * cols_ + j];
      if (!irr_.empty()) out.irr_[j * rows_ + i] = irr_[i * cols_ + j];
    }
  }
  return out;
}

ExactMatrix ExactMatrix::conj() const {
  ExactMatrix out = *this;
  if (field_ < 0) {
    for (auto& x : out.irr_) {
      if (!x.is_zero()) x = -x;
    }
  }
  return out;
}

ExactMatrix ExactMatrix::hadamard(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("hadamard: shape mismatch");
  ExactMatrix out(rows_, cols_, merged_field(o));
  out.den_ = den_ * o.den_;
  const bool quad = !irr_.empty() || !o.irr_.empty();
  if (quad) out.irr_.assign(rat_.size(), Int(0));
  for (std::size_t k = 0; k < rat_.size(); ++k) {
    const Int& ar = rat_[k];
    const Int& br = o.rat_[k];
    const Int ai = irr_.empty() ? Int(0) : irr_[k];
    const Int bi = o.irr_.empty() ? Int(0) : o.irr_[k];
    out.rat_[k] = ar * br + Int(out.field_) * ai * bi;
    if (quad) out.irr_[k] = ar * bi + ai * br;
  }
  out.canonicalize();
  return out;
}

QuadScalar ExactMatrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
  Int tr(0);
  Int ti(0);
  for (std::size_t i = 0; i < rows_; ++i) {
    tr += rat_[i * cols_ + i];
    if (!irr_.empty()) ti += irr_[i * cols_ + i];
  }
  if (ti.is_zero()) return QuadScalar(Rational(tr, den_));
  return QuadScalar(Rational(tr, den_), Rational(ti, den_), field_);
}

ExactMatrix ExactMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  ExactMatrix out(rows_, idx.size(), field_);
  out.den_ = den_;
  if (!irr_.empty()) out.irr_.assign(rows_ * idx.size(), Int(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t t = 0; t < idx.size(); ++t) {
      out.rat_[i * idx.size() + t] = rat_[i * cols_ + idx[t]];
      if (!irr_.empty()) out.irr_[i * idx.size() + t] = irr_[i * cols_ + idx[t]];
    }
  }
  out.canonicalize();
  return out;
}

ExactMatrix ExactMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  ExactMatrix out(idx.size(), cols_, field_);
  out.den_ = den_;
  if (!irr_.empty()) out.irr_.assign(idx.size() * cols_, Int(0));
  for (std::size_t t = 0; t < idx.size(); ++t) {
    std::copy_n(rat_.begin() + idx[t] * cols_, cols_, out.rat_.begin() + t * cols_);
    if (!irr_.empty()) std::copy_n(irr_.begin() + idx[t] * cols_, cols_, out.irr_.begin() + t * cols_);
  }
  out.canonicalize();
  return out;
}

ExactMatrix ExactMatrix::hconcat(const std::vector<const ExactMatrix*>& blocks) {
  if (blocks.empty()) return ExactMatrix();
  std::vector<ExactMatrix> ts;
  ts.reserve(blocks.size());
  for (const auto* b : blocks) ts.push_back(b->transpose());
  std::vector<const ExactMatrix*> ptrs;
  ptrs.reserve(ts.size());
  for (const auto& t : ts) ptrs.push_back(&t);
  return vconcat(ptrs).transpose();
}

ExactMatrix ExactMatrix::vconcat(const std::vector<const ExactMatrix*>& blocks) {
  if (blocks.empty()) return ExactMatrix();
  const std::size_t cols = blocks.front()->cols();
  std::size_t rows = 0;
  int64_t field = 0;
  Int den(1);
  bool quad = false;
  for (const auto* b : blocks) {
    if (b->cols() != cols) throw std::invalid_argument("vconcat: column mismatch");
    rows += b->rows();
    if (b->field() != 0) {
      if (field != 0 && field != b->field()) throw std::invalid_argument("vconcat: mixed fields");
      field = b->field();
    }
    den = lcm(den, b->denominator());
    quad = quad || !b->is_rational();
  }
  ExactMatrix out(rows, cols, field);
  out.den_ = den;
  if (quad) out.irr_.assign(rows * cols, Int(0));
  std::size_t offset = 0;
  for (const auto* b : blocks) {
    const ExactMatrix s = b->scaled_to(den);
    std::copy(s.rat_.begin(), s.rat_.end(), out.rat_.begin() + offset * cols);
    if (!s.irr_.empty()) std::copy(s.irr_.begin(), s.irr_.end(), out.irr_.begin() + offset * cols);
    offset += b->rows();
  }
  out.canonicalize();
  return out;
}

ExactMatrix ExactMatrix::scale_rows(const std::vector<QuadScalar>& s) const {
  if (s.size() != rows_) throw std::invalid_argument("scale_rows: size mismatch");
  // Row i is multiplied by (fa[i] + fc[i] sqrt(m)) / L with integers fa, fc.
  Int l(1);
  int64_t field = field_;
  for (const auto& x : s) {
    l = lcm(l, x.rational_part().den());
    if (!x.is_rational()) {
      l = lcm(l, x.sqrt_part().den());
      if (field == 0) field = x.field_tag();
      if (field != x.field_tag()) throw std::invalid_argument("scale_rows: incompatible quadratic fields");
    }
  }
  std::vector<Int> fa(rows_);
  std::vector<Int> fc(rows_);
  bool quad = !irr_.empty();
  for (std::size_t i = 0; i < rows_; ++i) {
    fa[i] = divexact(l, s[i].rational_part().den()) * s[i].rational_part().num();
    if (!s[i].is_rational()) {
      fc[i] = divexact(l, s[i].sqrt_part().den()) * s[i].sqrt_part().num();
      quad = true;
    }
  }
  ExactMatrix out(rows_, cols_, field);
  out.den_ = den_ * l;
  if (quad) out.irr_.assign(rat_.size(), Int(0));
  const Int m(field);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const std::size_t k = i * cols_ + j;
      const Int& r = rat_[k];
      const Int zero(0);
      const Int& c = irr_.empty() ? zero : irr_[k];
      if (r.is_zero() && c.is_zero()) continue;
      if (fc[i].is_zero()) {
        out.rat_[k] = r * fa[i];
        if (!c.is_zero()) out.irr_[k] = c * fa[i];
      } else {
        out.rat_[k] = r * fa[i] + m * c * fc[i];
        out.irr_[k] = r * fc[i] + c * fa[i];
      }
    }
  }
  out.canonicalize();
  return out;
}

std::vector<QuadScalar> ExactMatrix::entries() const {
  std::vector<QuadScalar> out;
  out.reserve(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.push_back((*this)(i, j));
  }
  return out;
}

ExactMatrix ExactMatrix::operator-() const {
  ExactMatrix out = *this;
  for (auto& x : out.rat_) {
    if (!x.is_zero()) x = -x;
  }
  for (auto& x : out.irr_) {
    if (!x.is_zero()) x = -x;
  }
  return out;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  field_ = merged_field(o);
  const Int den = lcm(den_, o.den_);
  if (!(den == den_)) *this = scaled_to(den);
  const Int f = divexact(den, o.den_);
  if (!o.irr_.empty() && irr_.empty()) irr_.assign(rat_.size(), Int(0));
  for (std::size_t k = 0; k < rat_.size(); ++k) {
    if (!o.rat_[k].is_zero()) rat_[k] += f.is_one() ? o.rat_[k] : o.rat_[k] * f;
    if (!o.irr_.empty() && !o.irr_[k].is_zero()) irr_[k] += f.is_one() ? o.irr_[k] : o.irr_[k] * f;
  }
  canonicalize();
  return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) { return *this += -o; }

ExactMatrix& ExactMatrix::operator*=(const QuadScalar& s) {
  if (!s.is_rational()) require_field(s.field_tag());
  if (s.is_zero()) {
    *this = ExactMatrix(rows_, cols_, field_);
    return *this;
  }
  // s = (sa + sc sqrt m) / sd with integers sa, sc, sd.
  const Int sd = lcm(s.rational_part().den(), s.sqrt_part().den());
  const Int sa = divexact(sd, s.rational_part().den()) * s.rational_part().num();
  const Int sc = divexact(sd, s.sqrt_part().den()) * s.sqrt_part().num();
  if (sc.is_zero()) {
    multiply_all(rat_, sa);
    multiply_all(irr_, sa);
  } else {
    if (irr_.empty()) irr_.assign(rat_.size(), Int(0));
    const Int m(field_);
    for (std::size_t k = 0; k < rat_.size(); ++k) {
      const Int r = rat_[k];
      const Int i = irr_[k];
      if (r.is_zero() && i.is_zero()) continue;
      rat_[k] = r * sa + m * i * sc;
      irr_[k] = r * sc + i * sa;
    }
  }
  den_ *= sd;
  canonicalize();
  return *this;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  ExactMatrix out(a.rows_, b.cols_, a.merged_field(b));
  const std::size_t n = a.rows_;
  const std::size_t k = a.cols_;
  const std::size_t p = b.cols_;
  out.den_ = a.den_ * b.den_;
  out.rat_ = int_gemm(a.rat_, b.rat_, n, k, p);
  if (!a.irr_.empty() && !b.irr_.empty()) {
    const auto ii = int_gemm(a.irr_, b.irr_, n, k, p);
    const Int m(out.field_);
    for (std::size_t t = 0; t < ii.size(); ++t) {
      if (!ii[t].is_zero()) out.rat_[t] += m * ii[t];
    }
  }
  if (!a.irr_.empty() || !b.irr_.empty()) {
    if (!b.irr_.empty()) out.irr_ = int_gemm(a.rat_, b.irr_, n, k, p);
    if (!a.irr_.empty()) {
      auto ir = int_gemm(a.irr_, b.rat_, n, k, p);
      if (out.irr_.empty()) {
        out.irr_ = std::move(ir);
      } else {
        for (std::size_t t = 0; t < ir.size(); ++t) {
          if (!ir[t].is_zero()) out.irr_[t] += ir[t];
        }
      }
    }
  }
  out.canonicalize();
  return out;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (!(a.den_ == b.den_) || a.rat_ != b.rat_) return false;
  if (a.irr_.empty() != b.irr_.empty()) return false;
  return a.irr_.empty() || (a.field_ == b.field_ && a.irr_ == b.irr_);
}

ExactMatrix ExactMatrix::add_identity(const QuadScalar& s) const {
  if (rows_ != cols_) throw std::invalid_argument("add_identity: non-square");
  return *this + ExactMatrix::scalar(rows_, s, field_);
}

ExactMatrix::Rref ExactMatrix::rref(std::size_t pivot_limit) const {
  RowSystem sys = to_rows({this}, field_);
  const auto pivots = sys.gauss_jordan(pivot_limit);
  const std::size_t rank = pivots.size();
  Int den(1);
  for (std::size_t i = 0; i < rank; ++i) den = lcm(den, sys.r[i * sys.cols + pivots[i]]);
  ExactMatrix red(rank, cols_, field_);
  red.den_ = den;
  if (sys.quad) red.irr_.assign(rank * cols_, Int(0));
  for (std::size_t i = 0; i < rank; ++i) {
    const Int f = divexact(den, sys.r[i * sys.cols + pivots[i]]);
    for (std::size_t j = 0; j < cols_; ++j) {
      const Int& x = sys.r[i * sys.cols + j];
      if (!x.is_zero()) red.rat_[i * cols_ + j] = x * f;
      if (sys.quad) {
        const Int& y = sys.s[i * sys.cols + j];
        if (!y.is_zero()) red.irr_[i * cols_ + j] = y * f;
      }
    }
  }
  red.canonicalize();
  return Rref{std::move(red), pivots};
}

std::size_t ExactMatrix::rank() const {
  RowSystem sys = to_rows({this}, field_);
  return sys.gauss_jordan(SIZE_MAX).size();
}

ExactMatrix ExactMatrix::nullspace() const {
  const Rref rr = rref();
  std::vector<char> is_pivot(cols_, 0);
  for (auto p : rr.pivots) is_pivot[p] = 1;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  const ExactMatrix& red = rr.reduced;
  ExactMatrix out(cols_, free_cols.size(), field_);
  if (!red.irr_.empty()) out.irr_.assign(cols_ * free_cols.size(), Int(0));
  // Basis vector for free column f, scaled by the RREF denominator.
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    const std::size_t f = free_cols[t];
    out.rat_[f * free_cols.size() + t] = red.den_;
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
      const std::size_t k = i * cols_ + f;
      out.rat_[rr.pivots[i] * free_cols.size() + t] = -red.rat_[k];
      if (!red.irr_.empty()) out.irr_[rr.pivots[i] * free_cols.size() + t] = -red.irr_[k];
    }
  }
  out.canonicalize();
  return out;
}

ExactMatrix ExactMatrix::solve(const ExactMatrix& rhs) const {
  if (rows_ != cols_ || rhs.rows_ != rows_) throw std::invalid_argument("solve: shape mismatch");
  const int64_t m = merged_field(rhs);
  RowSystem sys = to_rows({this, &rhs}, m);
  const auto pivots = sys.gauss_jordan(cols_);
  if (pivots.size() != rows_) throw std::domain_error("singular matrix");
  const std::size_t n = rows_;
  const std::size_t p = rhs.cols_;
  Int den(1);
  for (std::size_t i = 0; i < n; ++i) den = lcm(den, sys.r[i * sys.cols + i]);
  ExactMatrix out(n, p, m);
  out.den_ = den;
  if (sys.quad) out.irr_.assign(n * p, Int(0));
  for (std::size_t i = 0; i < n; ++i) {
    const Int f = divexact(den, sys.r[i * sys.cols + i]);
    for (std::size_t j = 0; j < p; ++j) {
      const Int& x = sys.r[i * sys.cols + n + j];
      if (!x.is_zero()) out.rat_[i * p + j] = x * f;
      if (sys.quad) {
        const Int& y = sys.s[i * sys.cols + n + j];
        if (!y.is_zero()) out.irr_[i * p + j] = y * f;
      }
    }
  }
  out.canonicalize();
  return out;
}

ExactMatrix ExactMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  return solve(identity(rows_, field_));
}

std::string to_string(const ExactMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace drgtet
