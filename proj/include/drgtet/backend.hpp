#pragma once

// Scalar helpers shared by the code templated over ExactMatrix / FloatMatrix.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "drgtet/exact_matrix.hpp"
#include "drgtet/float_matrix.hpp"

namespace drgtet {

template <class Mat>
using ScalarOf = typename Mat::Scalar;

inline bool scalar_zero(const QuadScalar& s) { return s.is_zero(); }
inline bool scalar_zero(const std::complex<double>& s) { return FloatMatrix::approx_zero(s); }

inline std::string scalar_text(const QuadScalar& s) { return s.str(); }
inline std::string scalar_text(const std::complex<double>& s) { return FloatMatrix::scalar_str(s); }

/// Nearest integer of a value known to be integral (exact: must be).
int64_t scalar_count(const QuadScalar& s);
int64_t scalar_count(const std::complex<double>& s);

inline QuadScalar scalar_conj(const QuadScalar& s) { return conj(s); }
inline std::complex<double> scalar_conj(const std::complex<double>& s) { return std::conj(s); }

template <class Mat>
constexpr bool is_exact_backend() {
  return std::is_same_v<Mat, ExactMatrix>;
}

template <class Mat>
const char* backend_name() {
  return is_exact_backend<Mat>() ? "exact" : "float";
}

/// Matrix times diag(d), i.e. column j scaled by d[j].
template <class Mat>
Mat scale_cols(const Mat& m, const std::vector<ScalarOf<Mat>>& d) {
  return m.transpose().scale_rows(d).transpose();
}

/// Short description of a residual: "0" when zero, else the first nonzero
/// entry and its position (exact) or the largest entry magnitude (float).
template <class Mat>
std::string residual_text(const Mat& r) {
  if (r.is_zero()) return "0";
  const auto [i, j] = r.first_nonzero_position();
  std::string s = "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") = " + scalar_text(r(i, j));
  if constexpr (!is_exact_backend<Mat>()) s += ", max |entry| = " + scalar_text(std::complex<double>(r.max_abs()));
  return s;
}

}  // namespace drgtet
