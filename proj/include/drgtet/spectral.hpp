#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drgtet/backend.hpp"
#include "drgtet/graph.hpp"

namespace drgtet {

/// Raised when a spectral postcondition fails (minimal polynomial,
/// idempotent relations, eigenvalue form).
class SpectralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Eigenvalues {
  std::vector<QuadScalar> theta;  ///< theta_i = alpha0 + alpha1 q^{D-2i}
  QuadScalar alpha0;
  QuadScalar alpha1;
};

/// Solves alpha0 + alpha1 q^D = k and sum_i theta_i = sum_i a_i, then checks
/// every theta_i against the characteristic polynomial of the tridiagonal
/// intersection matrix.
Eigenvalues solve_eigenvalues(const IntersectionArray& arr, const ClassicalParams& cp);

/// det(L - theta I) for the tridiagonal intersection matrix L.
QuadScalar intersection_char_poly(const IntersectionArray& arr, const QuadScalar& theta);

/// Lagrange projectors E_i = prod_{j != i} (A1 - theta_j I) / (theta_i - theta_j).
/// Verifies prod_i (A1 - theta_i I) = 0, E_i E_j = delta_ij E_i, sum E_i = I
/// and A1 E_i = theta_i E_i; throws SpectralError otherwise.
template <class Mat>
std::vector<Mat> primitive_idempotents(const Mat& a1, const std::vector<QuadScalar>& theta);

template <class Mat>
struct KreinData {
  std::vector<int64_t> multiplicities;  ///< m_i = trace E_i
  /// q^h_{ij}, flattened as (h * (D+1) + i) * (D+1) + j.
  std::vector<ScalarOf<Mat>> q;
  /// E_i ∘ E_j for i <= j, flattened as i * (D+1) + j (lower half mirrors).
  std::vector<Mat> hadamard;
  bool expansion_holds = false;
  bool real_nonnegative = false;

  [[nodiscard]] int D() const { return static_cast<int>(multiplicities.size()) - 1; }
  [[nodiscard]] const ScalarOf<Mat>& krein(int h, int i, int j) const {
    const int w = D() + 1;
    return q[(h * w + i) * w + j];
  }
  [[nodiscard]] const Mat& product(int i, int j) const {
    const int w = D() + 1;
    return i <= j ? hadamard[i * w + j] : hadamard[j * w + i];
  }
};

/// q^h_{ij} = |X| trace((E_i ∘ E_j) E_h) / m_h, with the expansion
/// E_i ∘ E_j = |X|^{-1} sum_h q^h_{ij} E_h re-verified.
template <class Mat>
KreinData<Mat> krein_parameters(const std::vector<Mat>& e);

struct CheckResult {
  bool ok = true;
  std::string detail;  ///< first mismatch when !ok
};

/// q^h_{ij} = p^h_{ij} for all h, i, j.
template <class Mat>
CheckResult check_self_dual(const IntersectionArray& arr, const KreinData<Mat>& kp);

/// Krein triangle pattern: zero when one index exceeds the sum of the other
/// two, nonzero when it equals that sum.
template <class Mat>
CheckResult check_q_polynomial(const KreinData<Mat>& kp);

template <class Mat>
struct DualData {
  std::size_t base = 0;
  /// Vertices at distance i from the base vertex: E*_i is the projection
  /// onto these coordinates.
  std::vector<std::vector<std::size_t>> spheres;
  /// Diagonal of A*_i: (A*_i)_{yy} = |X| (E_i)_{xy}.
  std::vector<std::vector<ScalarOf<Mat>>> astar;
  std::vector<ScalarOf<Mat>> theta_star;
  bool multiplication_holds = false;

  [[nodiscard]] Mat estar(int i, int64_t field = 0) const;
  [[nodiscard]] Mat astar_matrix(int i, int64_t field = 0) const;
};

/// Builds E*_i, A*_i at base vertex x; verifies A*_i A*_j = sum_h q^h_{ij} A*_h
/// and that A*_1 is constant (= theta*_i) on each sphere.
template <class Mat>
DualData<Mat> dual_structures(const GraphData& g, const std::vector<Mat>& e, const KreinData<Mat>& kp,
                              std::size_t x);

struct TripleReport {
  int checked = 0;
  std::vector<std::string> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// E*_h A_i E*_j = 0 iff p^h_{ij} = 0, and E_h A*_i E_j = 0 iff q^h_{ij} = 0.
template <class Mat>
TripleReport triple_product_checks(const GraphData& g, const IntersectionArray& arr, const KreinData<Mat>& kp,
                                   const DualData<Mat>& dual);

template <class Mat>
struct NormalizedPair {
  Mat a;                                   ///< A = (A1 - alpha0 I) / alpha1
  std::vector<ScalarOf<Mat>> astar_diag;   ///< diagonal of A*
  bool eigen_relations_hold = false;

  [[nodiscard]] Mat astar() const { return Mat::diagonal(astar_diag, a.field()); }
};

/// A and A*, with (A - q^{D-2i} I) E_i = 0 and (A* - q^{D-2i} I) E*_i = 0
/// checked for every i.
template <class Mat>
NormalizedPair<Mat> normalize_pair(const Mat& a1, const DualData<Mat>& dual, const std::vector<Mat>& e,
                                   const Eigenvalues& ev, const QuadScalar& q);

template <class Mat>
struct SerreResidual {
  Mat first;   ///< A^3 A* - [3] A^2 A* A + [3] A A* A^2 - A* A^3
  Mat second;  ///< the same with A and A* exchanged
  [[nodiscard]] bool ok() const { return first.is_zero() && second.is_zero(); }
};

/// Evaluates u^3 v - [3]_q u^2 v u + [3]_q u v u^2 - v u^3.
template <class Mat>
Mat q_serre(const Mat& u, const Mat& v, const QuadScalar& q);

template <class Mat>
SerreResidual<Mat> check_q_serre(const NormalizedPair<Mat>& pair, const QuadScalar& q);

}  // namespace drgtet
