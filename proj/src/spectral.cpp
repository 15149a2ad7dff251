#include "drgtet/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace drgtet {

int64_t scalar_count(const QuadScalar& s) {
  if (!s.is_rational() || !s.rational_part().is_integer() || !s.rational_part().num().fits_int64()) {
    throw std::domain_error("expected an integer, got " + s.str());
  }
  return s.rational_part().num().small();
}

int64_t scalar_count(const std::complex<double>& s) { return std::llround(s.real()); }

namespace {

std::string triple(int h, int i, int j) {
  return "(" + std::to_string(h) + "," + std::to_string(i) + "," + std::to_string(j) + ")";
}

/// Exact sign test for a real element of Q(sqrt(m)).
bool real_nonnegative(const QuadScalar& s) {
  if (s.field_tag() < 0) return false;
  const Rational& a = s.rational_part();
  const Rational& c = s.sqrt_part();
  if (c.is_zero()) return a.sign() >= 0;
  if (a.sign() >= 0 && c.sign() >= 0) return true;
  if (a.sign() <= 0 && c.sign() <= 0) return false;
  const Rational a2 = a * a;
  const Rational c2m = c * c * Rational(s.field_tag());
  return a.sign() > 0 ? a2 >= c2m : c2m >= a2;
}

bool real_nonnegative(const std::complex<double>& s) {
  const double tol = FloatMatrix::residual_tolerance();
  return std::abs(s.imag()) <= tol && s.real() >= -tol;
}

template <class Mat>
ScalarOf<Mat> lift(const QuadScalar& s) {
  return Mat::lift(s);
}

}  // namespace

QuadScalar intersection_char_poly(const IntersectionArray& arr, const QuadScalar& theta) {
  QuadScalar prev2 = 0;
  QuadScalar prev = 1;
  for (int i = 0; i <= arr.D; ++i) {
    QuadScalar cur = (QuadScalar(arr.a[i]) - theta) * prev;
    if (i > 0) cur -= QuadScalar(arr.b[i - 1] * arr.c[i]) * prev2;
    prev2 = prev;
    prev = cur;
  }
  return prev;
}

Eigenvalues solve_eigenvalues(const IntersectionArray& arr, const ClassicalParams& cp) {
  const int d = arr.D;
  if (cp.D != d) throw SpectralError("classical parameters do not match the intersection array diameter");
  const QuadScalar& q = cp.q;
  QuadScalar trace = 0;
  QuadScalar powers = 0;
  for (int i = 0; i <= d; ++i) {
    trace += QuadScalar(arr.a[i]);
    powers += q.pow(d - 2 * i);
  }
  const QuadScalar k(arr.valency());
  const QuadScalar top = q.pow(d);
  const QuadScalar denom = powers - QuadScalar(d + 1) * top;
  if (denom.is_zero()) throw SpectralError("degenerate eigenvalue system: q is a root of unity");
  Eigenvalues ev;
  ev.alpha1 = (trace - QuadScalar(d + 1) * k) / denom;
  if (ev.alpha1.is_zero()) throw SpectralError("alpha1 = 0");
  ev.alpha0 = k - ev.alpha1 * top;
  for (int i = 0; i <= d; ++i) {
    ev.theta.push_back(ev.alpha0 + ev.alpha1 * q.pow(d - 2 * i));
    const QuadScalar r = intersection_char_poly(arr, ev.theta.back());
    if (!r.is_zero()) {
      throw SpectralError("theta_" + std::to_string(i) + " = " + ev.theta.back().str() +
                          " is not an eigenvalue of the intersection matrix (residual " + r.str() + ")");
    }
  }
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j < i; ++j) {
      if (ev.theta[i] == ev.theta[j]) throw SpectralError("eigenvalues are not distinct");
    }
  }
  return ev;
}

template <class Mat>
std::vector<Mat> primitive_idempotents(const Mat& a1, const std::vector<QuadScalar>& theta) {
  using S = ScalarOf<Mat>;
  const std::size_t w = theta.size();
  const std::size_t n = a1.rows();
  const int64_t field = a1.field();
  std::vector<S> t(w);
  std::vector<Mat> shifted;
  for (std::size_t i = 0; i < w; ++i) {
    t[i] = lift<Mat>(theta[i]);
    shifted.push_back(a1.add_identity(-t[i]));
  }

  Mat minimal = shifted[0];
  for (std::size_t i = 1; i < w; ++i) minimal = minimal * shifted[i];
  if (!minimal.is_zero()) {
    throw SpectralError("prod (A1 - theta_i I) != 0: " + residual_text(minimal));
  }

  std::vector<Mat> e;
  for (std::size_t i = 0; i < w; ++i) {
    Mat acc = Mat::identity(n, field);
    S denom = S(1);
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < w; ++j) {
      if (j != i) others.push_back(j);
    }
    if (!others.empty()) acc = shifted[others[0]];
    for (std::size_t k = 1; k < others.size(); ++k) acc = acc * shifted[others[k]];
    for (std::size_t j : others) denom *= t[i] - t[j];
    e.push_back(acc * (S(1) / denom));
  }

  Mat total(n, n, field);
  for (std::size_t i = 0; i < w; ++i) {
    total += e[i];
    if (!(e[i].transpose() == e[i]) || !(e[i].conj() == e[i])) {
      throw SpectralError("E_" + std::to_string(i) + " is not real symmetric");
    }
    const Mat ev = a1 * e[i] - e[i] * t[i];
    if (!ev.is_zero()) throw SpectralError("A1 E_" + std::to_string(i) + " != theta E: " + residual_text(ev));
    for (std::size_t j = i; j < w; ++j) {
      Mat prod = e[i] * e[j];
      if (i == j) prod -= e[i];
      if (!prod.is_zero()) {
        throw SpectralError("E_" + std::to_string(i) + " E_" + std::to_string(j) + " residual " + residual_text(prod));
      }
    }
  }
  if (!total.is_identity()) throw SpectralError("sum E_i != I");
  return e;
}

template <class Mat>
KreinData<Mat> krein_parameters(const std::vector<Mat>& e) {
  using S = ScalarOf<Mat>;
  const int w = static_cast<int>(e.size());
  if (w == 0) throw std::invalid_argument("krein_parameters: no idempotents");
  const std::size_t n = e[0].rows();
  KreinData<Mat> kp;
  for (const auto& m : e) {
    const int64_t mult = scalar_count(m.trace());
    if (mult <= 0) throw SpectralError("idempotent with trace " + std::to_string(mult));
    kp.multiplicities.push_back(mult);
  }
  kp.hadamard.resize(static_cast<std::size_t>(w * w));
  for (int i = 0; i < w; ++i) {
    for (int j = i; j < w; ++j) kp.hadamard[i * w + j] = e[i].hadamard(e[j]);
  }

  // trace((E_i o E_j) E_h) is the entry sum of E_i o E_j o E_h since E_h is symmetric.
  const S size = S(static_cast<int64_t>(n));
  kp.q.assign(static_cast<std::size_t>(w * w * w), S(0));
  for (int i = 0; i < w; ++i) {
    for (int j = i; j < w; ++j) {
      for (int h = 0; h < w; ++h) {
        const auto entries = kp.product(i, j).hadamard(e[h]).entries();
        S total = S(0);
        for (const auto& v : entries) total += v;
        const S val = size * total / S(kp.multiplicities[h]);
        kp.q[(h * w + i) * w + j] = val;
        kp.q[(h * w + j) * w + i] = val;
      }
    }
  }

  kp.expansion_holds = true;
  for (int i = 0; i < w && kp.expansion_holds; ++i) {
    for (int j = i; j < w; ++j) {
      Mat rhs(n, n, e[0].field());
      for (int h = 0; h < w; ++h) rhs += e[h] * kp.krein(h, i, j);
      if (!(kp.product(i, j) * size - rhs).is_zero()) {
        kp.expansion_holds = false;
        break;
      }
    }
  }
  if (!kp.expansion_holds) throw SpectralError("Krein expansion of E_i o E_j does not hold");

  kp.real_nonnegative = true;
  for (const auto& v : kp.q) kp.real_nonnegative = kp.real_nonnegative && real_nonnegative(v);
  return kp;
}

template <class Mat>
CheckResult check_self_dual(const IntersectionArray& arr, const KreinData<Mat>& kp) {
  const int d = kp.D();
  if (d != arr.D) return {false, "diameter " + std::to_string(arr.D) + " vs " + std::to_string(d) + " idempotents"};
  for (int h = 0; h <= d; ++h) {
    for (int i = 0; i <= d; ++i) {
      for (int j = 0; j <= d; ++j) {
        const auto diff = kp.krein(h, i, j) - ScalarOf<Mat>(arr.intersection(h, i, j));
        if (!scalar_zero(diff)) {
          return {false, "q^h_ij " + triple(h, i, j) + " = " + scalar_text(kp.krein(h, i, j)) + " but p = " +
                             std::to_string(arr.intersection(h, i, j))};
        }
      }
    }
  }
  return {};
}

template <class Mat>
CheckResult check_q_polynomial(const KreinData<Mat>& kp) {
  const int d = kp.D();
  for (int h = 0; h <= d; ++h) {
    for (int i = 0; i <= d; ++i) {
      for (int j = 0; j <= d; ++j) {
        const int big = std::max({h, i, j});
        const int rest = h + i + j - big;
        const bool zero = scalar_zero(kp.krein(h, i, j));
        if (big > rest && !zero) return {false, "q^h_ij " + triple(h, i, j) + " should vanish"};
        if (big == rest && zero) return {false, "q^h_ij " + triple(h, i, j) + " should be nonzero"};
      }
    }
  }
  return {};
}

template <class Mat>
Mat DualData<Mat>::estar(int i, int64_t field) const {
  std::size_t n = 0;
  for (const auto& s : spheres) n += s.size();
  std::vector<ScalarOf<Mat>> diag(n, ScalarOf<Mat>(0));
  for (std::size_t y : spheres[i]) diag[y] = ScalarOf<Mat>(1);
  return Mat::diagonal(diag, field);
}

template <class Mat>
Mat DualData<Mat>::astar_matrix(int i, int64_t field) const {
  return Mat::diagonal(astar[i], field);
}

template <class Mat>
DualData<Mat> dual_structures(const GraphData& g, const std::vector<Mat>& e, const KreinData<Mat>& kp,
                              std::size_t x) {
  using S = ScalarOf<Mat>;
  if (!g.has_distances()) throw std::invalid_argument("dual_structures: distances not computed");
  if (x >= g.n) throw std::invalid_argument("dual_structures: base vertex out of range");
  const int d = g.diameter;
  if (static_cast<int>(e.size()) != d + 1) throw std::invalid_argument("dual_structures: idempotent count");
  const std::size_t n = g.n;
  DualData<Mat> dual;
  dual.base = x;
  for (int i = 0; i <= d; ++i) dual.spheres.push_back(g.sphere(x, i));

  const S size = S(static_cast<int64_t>(n));
  for (int i = 0; i <= d; ++i) {
    std::vector<S> diag(n);
    for (std::size_t y = 0; y < n; ++y) diag[y] = size * e[i](x, y);
    dual.astar.push_back(std::move(diag));
  }
  for (std::size_t y = 0; y < n; ++y) {
    if (!scalar_zero(dual.astar[0][y] - S(1))) throw SpectralError("A*_0 != I");
  }

  // A*_1 is constant on each sphere; the constants are the dual eigenvalues.
  for (int i = 0; i <= d; ++i) {
    const S val = dual.astar[1][dual.spheres[i].front()];
    for (std::size_t y : dual.spheres[i]) {
      if (!scalar_zero(dual.astar[1][y] - val)) {
        throw SpectralError("A*_1 is not constant on the distance-" + std::to_string(i) + " sphere");
      }
    }
    dual.theta_star.push_back(val);
  }

  for (int i = 0; i <= d; ++i) {
    for (int j = i; j <= d; ++j) {
      for (std::size_t y = 0; y < n; ++y) {
        S rhs = S(0);
        for (int h = 0; h <= d; ++h) rhs += kp.krein(h, i, j) * dual.astar[h][y];
        if (!scalar_zero(dual.astar[i][y] * dual.astar[j][y] - rhs)) {
          throw SpectralError("A*_" + std::to_string(i) + " A*_" + std::to_string(j) +
                              " multiplication table fails at vertex " + std::to_string(y));
        }
      }
    }
  }
  dual.multiplication_holds = true;
  return dual;
}

template <class Mat>
TripleReport triple_product_checks(const GraphData& g, const IntersectionArray& arr, const KreinData<Mat>& kp,
                                   const DualData<Mat>& dual) {
  using S = ScalarOf<Mat>;
  const int d = arr.D;
  TripleReport rep;
  // E*_h A_i E*_j is the block of A_i with rows in sphere h, columns in sphere j.
  for (int h = 0; h <= d; ++h) {
    for (int i = 0; i <= d; ++i) {
      for (int j = 0; j <= d; ++j) {
        bool zero = true;
        for (std::size_t y : dual.spheres[h]) {
          for (std::size_t z : dual.spheres[j]) {
            if (g.distance(y, z) == i) {
              zero = false;
              break;
            }
          }
          if (!zero) break;
        }
        ++rep.checked;
        if (zero != (arr.intersection(h, i, j) == 0)) {
          rep.violations.push_back("E*_h A_i E*_j " + triple(h, i, j) + (zero ? " vanishes" : " is nonzero") +
                                   " but p^h_ij = " + std::to_string(arr.intersection(h, i, j)));
        }
      }
    }
  }
  // For real symmetric E: ||E_h A*_i E_j||_F^2 = conj(a)^t (E_h o E_j) a, a = diag(A*_i).
  const std::size_t n = g.n;
  const int64_t field = kp.product(0, 0).field();
  for (int i = 0; i <= d; ++i) {
    Mat a(n, 1, field);
    Mat ac(1, n, field);
    for (std::size_t y = 0; y < n; ++y) {
      a.set(y, 0, dual.astar[i][y]);
      ac.set(0, y, scalar_conj(dual.astar[i][y]));
    }
    for (int h = 0; h <= d; ++h) {
      for (int j = 0; j <= d; ++j) {
        const S norm2 = (ac * (kp.product(h, j) * a))(0, 0);
        bool zero = scalar_zero(norm2);
        if constexpr (!is_exact_backend<Mat>()) {
          zero = std::sqrt(std::abs(norm2)) <= FloatMatrix::residual_tolerance() * static_cast<double>(n);
        }
        ++rep.checked;
        if (zero != scalar_zero(kp.krein(h, i, j))) {
          rep.violations.push_back("E_h A*_i E_j " + triple(h, i, j) + (zero ? " vanishes" : " is nonzero") +
                                   " but q^h_ij = " + scalar_text(kp.krein(h, i, j)));
        }
      }
    }
  }
  return rep;
}

template <class Mat>
NormalizedPair<Mat> normalize_pair(const Mat& a1, const DualData<Mat>& dual, const std::vector<Mat>& e,
                                   const Eigenvalues& ev, const QuadScalar& q) {
  using S = ScalarOf<Mat>;
  const S a0 = lift<Mat>(ev.alpha0);
  const S inv = lift<Mat>(ev.alpha1.inverse());
  const int d = static_cast<int>(e.size()) - 1;
  NormalizedPair<Mat> out;
  out.a = a1.add_identity(-a0) * inv;
  for (const auto& v : dual.astar[1]) out.astar_diag.push_back((v - a0) * inv);

  for (int i = 0; i <= d; ++i) {
    const S lam = lift<Mat>(q.pow(d - 2 * i));
    const Mat r = out.a * e[i] - e[i] * lam;
    if (!r.is_zero()) throw SpectralError("(A - q^{D-2i} I) E_" + std::to_string(i) + " != 0: " + residual_text(r));
    for (std::size_t y : dual.spheres[i]) {
      if (!scalar_zero(out.astar_diag[y] - lam)) {
        throw SpectralError("(A* - q^{D-2i} I) E*_" + std::to_string(i) + " != 0 at vertex " + std::to_string(y));
      }
    }
  }
  out.eigen_relations_hold = true;
  return out;
}

template <class Mat>
Mat q_serre(const Mat& u, const Mat& v, const QuadScalar& q) {
  const auto c3 = Mat::lift(q_int(3, q));
  const Mat u2 = u * u;
  const Mat u3 = u2 * u;
  return u3 * v - (u2 * v * u) * c3 + (u * v * u2) * c3 - v * u3;
}

namespace {

/// q-Serre expression with v = diag(s): u^3 S - [3] u^2 S u + [3] u S u^2 - S u^3.
template <class Mat>
Mat q_serre_diag_right(const Mat& u, const std::vector<ScalarOf<Mat>>& s, const ScalarOf<Mat>& c3) {
  const Mat u2 = u * u;
  const Mat u3 = u2 * u;
  return scale_cols(u3, s) - (scale_cols(u2, s) * u) * c3 + (scale_cols(u, s) * u2) * c3 - u3.scale_rows(s);
}

/// q-Serre expression with u = diag(s): S^3 v - [3] S^2 v S + [3] S v S^2 - v S^3.
template <class Mat>
Mat q_serre_diag_left(const std::vector<ScalarOf<Mat>>& s, const Mat& v, const ScalarOf<Mat>& c3) {
  std::vector<ScalarOf<Mat>> s2, s3;
  for (const auto& x : s) {
    s2.push_back(x * x);
    s3.push_back(x * x * x);
  }
  return v.scale_rows(s3) - scale_cols(v.scale_rows(s2), s) * c3 + scale_cols(v.scale_rows(s), s2) * c3 -
         scale_cols(v, s3);
}

}  // namespace

template <class Mat>
SerreResidual<Mat> check_q_serre(const NormalizedPair<Mat>& pair, const QuadScalar& q) {
  const auto c3 = Mat::lift(q_int(3, q));
  return {q_serre_diag_right(pair.a, pair.astar_diag, c3), q_serre_diag_left(pair.astar_diag, pair.a, c3)};
}

#define DRGTET_INSTANTIATE_SPECTRAL(M)                                                                          \
  template std::vector<M> primitive_idempotents(const M&, const std::vector<QuadScalar>&);                     \
  template KreinData<M> krein_parameters(const std::vector<M>&);                                               \
  template CheckResult check_self_dual(const IntersectionArray&, const KreinData<M>&);                         \
  template CheckResult check_q_polynomial(const KreinData<M>&);                                                \
  template struct DualData<M>;                                                                                 \
  template DualData<M> dual_structures(const GraphData&, const std::vector<M>&, const KreinData<M>&,           \
                                       std::size_t);                                                           \
  template TripleReport triple_product_checks(const GraphData&, const IntersectionArray&, const KreinData<M>&, \
                                              const DualData<M>&);                                             \
  template NormalizedPair<M> normalize_pair(const M&, const DualData<M>&, const std::vector<M>&,               \
                                            const Eigenvalues&, const QuadScalar&);                            \
  template M q_serre(const M&, const M&, const QuadScalar&);                                                   \
  template SerreResidual<M> check_q_serre(const NormalizedPair<M>&, const QuadScalar&);

DRGTET_INSTANTIATE_SPECTRAL(ExactMatrix)
DRGTET_INSTANTIATE_SPECTRAL(FloatMatrix)

#undef DRGTET_INSTANTIATE_SPECTRAL

}  // namespace drgtet
