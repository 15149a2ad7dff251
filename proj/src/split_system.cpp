#include "drgtet/split_system.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace drgtet {

std::string pair_name(Dir eta, Dir mu) {
  std::string s;
  s += eta == Dir::Down ? 'd' : 'u';
  s += mu == Dir::Down ? 'd' : 'u';
  return s;
}

namespace {

Dir flip(Dir d) { return d == Dir::Down ? Dir::Up : Dir::Down; }

std::string where(Dir eta, Dir mu, int i, int j) {
  return pair_name(eta, mu) + " (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

template <class Mat>
FlagContext<Mat>::FlagContext(const std::vector<Mat>& e, const DualData<Mat>& dual)
    : d_(static_cast<int>(e.size()) - 1), n_(e.empty() ? 0 : e[0].rows()), field_(e.empty() ? 0 : e[0].field()) {
  if (d_ < 0 || static_cast<int>(dual.spheres.size()) != d_ + 1) {
    throw std::invalid_argument("FlagContext: idempotent and sphere counts differ");
  }
  for (Dir mu : {Dir::Down, Dir::Up}) {
    auto& out = ranges_[static_cast<int>(mu)];
    Mat acc(n_, n_, field_);
    for (int j = 0; j <= d_; ++j) {
      acc += e[mu == Dir::Down ? j : d_ - j];
      // The cumulative sum is symmetric, so its row and column spaces agree.
      out.push_back(j == d_ ? BasicSubspace<Mat>::full(n_, field_) : BasicSubspace<Mat>::row_span(acc));
    }
  }
  for (Dir eta : {Dir::Down, Dir::Up}) {
    auto& out = coords_[static_cast<int>(eta)];
    std::vector<std::size_t> acc;
    for (int i = 0; i <= d_; ++i) {
      const auto& s = dual.spheres[eta == Dir::Down ? i : d_ - i];
      acc.insert(acc.end(), s.begin(), s.end());
      std::vector<std::size_t> sorted = acc;
      std::sort(sorted.begin(), sorted.end());
      out.push_back(std::move(sorted));
    }
  }
}

template <class Mat>
const BasicSubspace<Mat>& FlagContext<Mat>::idempotent_sum(Dir mu, int j) const {
  return ranges_[static_cast<int>(mu)].at(static_cast<std::size_t>(j));
}

template <class Mat>
const std::vector<std::size_t>& FlagContext<Mat>::coordinates(Dir eta, int i) const {
  return coords_[static_cast<int>(eta)].at(static_cast<std::size_t>(i));
}

template <class Mat>
BasicSubspace<Mat> flag_subspace(const FlagContext<Mat>& ctx, Dir eta, Dir mu, int i, int j) {
  const int d = ctx.D();
  if (i < -1 || i > d || j < -1 || j > d) throw std::out_of_range("flag_subspace: index out of range");
  const std::size_t n = ctx.n();
  if (i == -1 || j == -1) return BasicSubspace<Mat>(n, ctx.field());
  if (i == d) return ctx.idempotent_sum(mu, j);
  const auto& coords = ctx.coordinates(eta, i);
  if (j == d) return BasicSubspace<Mat>::coordinate(n, coords, ctx.field());

  // The idempotents are mutually orthogonal, so the cumulative sum j is the
  // orthogonal complement of the opposite cumulative sum D - j - 1. A vector
  // supported on coords lies in it iff it is orthogonal to those rows.
  const Mat& comp = ctx.idempotent_sum(flip(mu), d - j - 1).rows();
  const Mat w = comp.conj().select_columns(coords).nullspace();
  if (w.cols() == 0) return BasicSubspace<Mat>(n, ctx.field());
  // Scatter the |coords| x k coefficients into n rows; index |coords| is a zero row.
  const Mat zero(1, w.cols(), w.field());
  const Mat padded = Mat::vconcat({&w, &zero});
  std::vector<std::size_t> map(n, coords.size());
  for (std::size_t t = 0; t < coords.size(); ++t) map[coords[t]] = t;
  return BasicSubspace<Mat>::span(padded.select_rows(map));
}

template <class Mat>
std::vector<std::vector<std::size_t>> SplitGrid<Mat>::dimensions() const {
  std::vector<std::vector<std::size_t>> out(D + 1, std::vector<std::size_t>(D + 1));
  for (int i = 0; i <= D; ++i) {
    for (int j = 0; j <= D; ++j) out[i][j] = tilde_at(i, j).dim();
  }
  return out;
}

template <class Mat>
SplitGrid<Mat> tilde_spaces(const FlagContext<Mat>& ctx, Dir eta, Dir mu) {
  const int d = ctx.D();
  const std::size_t n = ctx.n();
  SplitGrid<Mat> grid;
  grid.eta = eta;
  grid.mu = mu;
  grid.D = d;
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= d; ++j) grid.flags.push_back(flag_subspace(ctx, eta, mu, i, j));
  }
  const BasicSubspace<Mat> zero(n, ctx.field());
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= d; ++j) {
      const auto& up = i > 0 ? grid.flag(i - 1, j) : zero;
      const auto& left = j > 0 ? grid.flag(i, j - 1) : zero;
      const auto& cur = grid.flag(i, j);
      const auto pred = sum(up, left);
      if (!cur.contains(pred)) throw SplitError("flag containment fails at " + where(eta, mu, i, j));
      auto t = ortho_complement_within(pred, cur);
      if (t.dim() != cur.dim() - pred.dim()) throw SplitError("tilde dimension identity fails at " + where(eta, mu, i, j));
      grid.tilde.push_back(std::move(t));
    }
  }
  return grid;
}

template <class Mat>
std::optional<BlockDecomposition<Mat>> decompose(const SplitGrid<Mat>& grid) {
  try {
    return BlockDecomposition<Mat>(grid.tilde);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

template <class Mat>
bool verify_direct_sum(const SplitGrid<Mat>& grid) {
  if (grid.tilde.empty()) return false;
  const std::size_t n = grid.tilde.front().ambient();
  std::size_t total = 0;
  std::vector<const Mat*> parts;
  for (const auto& t : grid.tilde) {
    total += t.dim();
    if (!t.is_zero()) parts.push_back(&t.rows());
  }
  if (total != n) return false;
  return Mat::vconcat(parts).rank() == n;
}

template <class Mat>
SplitSystem<Mat> build_split_system(const FlagContext<Mat>& ctx) {
  SplitSystem<Mat> sys;
  sys.D = ctx.D();
  for (Dir eta : {Dir::Down, Dir::Up}) {
    for (Dir mu : {Dir::Down, Dir::Up}) {
      const int k = 2 * static_cast<int>(eta) + static_cast<int>(mu);
      sys.grids[k] = tilde_spaces(ctx, eta, mu);
      sys.blocks[k] = decompose(sys.grids[k]);
    }
  }
  return sys;
}

QuadScalar split_scalar_B(const QuadScalar& q, int, int i, int j) { return q.pow(i - j); }
QuadScalar split_scalar_Bstar(const QuadScalar& q, int, int i, int j) { return q.pow(j - i); }
QuadScalar split_scalar_K(const QuadScalar& q, int, int i, int j) { return q.pow(i - j); }
QuadScalar split_scalar_Kstar(const QuadScalar& q, int, int i, int j) { return q.pow(i - j); }
QuadScalar split_scalar_Phi(const QuadScalar& q, int D, int i, int j) { return q.pow(i + j - D); }
QuadScalar split_scalar_Psi(const QuadScalar& q, int D, int i, int j) { return q.pow(i + j - D); }

namespace {

using ScalarRule = QuadScalar (*)(const QuadScalar&, int, int, int);

template <class Mat>
Mat assemble_checked(const SplitSystem<Mat>& sys, Dir eta, Dir mu, ScalarRule rule, const QuadScalar& q,
                     bool inverted, const char* name) {
  const auto& dec = sys.decomposition(eta, mu);
  if (!dec) throw SplitError(std::string(name) + ": the " + pair_name(eta, mu) + " tilde spaces are not a direct sum");
  const int d = sys.D;
  std::vector<ScalarOf<Mat>> scalars;
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= d; ++j) {
      const QuadScalar s = rule(q, d, i, j);
      scalars.push_back(Mat::lift(inverted ? s.inverse() : s));
    }
  }
  Mat m = dec->assemble(scalars);
  // M U = U diag(scalars): each block basis is scaled by its scalar.
  const Mat& u = dec->change_of_basis();
  std::vector<ScalarOf<Mat>> expanded;
  for (std::size_t k = 0; k < scalars.size(); ++k) expanded.insert(expanded.end(), dec->block(k).dim(), scalars[k]);
  const Mat r = m * u - scale_cols(u, expanded);
  if (!r.is_zero()) throw SplitError(std::string(name) + " does not act by its block scalars: " + residual_text(r));
  return m;
}

}  // namespace

template <class Mat>
SplitMatrices<Mat> split_matrices(const SplitSystem<Mat>& sys, const QuadScalar& q) {
  SplitMatrices<Mat> sm;
  sm.B = assemble_checked(sys, Dir::Down, Dir::Up, split_scalar_B, q, false, "B");
  sm.Bstar = assemble_checked(sys, Dir::Up, Dir::Down, split_scalar_Bstar, q, false, "B*");
  sm.K = assemble_checked(sys, Dir::Down, Dir::Down, split_scalar_K, q, false, "K");
  sm.Kstar = assemble_checked(sys, Dir::Up, Dir::Up, split_scalar_Kstar, q, false, "K*");
  sm.Phi = assemble_checked(sys, Dir::Down, Dir::Down, split_scalar_Phi, q, false, "Phi");
  sm.Psi = assemble_checked(sys, Dir::Down, Dir::Up, split_scalar_Psi, q, false, "Psi");
  sm.K_inv = assemble_checked(sys, Dir::Down, Dir::Down, split_scalar_K, q, true, "K^-1");
  sm.Kstar_inv = assemble_checked(sys, Dir::Up, Dir::Up, split_scalar_Kstar, q, true, "K*^-1");
  sm.Phi_inv = assemble_checked(sys, Dir::Down, Dir::Down, split_scalar_Phi, q, true, "Phi^-1");
  sm.Psi_inv = assemble_checked(sys, Dir::Down, Dir::Up, split_scalar_Psi, q, true, "Psi^-1");
  return sm;
}

#define DRGTET_INSTANTIATE_SPLIT(M)                                                           \
  template class FlagContext<M>;                                                              \
  template struct SplitGrid<M>;                                                               \
  template BasicSubspace<M> flag_subspace(const FlagContext<M>&, Dir, Dir, int, int);         \
  template SplitGrid<M> tilde_spaces(const FlagContext<M>&, Dir, Dir);                        \
  template std::optional<BlockDecomposition<M>> decompose(const SplitGrid<M>&);               \
  template bool verify_direct_sum(const SplitGrid<M>&);                                       \
  template SplitSystem<M> build_split_system(const FlagContext<M>&);                          \
  template SplitMatrices<M> split_matrices(const SplitSystem<M>&, const QuadScalar&);

DRGTET_INSTANTIATE_SPLIT(ExactMatrix)
DRGTET_INSTANTIATE_SPLIT(FloatMatrix)

#undef DRGTET_INSTANTIATE_SPLIT

}  // namespace drgtet
