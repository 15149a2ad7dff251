#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "drgtet/spectral.hpp"
#include "drgtet/subspace.hpp"

namespace drgtet {

class SplitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Direction of a flag: down sums from index 0, up sums from index D.
enum class Dir { Down = 0, Up = 1 };

inline const char* dir_name(Dir d) { return d == Dir::Down ? "down" : "up"; }
/// Two-letter tag of an (eta, mu) pair, e.g. "du" for down-up.
std::string pair_name(Dir eta, Dir mu);

/// Cached pieces shared by the four flag systems: the cumulative sums
/// E_0V + ... + E_jV (down) and E_DV + ... + E_{D-j}V (up), and the index
/// sets of vertices at distance <= i (down) or >= D - i (up) from the base.
template <class Mat>
class FlagContext {
 public:
  FlagContext(const std::vector<Mat>& e, const DualData<Mat>& dual);

  [[nodiscard]] int D() const noexcept { return d_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] int64_t field() const noexcept { return field_; }
  /// Column space of the cumulative idempotent sum, 0 <= j <= D.
  [[nodiscard]] const BasicSubspace<Mat>& idempotent_sum(Dir mu, int j) const;
  /// Vertices in the cumulative dual sum, 0 <= i <= D, sorted.
  [[nodiscard]] const std::vector<std::size_t>& coordinates(Dir eta, int i) const;

 private:
  int d_ = 0;
  std::size_t n_ = 0;
  int64_t field_ = 0;
  std::array<std::vector<BasicSubspace<Mat>>, 2> ranges_;
  std::array<std::vector<std::vector<std::size_t>>, 2> coords_;
};

/// V^{eta mu}_{i,j} = (cumulative dual sum i) ∩ (cumulative idempotent sum j),
/// zero when i = -1 or j = -1. Throws std::out_of_range outside -1..D.
template <class Mat>
BasicSubspace<Mat> flag_subspace(const FlagContext<Mat>& ctx, Dir eta, Dir mu, int i, int j);

template <class Mat>
struct SplitGrid {
  Dir eta = Dir::Down;
  Dir mu = Dir::Down;
  int D = 0;
  std::vector<BasicSubspace<Mat>> flags;  ///< V_{i,j}, index i * (D+1) + j
  std::vector<BasicSubspace<Mat>> tilde;  ///< (V_{i-1,j} + V_{i,j-1})^⊥ ∩ V_{i,j}

  [[nodiscard]] const BasicSubspace<Mat>& flag(int i, int j) const { return flags[i * (D + 1) + j]; }
  [[nodiscard]] const BasicSubspace<Mat>& tilde_at(int i, int j) const { return tilde[i * (D + 1) + j]; }
  /// dim of the tilde spaces, row i, column j.
  [[nodiscard]] std::vector<std::vector<std::size_t>> dimensions() const;
};

/// Computes every flag V_{i,j} and its tilde space, checking the dimension
/// identity dim Ṽ = dim V_{i,j} - dim(V_{i-1,j} + V_{i,j-1}).
/// Throws SplitError on a containment or dimension violation.
template <class Mat>
SplitGrid<Mat> tilde_spaces(const FlagContext<Mat>& ctx, Dir eta, Dir mu);

/// Block decomposition from the tilde spaces in lexicographic (i, j) order,
/// or nullopt when their dimensions do not sum to |X| or they are dependent.
template <class Mat>
std::optional<BlockDecomposition<Mat>> decompose(const SplitGrid<Mat>& grid);

/// True iff the tilde spaces form a direct sum equal to the whole space.
template <class Mat>
bool verify_direct_sum(const SplitGrid<Mat>& grid);

template <class Mat>
struct SplitSystem {
  int D = 0;
  /// Indexed by 2 * eta + mu.
  std::array<SplitGrid<Mat>, 4> grids;
  std::array<std::optional<BlockDecomposition<Mat>>, 4> blocks;

  [[nodiscard]] const SplitGrid<Mat>& grid(Dir eta, Dir mu) const {
    return grids[2 * static_cast<int>(eta) + static_cast<int>(mu)];
  }
  [[nodiscard]] const std::optional<BlockDecomposition<Mat>>& decomposition(Dir eta, Dir mu) const {
    return blocks[2 * static_cast<int>(eta) + static_cast<int>(mu)];
  }
  [[nodiscard]] bool direct_sums_hold() const {
    for (const auto& b : blocks) {
      if (!b) return false;
    }
    return true;
  }
};

template <class Mat>
SplitSystem<Mat> build_split_system(const FlagContext<Mat>& ctx);

template <class Mat>
struct SplitMatrices {
  Mat B, Bstar, K, Kstar, Phi, Psi;
  /// Inverses, assembled from the inverted block scalars.
  Mat K_inv, Kstar_inv, Phi_inv, Psi_inv;
};

/// Block scalar of each operator on the tilde space (i, j).
QuadScalar split_scalar_B(const QuadScalar& q, int D, int i, int j);
QuadScalar split_scalar_Bstar(const QuadScalar& q, int D, int i, int j);
QuadScalar split_scalar_K(const QuadScalar& q, int D, int i, int j);
QuadScalar split_scalar_Kstar(const QuadScalar& q, int D, int i, int j);
QuadScalar split_scalar_Phi(const QuadScalar& q, int D, int i, int j);
QuadScalar split_scalar_Psi(const QuadScalar& q, int D, int i, int j);

/// B (down-up, q^{i-j}), B* (up-down, q^{j-i}), K (down-down, q^{i-j}),
/// K* (up-up, q^{i-j}), Phi (down-down, q^{i+j-D}), Psi (down-up, q^{i+j-D}).
/// Re-verifies that each operator acts by its scalar on every tilde block.
/// Throws SplitError if a direct sum failed or a block check fails.
template <class Mat>
SplitMatrices<Mat> split_matrices(const SplitSystem<Mat>& sys, const QuadScalar& q);

}  // namespace drgtet
