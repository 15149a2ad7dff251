#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drgtet/graph.hpp"
#include "drgtet/spectral.hpp"
#include "drgtet/split_system.hpp"

namespace drgtet {

/// One commutator check; zero means the two matrices commute.
struct CommutatorRecord {
  std::string id;  ///< e.g. "[Phi,A]"
  bool zero = false;
  std::string residual;
};

/// [Phi, A], [Phi, A*], [Psi, A], [Psi, A*]. Since A and A* generate the
/// subconstituent algebra T, all four vanishing places Phi and Psi in Z(T).
template <class Mat>
std::vector<CommutatorRecord> check_centrality(const SplitMatrices<Mat>& sm, const NormalizedPair<Mat>& pair);

template <class Mat>
bool check_psi_identity(const SplitMatrices<Mat>& sm);

/// Outcome of one conjectured identity on one graph. Conjectures are only
/// observed to pass or fail; a failure carries a witness.
struct ConjectureRecord {
  std::string id;
  std::string statement;
  bool observed_pass = false;
  std::string witness;
  bool supplementary = false;  ///< extra data beyond the conjecture statement
};

/// Phi^t = Phi, Psi^t = Psi, B^t = B*, K^t = K*^-1 with plain transposes.
/// When conjugate_variants is set, also records the same identities with
/// conjugate transposes, marked supplementary.
template <class Mat>
std::vector<ConjectureRecord> conjecture_transpose(const SplitMatrices<Mat>& sm, bool conjugate_variants);

/// A pair of tilde blocks that is not orthogonal although the conjecture says
/// it should be.
struct OrthogonalityViolation {
  std::string systems;  ///< "dd/uu" or "du/ud"
  int i = 0, j = 0, r = 0, s = 0;
  std::string witness;
};

struct OrthogonalityReport {
  std::size_t pairs_checked = 0;
  std::size_t pairs_exempt = 0;
  std::vector<OrthogonalityViolation> violations;
  [[nodiscard]] bool observed_pass() const { return violations.empty(); }
};

/// Tilde blocks dd(i,j) and uu(r,s), and du(i,j) and ud(r,s), are checked for
/// orthogonality under u^t conj(v) unless i + r = D and j + s = D.
template <class Mat>
OrthogonalityReport conjecture_orthogonality(const SplitSystem<Mat>& sys);

/// Entries of M grouped by (d(x,y), d(y,z), d(z,x)).
struct PatternClass {
  int xy = 0, yz = 0, zx = 0;
  std::size_t samples = 0;
  bool constant = true;
  std::string value;  ///< the common value when constant, else the first seen
};

struct PatternTable {
  std::string matrix;
  bool exhaustive = true;
  uint64_t seed = 0;
  std::size_t pairs = 0;
  std::vector<PatternClass> classes;  ///< sorted by (xy, yz, zx)
};

/// Enumerates all (y, z) when n^2 <= max_pairs, else draws max_pairs pairs
/// uniformly with a seeded generator.
template <class Mat>
PatternTable entry_pattern_report(const Mat& m, const std::string& name, const GraphData& g, std::size_t x,
                                  std::size_t max_pairs, uint64_t seed);

struct SpectrumEntry {
  int exponent = 0;     ///< eigenvalue q^exponent
  std::string value;
  std::size_t multiplicity = 0;
};

struct PhiPsiSpectrum {
  std::vector<SpectrumEntry> phi;  ///< sorted by exponent
  std::vector<SpectrumEntry> psi;
};

/// Eigenvalue multiplicities of Phi (dd grid) and Psi (du grid), read off the
/// block assembly: q^{i+j-D} with multiplicity dim of the tilde block.
template <class Mat>
PhiPsiSpectrum phi_psi_spectrum(const SplitSystem<Mat>& sys, const QuadScalar& q);

}  // namespace drgtet
