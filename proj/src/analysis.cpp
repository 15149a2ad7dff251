#include "drgtet/analysis.hpp"

#include <map>
#include <random>
#include <tuple>

namespace drgtet {

template <class Mat>
std::vector<CommutatorRecord> check_centrality(const SplitMatrices<Mat>& sm, const NormalizedPair<Mat>& pair) {
  std::vector<CommutatorRecord> out;
  auto add = [&](const std::string& id, const Mat& r) { out.push_back({id, r.is_zero(), residual_text(r)}); };
  for (const auto& [name, m] : {std::pair<const char*, const Mat*>{"Phi", &sm.Phi}, {"Psi", &sm.Psi}}) {
    add(std::string("[") + name + ",A]", (*m) * pair.a - pair.a * (*m));
    add(std::string("[") + name + ",A*]", scale_cols(*m, pair.astar_diag) - m->scale_rows(pair.astar_diag));
  }
  return out;
}

template <class Mat>
bool check_psi_identity(const SplitMatrices<Mat>& sm) {
  return sm.Psi.is_identity();
}

template <class Mat>
std::vector<ConjectureRecord> conjecture_transpose(const SplitMatrices<Mat>& sm, bool conjugate_variants) {
  std::vector<ConjectureRecord> out;
  struct Item {
    const char* id;
    const char* statement;
    const Mat* lhs;
    const Mat* rhs;
  };
  const Item items[] = {{"Phi-symmetric", "Phi^t = Phi", &sm.Phi, &sm.Phi},
                        {"Psi-symmetric", "Psi^t = Psi", &sm.Psi, &sm.Psi},
                        {"B-transpose", "B^t = B*", &sm.B, &sm.Bstar},
                        {"K-transpose", "K^t = K*^-1", &sm.K, &sm.Kstar_inv}};
  for (int pass = 0; pass < (conjugate_variants ? 2 : 1); ++pass) {
    for (const auto& it : items) {
      const Mat t = pass == 0 ? it.lhs->transpose() : it.lhs->transpose().conj();
      const Mat r = t - *it.rhs;
      ConjectureRecord rec;
      rec.id = pass == 0 ? it.id : std::string(it.id) + "-conjugate";
      rec.statement = it.statement;
      if (pass == 1) {
        rec.statement.replace(rec.statement.find("^t"), 2, "^H");
      }
      rec.observed_pass = r.is_zero();
      if (!rec.observed_pass) rec.witness = residual_text(r);
      rec.supplementary = pass == 1;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

template <class Mat>
OrthogonalityReport conjecture_orthogonality(const SplitSystem<Mat>& sys) {
  const int d = sys.D;
  const int w = d + 1;
  OrthogonalityReport rep;
  const std::pair<Dir, Dir> firsts[] = {{Dir::Down, Dir::Down}, {Dir::Down, Dir::Up}};
  for (const auto& [eta, mu] : firsts) {
    const Dir eta2 = eta == Dir::Down ? Dir::Up : Dir::Down;
    const Dir mu2 = mu == Dir::Down ? Dir::Up : Dir::Down;
    const auto& ga = sys.grid(eta, mu);
    const auto& gb = sys.grid(eta2, mu2);
    const std::string label = pair_name(eta, mu) + "/" + pair_name(eta2, mu2);
    // One Gram matrix for all block pairs: rows of a against conjugated rows of b.
    std::vector<const Mat*> ra, rb;
    std::vector<std::size_t> offa(w * w + 1, 0), offb(w * w + 1, 0);
    for (int k = 0; k < w * w; ++k) {
      if (!ga.tilde[k].is_zero()) ra.push_back(&ga.tilde[k].rows());
      if (!gb.tilde[k].is_zero()) rb.push_back(&gb.tilde[k].rows());
      offa[k + 1] = offa[k] + ga.tilde[k].dim();
      offb[k + 1] = offb[k] + gb.tilde[k].dim();
    }
    if (ra.empty() || rb.empty()) continue;
    const Mat gram = Mat::vconcat(ra) * Mat::vconcat(rb).conj().transpose();
    for (int i = 0; i < w; ++i) {
      for (int j = 0; j < w; ++j) {
        for (int r = 0; r < w; ++r) {
          for (int s = 0; s < w; ++s) {
            const int ka = i * w + j, kb = r * w + s;
            if (ga.tilde[ka].is_zero() || gb.tilde[kb].is_zero()) continue;
            if (i + r == d && j + s == d) {
              ++rep.pairs_exempt;
              continue;
            }
            ++rep.pairs_checked;
            std::vector<std::size_t> rows, cols;
            for (std::size_t t = offa[ka]; t < offa[ka + 1]; ++t) rows.push_back(t);
            for (std::size_t t = offb[kb]; t < offb[kb + 1]; ++t) cols.push_back(t);
            const Mat block = gram.select_rows(rows).select_columns(cols);
            if (!block.is_zero()) rep.violations.push_back({label, i, j, r, s, residual_text(block)});
          }
        }
      }
    }
  }
  return rep;
}

template <class Mat>
PatternTable entry_pattern_report(const Mat& m, const std::string& name, const GraphData& g, std::size_t x,
                                  std::size_t max_pairs, uint64_t seed) {
  PatternTable t;
  t.matrix = name;
  t.seed = seed;
  const std::size_t n = g.n;
  std::map<std::tuple<int, int, int>, std::pair<PatternClass, ScalarOf<Mat>>> classes;
  auto visit = [&](std::size_t y, std::size_t z) {
    const auto key = std::make_tuple(g.distance(x, y), g.distance(y, z), g.distance(z, x));
    const ScalarOf<Mat> v = m(y, z);
    auto it = classes.find(key);
    if (it == classes.end()) {
      PatternClass c;
      std::tie(c.xy, c.yz, c.zx) = key;
      c.samples = 1;
      c.value = scalar_text(v);
      classes.emplace(key, std::make_pair(c, v));
      return;
    }
    auto& [c, first] = it->second;
    ++c.samples;
    if (c.constant && !scalar_zero(v - first)) c.constant = false;
  };
  if (n * n <= max_pairs) {
    t.exhaustive = true;
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) visit(y, z);
    }
    t.pairs = n * n;
  } else {
    t.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < max_pairs; ++k) {
      const std::size_t y = pick(rng);
      const std::size_t z = pick(rng);
      visit(y, z);
    }
    t.pairs = max_pairs;
  }
  for (auto& [key, val] : classes) t.classes.push_back(val.first);
  return t;
}

template <class Mat>
PhiPsiSpectrum phi_psi_spectrum(const SplitSystem<Mat>& sys, const QuadScalar& q) {
  const int d = sys.D;
  auto read = [&](Dir eta, Dir mu) {
    std::map<int, std::size_t> mult;
    const auto& grid = sys.grid(eta, mu);
    for (int i = 0; i <= d; ++i) {
      for (int j = 0; j <= d; ++j) {
        if (grid.tilde_at(i, j).dim() > 0) mult[i + j - d] += grid.tilde_at(i, j).dim();
      }
    }
    std::vector<SpectrumEntry> out;
    for (const auto& [e, k] : mult) out.push_back({e, q.pow(e).str(), k});
    return out;
  };
  return {read(Dir::Down, Dir::Down), read(Dir::Down, Dir::Up)};
}

#define DRGTET_INSTANTIATE_ANALYSIS(M)                                                                         \
  template std::vector<CommutatorRecord> check_centrality(const SplitMatrices<M>&, const NormalizedPair<M>&); \
  template bool check_psi_identity(const SplitMatrices<M>&);                                                  \
  template std::vector<ConjectureRecord> conjecture_transpose(const SplitMatrices<M>&, bool);                 \
  template OrthogonalityReport conjecture_orthogonality(const SplitSystem<M>&);                               \
  template PatternTable entry_pattern_report(const M&, const std::string&, const GraphData&, std::size_t,     \
                                             std::size_t, uint64_t);                                          \
  template PhiPsiSpectrum phi_psi_spectrum(const SplitSystem<M>&, const QuadScalar&);

DRGTET_INSTANTIATE_ANALYSIS(ExactMatrix)
DRGTET_INSTANTIATE_ANALYSIS(FloatMatrix)

#undef DRGTET_INSTANTIATE_ANALYSIS

}  // namespace drgtet
