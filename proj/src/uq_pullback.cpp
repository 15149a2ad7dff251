#include "drgtet/uq_pullback.hpp"

#include <string>

namespace drgtet {

namespace {

struct Recorder {
  RelationReport rep;

  template <class Mat>
  void add(const std::string& id, const std::string& kind, const std::string& statement, const Mat& residual) {
    rep.records.push_back({id, kind, statement, residual.is_zero(), residual_text(residual)});
  }
};

std::string idx(int j) { return std::to_string(j); }

}  // namespace

template <class Mat>
UqAction<Mat> pullback(const QTetAction<Mat>& act, int i) {
  UqAction<Mat> u;
  u.index = ((i % 4) + 4) % 4;
  u.q = act.q;
  const int a = u.index;
  u.x[1] = act.at(a, a + 2);
  u.x_inv[1] = act.at(a + 2, a);
  u.y[1] = act.at(a + 2, a + 3);
  u.z[1] = act.at(a + 3, a);
  u.x[0] = act.at(a + 2, a);
  u.x_inv[0] = act.at(a, a + 2);
  u.y[0] = act.at(a, a + 1);
  u.z[0] = act.at(a + 1, a + 2);
  derive_chevalley(u);
  return u;
}

template <class Mat>
void derive_chevalley(UqAction<Mat>& u) {
  const QuadScalar& q = u.q;
  const QuadScalar diff = q - q.inverse();
  const auto plus_scale = Mat::lift((q * diff * diff).inverse());
  const std::size_t n = u.x[0].rows();
  const Mat id = Mat::identity(n, u.x[0].field());
  for (int j = 0; j < 2; ++j) {
    u.K[j] = u.x[j];
    u.K_inv[j] = u.x_inv[j];
    u.e_minus[j] = u.y[j] - u.x_inv[j];
    u.e_plus[j] = (id - u.x[j] * u.z[j]) * plus_scale;
  }
}

template <class Mat>
std::array<std::pair<Mat, Mat>, 2> equitable_from_chevalley(const UqAction<Mat>& u) {
  const QuadScalar& q = u.q;
  const QuadScalar diff = q - q.inverse();
  const auto scale = Mat::lift(q * diff * diff);
  std::array<std::pair<Mat, Mat>, 2> out;
  for (int j = 0; j < 2; ++j) {
    out[j].first = u.K_inv[j] + u.e_minus[j];
    out[j].second = u.K_inv[j] - (u.K_inv[j] * u.e_plus[j]) * scale;
  }
  return out;
}

template <class Mat>
RelationReport verify_uq_equitable(const UqAction<Mat>& u) {
  const std::size_t n = u.x[0].rows();
  const Mat id = Mat::identity(n, u.x[0].field());
  Recorder r;
  for (int j = 0; j < 2; ++j) {
    r.add("x" + idx(j) + "-inverse", "inverse", "x" + idx(j) + " x" + idx(j) + "^-1 = 1", u.x[j] * u.x_inv[j] - id);
    r.add("x" + idx(j) + "-inverse'", "inverse", "x" + idx(j) + "^-1 x" + idx(j) + " = 1", u.x_inv[j] * u.x[j] - id);
  }
  const Mat central = u.x[0] * u.x[1];
  r.add("x0x1-identity", "structure", "x0 x1 = 1 in this realization", central - id);
  const std::pair<const char*, const Mat*> gens[] = {{"x0", &u.x[0]}, {"x1", &u.x[1]}, {"y0", &u.y[0]},
                                                     {"y1", &u.y[1]}, {"z0", &u.z[0]}, {"z1", &u.z[1]}};
  for (const auto& [name, g] : gens) {
    r.add(std::string("central-") + name, "central", std::string("[x0 x1, ") + name + "] = 0",
          central * (*g) - (*g) * central);
  }
  for (int j = 0; j < 2; ++j) {
    const std::string s = idx(j);
    r.add("weyl-xy" + s, "q-weyl", "(q x" + s + " y" + s + " - q^-1 y" + s + " x" + s + ") / (q - q^-1) = 1",
          q_weyl_residual(u.x[j], u.y[j], id, u.q));
    r.add("weyl-yz" + s, "q-weyl", "(q y" + s + " z" + s + " - q^-1 z" + s + " y" + s + ") / (q - q^-1) = 1",
          q_weyl_residual(u.y[j], u.z[j], id, u.q));
    r.add("weyl-zx" + s, "q-weyl", "(q z" + s + " x" + s + " - q^-1 x" + s + " z" + s + ") / (q - q^-1) = 1",
          q_weyl_residual(u.z[j], u.x[j], id, u.q));
  }
  const Mat mixed_rhs = u.x_inv[0] * u.x_inv[1];
  for (int j = 0; j < 2; ++j) {
    const int k = 1 - j;
    const std::string s = idx(j), t = idx(k);
    r.add("mixed-z" + s + "y" + t, "q-weyl",
          "(q z" + s + " y" + t + " - q^-1 y" + t + " z" + s + ") / (q - q^-1) = x0^-1 x1^-1",
          q_weyl_residual(u.z[j], u.y[k], mixed_rhs, u.q));
  }
  for (int j = 0; j < 2; ++j) {
    const int k = 1 - j;
    r.add("serre-y" + idx(j) + "y" + idx(k), "q-serre", "q-Serre relation in (y" + idx(j) + ", y" + idx(k) + ")",
          q_serre(u.y[j], u.y[k], u.q));
    r.add("serre-z" + idx(j) + "z" + idx(k), "q-serre", "q-Serre relation in (z" + idx(j) + ", z" + idx(k) + ")",
          q_serre(u.z[j], u.z[k], u.q));
  }
  return r.rep;
}

template <class Mat>
RelationReport verify_uq_chevalley(const UqAction<Mat>& u) {
  const std::size_t n = u.x[0].rows();
  const Mat id = Mat::identity(n, u.x[0].field());
  const QuadScalar& q = u.q;
  const auto q2 = Mat::lift(q.pow(2));
  const auto qm2 = Mat::lift(q.pow(-2));
  const auto inv_diff = Mat::lift((q - q.inverse()).inverse());
  Recorder r;
  for (int j = 0; j < 2; ++j) {
    const std::string s = idx(j);
    r.add("K" + s + "-inverse", "inverse", "K" + s + " K" + s + "^-1 = 1", u.K[j] * u.K_inv[j] - id);
    r.add("K" + s + "-inverse'", "inverse", "K" + s + "^-1 K" + s + " = 1", u.K_inv[j] * u.K[j] - id);
  }
  r.add("K0K1-commute", "commute", "K0 K1 = K1 K0", u.K[0] * u.K[1] - u.K[1] * u.K[0]);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const std::string s = idx(j), t = idx(k);
      // K_j e_k^+ K_j^-1 = q^{2} e_k^+ for j = k, q^{-2} otherwise; e^- the reverse.
      const auto up = j == k ? q2 : qm2;
      const auto down = j == k ? qm2 : q2;
      r.add("K" + s + "e" + t + "+", "conjugation", "K" + s + " e" + t + "^+ K" + s + "^-1 = q^" +
                                                         (j == k ? "2" : "-2") + " e" + t + "^+",
            u.K[j] * u.e_plus[k] * u.K_inv[j] - u.e_plus[k] * up);
      r.add("K" + s + "e" + t + "-", "conjugation", "K" + s + " e" + t + "^- K" + s + "^-1 = q^" +
                                                         (j == k ? "-2" : "2") + " e" + t + "^-",
            u.K[j] * u.e_minus[k] * u.K_inv[j] - u.e_minus[k] * down);
    }
  }
  for (int j = 0; j < 2; ++j) {
    const std::string s = idx(j);
    r.add("bracket-e" + s, "bracket", "[e" + s + "^+, e" + s + "^-] = (K" + s + " - K" + s + "^-1) / (q - q^-1)",
          u.e_plus[j] * u.e_minus[j] - u.e_minus[j] * u.e_plus[j] - (u.K[j] - u.K_inv[j]) * inv_diff);
  }
  r.add("bracket-e0+e1-", "bracket", "[e0^+, e1^-] = 0", u.e_plus[0] * u.e_minus[1] - u.e_minus[1] * u.e_plus[0]);
  r.add("bracket-e0-e1+", "bracket", "[e0^-, e1^+] = 0", u.e_minus[0] * u.e_plus[1] - u.e_plus[1] * u.e_minus[0]);
  for (int j = 0; j < 2; ++j) {
    const int k = 1 - j;
    const std::string s = idx(j), t = idx(k);
    r.add("serre-e" + s + "+e" + t + "+", "q-serre", "q-Serre relation in (e" + s + "^+, e" + t + "^+)",
          q_serre(u.e_plus[j], u.e_plus[k], q));
    r.add("serre-e" + s + "-e" + t + "-", "q-serre", "q-Serre relation in (e" + s + "^-, e" + t + "^-)",
          q_serre(u.e_minus[j], u.e_minus[k], q));
  }
  return r.rep;
}

template <class Mat>
RelationReport verify_uq_sl2(const UqAction<Mat>& u) {
  const std::size_t n = u.x[1].rows();
  const Mat id = Mat::identity(n, u.x[1].field());
  Recorder r;
  r.add("sl2-inverse", "inverse", "x x^-1 = 1", u.x[1] * u.x_inv[1] - id);
  r.add("sl2-inverse'", "inverse", "x^-1 x = 1", u.x_inv[1] * u.x[1] - id);
  r.add("sl2-weyl-xy", "q-weyl", "(q x y - q^-1 y x) / (q - q^-1) = 1", q_weyl_residual(u.x[1], u.y[1], id, u.q));
  r.add("sl2-weyl-yz", "q-weyl", "(q y z - q^-1 z y) / (q - q^-1) = 1", q_weyl_residual(u.y[1], u.z[1], id, u.q));
  r.add("sl2-weyl-zx", "q-weyl", "(q z x - q^-1 x z) / (q - q^-1) = 1", q_weyl_residual(u.z[1], u.x[1], id, u.q));
  return r.rep;
}

template <class Mat>
bool chevalley_round_trip(const UqAction<Mat>& u) {
  const auto back = equitable_from_chevalley(u);
  for (int j = 0; j < 2; ++j) {
    if (!(back[j].first == u.y[j]) || !(back[j].second == u.z[j])) return false;
  }
  return true;
}

#define DRGTET_INSTANTIATE_UQ(M)                                                        \
  template UqAction<M> pullback(const QTetAction<M>&, int);                             \
  template void derive_chevalley(UqAction<M>&);                                         \
  template std::array<std::pair<M, M>, 2> equitable_from_chevalley(const UqAction<M>&); \
  template RelationReport verify_uq_equitable(const UqAction<M>&);                      \
  template RelationReport verify_uq_chevalley(const UqAction<M>&);                      \
  template RelationReport verify_uq_sl2(const UqAction<M>&);                            \
  template bool chevalley_round_trip(const UqAction<M>&);

DRGTET_INSTANTIATE_UQ(ExactMatrix)
DRGTET_INSTANTIATE_UQ(FloatMatrix)

#undef DRGTET_INSTANTIATE_UQ

}  // namespace drgtet
