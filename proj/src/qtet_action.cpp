#include "drgtet/qtet_action.hpp"

#include <stdexcept>
#include <string>

namespace drgtet {

namespace {

int mod4(int v) { return ((v % 4) + 4) % 4; }

}  // namespace

bool is_qtet_generator(int i, int j) {
  const int d = mod4(j - i);
  return d == 1 || d == 2;
}

std::string qtet_generator_name(int i, int j) {
  return "x" + std::to_string(mod4(i)) + std::to_string(mod4(j));
}

template <class Mat>
const Mat& QTetAction<Mat>::at(int i, int j) const {
  if (!is_qtet_generator(i, j)) throw std::invalid_argument(qtet_generator_name(i, j) + " is not a generator");
  return x[4 * mod4(i) + mod4(j)];
}

template <class Mat>
QTetAction<Mat> assemble_action(const NormalizedPair<Mat>& pair, const SplitMatrices<Mat>& sm, const QuadScalar& q) {
  QTetAction<Mat> act;
  act.q = q;
  const Mat phi_psi = sm.Phi * sm.Psi;
  act.x[4 * 0 + 1] = pair.a * (sm.Phi * sm.Psi_inv);
  act.x[4 * 1 + 2] = sm.B * sm.Phi_inv;
  act.x[4 * 2 + 3] = phi_psi.scale_rows(pair.astar_diag);
  act.x[4 * 3 + 0] = sm.Bstar * sm.Phi_inv;
  act.x[4 * 0 + 2] = sm.K * sm.Psi_inv;
  act.x[4 * 1 + 3] = sm.Kstar * sm.Psi;
  act.x[4 * 2 + 0] = sm.Psi * sm.K_inv;
  act.x[4 * 3 + 1] = sm.Psi_inv * sm.Kstar_inv;
  return act;
}

std::vector<QTetRelation> qtet_relations() {
  std::vector<QTetRelation> out;
  for (int i = 0; i < 4; ++i) {
    const int j = mod4(i + 2);
    QTetRelation r{QTetRelation::Kind::Inverse, i, j, 0, 0, "", ""};
    r.id = "inverse(" + std::to_string(i) + "," + std::to_string(j) + ")";
    r.statement = qtet_generator_name(i, j) + " " + qtet_generator_name(j, i) + " = 1";
    out.push_back(r);
  }
  const int steps[3][2] = {{1, 1}, {1, 2}, {2, 1}};
  for (const auto& st : steps) {
    for (int h = 0; h < 4; ++h) {
      const int i = mod4(h + st[0]);
      const int j = mod4(i + st[1]);
      QTetRelation r{QTetRelation::Kind::QWeyl, h, i, j, 0, "", ""};
      r.id = "q-weyl(" + std::to_string(h) + "," + std::to_string(i) + "," + std::to_string(j) + ")";
      const std::string a = qtet_generator_name(h, i);
      const std::string b = qtet_generator_name(i, j);
      r.statement = "(q " + a + " " + b + " - q^-1 " + b + " " + a + ") / (q - q^-1) = 1";
      out.push_back(r);
    }
  }
  for (int h = 0; h < 4; ++h) {
    const int i = mod4(h + 1), j = mod4(h + 2), k = mod4(h + 3);
    QTetRelation r{QTetRelation::Kind::QSerre, h, i, j, k, "", ""};
    r.id = "q-serre(" + std::to_string(h) + "," + std::to_string(i) + "," + std::to_string(j) + "," +
           std::to_string(k) + ")";
    const std::string x = qtet_generator_name(h, i);
    const std::string y = qtet_generator_name(j, k);
    r.statement = x + "^3 " + y + " - [3] " + x + "^2 " + y + " " + x + " + [3] " + x + " " + y + " " + x + "^2 - " +
                  y + " " + x + "^3 = 0";
    out.push_back(r);
  }
  return out;
}

template <class Mat>
Mat q_weyl_residual(const Mat& x, const Mat& y, const Mat& rhs, const QuadScalar& q) {
  const auto qs = Mat::lift(q);
  const auto qi = Mat::lift(q.inverse());
  const auto scale = Mat::lift((q - q.inverse()).inverse());
  return ((x * y) * qs - (y * x) * qi) * scale - rhs;
}

namespace {

const char* kind_name(QTetRelation::Kind k) {
  switch (k) {
    case QTetRelation::Kind::Inverse: return "inverse";
    case QTetRelation::Kind::QWeyl: return "q-weyl";
    case QTetRelation::Kind::QSerre: return "q-serre";
  }
  return "";
}

}  // namespace

template <class Mat>
RelationReport verify_qtet_relations(const QTetAction<Mat>& act) {
  const std::size_t n = act.x[1].rows();
  const int64_t field = act.x[1].field();
  const Mat id = Mat::identity(n, field);
  RelationReport rep;
  for (const auto& rel : qtet_relations()) {
    Mat res;
    switch (rel.kind) {
      case QTetRelation::Kind::Inverse:
        res = act.at(rel.h, rel.i) * act.at(rel.i, rel.h) - id;
        break;
      case QTetRelation::Kind::QWeyl:
        res = q_weyl_residual(act.at(rel.h, rel.i), act.at(rel.i, rel.j), id, act.q);
        break;
      case QTetRelation::Kind::QSerre:
        res = q_serre(act.at(rel.h, rel.i), act.at(rel.j, rel.k), act.q);
        break;
    }
    RelationRecord rec;
    rec.id = rel.id;
    rec.kind = kind_name(rel.kind);
    rec.relation = rel.statement;
    rec.zero = res.is_zero();
    rec.residual = residual_text(res);
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

template <class Mat>
QTetAction<Mat> negated(const QTetAction<Mat>& act) {
  QTetAction<Mat> out = act;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (is_qtet_generator(i, j)) out.x[4 * i + j] = -act.x[4 * i + j];
    }
  }
  return out;
}

template <class Mat>
bool flip_negation_check(const QTetAction<Mat>& act, const RelationReport& original) {
  const RelationReport flipped = verify_qtet_relations(negated(act));
  if (flipped.records.size() != original.records.size()) return false;
  for (std::size_t k = 0; k < flipped.records.size(); ++k) {
    if (!flipped.records[k].zero || flipped.records[k].residual != original.records[k].residual) return false;
  }
  return true;
}

#define DRGTET_INSTANTIATE_QTET(M)                                                                          \
  template struct QTetAction<M>;                                                                            \
  template QTetAction<M> assemble_action(const NormalizedPair<M>&, const SplitMatrices<M>&, const QuadScalar&); \
  template RelationReport verify_qtet_relations(const QTetAction<M>&);                                      \
  template QTetAction<M> negated(const QTetAction<M>&);                                                     \
  template bool flip_negation_check(const QTetAction<M>&, const RelationReport&);                           \
  template M q_weyl_residual(const M&, const M&, const M&, const QuadScalar&);

DRGTET_INSTANTIATE_QTET(ExactMatrix)
DRGTET_INSTANTIATE_QTET(FloatMatrix)

#undef DRGTET_INSTANTIATE_QTET

}  // namespace drgtet
