// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
//
//   acceptance [--json FILE] [--skip-large]
//
// --skip-large leaves criteria 3, 4 (and the 512-vertex parts of 6-8) unrun;
// those criteria then print FAIL (not run).
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <random>

#include "drgtet/parallel.hpp"
#include "drgtet/pipeline.hpp"
#include "drgtet/subspace.hpp"
#include "drgtet/uq_pullback.hpp"

using namespace drgtet;
using json = nlohmann::json;

namespace {

constexpr double kSmallBudget1 = 10.0;
constexpr double kSmallBudget2 = 60.0;
constexpr double kLargeBudget = 1800.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Run {
  std::string name;
  json report;
  double seconds = 0.0;
  bool ok = false;
};

Run run_family(const std::string& name, const std::string& family, std::vector<int64_t> params, bool float_mode,
               std::set<std::string> checks = {}, std::size_t threads = 1) {
  PipelineConfig cfg;
  cfg.family = family;
  cfg.params = std::move(params);
  cfg.float_mode = float_mode;
  cfg.checks = std::move(checks);
  cfg.threads = threads;
  std::cerr << "[acceptance] " << name << (float_mode ? " (float)" : " (exact)") << " ..." << std::flush;
  const auto t0 = std::chrono::steady_clock::now();
  auto res = run_pipeline(cfg);
  Run r;
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.ok = res.ok();
  r.report = std::move(res.report);
  std::cerr << " " << r.seconds << " s, " << (r.ok ? "pass" : "fail") << '\n';
  return r;
}

// Member lookup that tolerates reports from failed runs.
const json& field(const json& j, const std::string& key) {
  static const json empty;
  return j.is_object() && j.contains(key) ? j.at(key) : empty;
}

std::string secs(double s) {
  std::ostringstream os;
  os.precision(1);
  os << std::fixed << s << " s";
  return os.str();
}

bool records_zero(const json& recs) {
  if (!recs.is_array() || recs.empty()) return false;
  for (const auto& r : recs) {
    if (!r.value("zero", false)) return false;
  }
  return true;
}

std::string first_failure(const Run& r) {
  const auto& f = r.report.value("hard_failures", json::array());
  return f.empty() ? "" : f[0].get<std::string>();
}

// Hard checks of a full run: status plus the individual groups, so a report
// that silently skipped a stage cannot pass.
Outcome full_pipeline(const Run& r) {
  const json& j = r.report;
  if (!r.ok) return {false, r.name + " hard failure: " + first_failure(r)};
  const bool present = j.contains("selfdual") && j.contains("qserre") && j.contains("split") && j.contains("qtet") &&
                       j.contains("uq") && j.contains("analysis");
  if (!present) return {false, r.name + ": a stage is missing from the report"};
  bool sums = true;
  for (const auto& [k, v] : j["split"]["direct_sum"].items()) sums = sums && v.get<bool>();
  const bool ok = j["selfdual"]["pass"].get<bool>() && j["qserre"]["A3Astar"]["zero"].get<bool>() &&
                  j["qserre"]["Astar3A"]["zero"].get<bool>() && j["split"]["direct_sum"].size() == 4 && sums &&
                  j["qtet"]["relations"].size() == 20 && records_zero(j["qtet"]["relations"]) &&
                  j["qtet"]["negation_invariant"].get<bool>();
  return {ok, ok ? "" : r.name + ": a hard check group failed"};
}

// Continuant det(L - theta I) of the tridiagonal intersection matrix.
Rational tridiagonal_char(const json& arr, int64_t theta) {
  const auto a = arr["a"].get<std::vector<int64_t>>();
  const auto b = arr["b"].get<std::vector<int64_t>>();
  const auto c = arr["c"].get<std::vector<int64_t>>();
  Rational prev(1), cur(a[0] - theta);
  for (std::size_t i = 1; i < a.size(); ++i) {
    const Rational next = Rational(a[i] - theta) * cur - Rational(b[i - 1] * c[i]) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Outcome criterion1(const Run& r) {
  Outcome o = full_pipeline(r);
  if (!o.pass) return o;
  const json& s = r.report["spectral"];
  const std::vector<std::string> expected = {"9", "1", "-3"};
  if (s["theta"].get<std::vector<std::string>>() != expected) return {false, "eigenvalues " + s["theta"].dump()};
  for (int64_t t : {9, 1, -3}) {
    if (!tridiagonal_char(r.report["graph"]["intersection_array"], t).is_zero()) {
      return {false, "characteristic polynomial does not vanish at " + std::to_string(t)};
    }
  }
  if (s["alpha0"] != "-7" || s["alpha1"] != "8") return {false, "alpha " + s["alpha0"].dump() + s["alpha1"].dump()};
  // theta_i = alpha0 + alpha1 q^{D-2i} with q^2 = 2.
  const QuadScalar q = QuadScalar::sqrt_of(2);
  for (int i = 0; i <= 2; ++i) {
    if (!(QuadScalar(-7) + QuadScalar(8) * q.pow(2 - 2 * i) == QuadScalar::parse(expected[i]))) {
      return {false, "alpha does not reproduce theta_" + std::to_string(i)};
    }
  }
  if (r.seconds > kSmallBudget1) return {false, "runtime " + secs(r.seconds) + " > 10 s"};
  return {true, "exact, " + secs(r.seconds)};
}

Outcome criterion2(const Run& r) {
  Outcome o = full_pipeline(r);
  if (!o.pass) return o;
  if (r.report["graph"]["classical"]["q"] != "2") return {false, "q is not rational 2"};
  if (r.report["graph"]["n"] != 64) return {false, "wrong vertex count"};
  if (r.seconds > kSmallBudget2) return {false, "runtime " + secs(r.seconds) + " > 60 s"};
  return {true, "exact, " + secs(r.seconds) + ", D = 2 exploratory"};
}

Outcome large(const Run& exact, const std::string& family, std::vector<int64_t> params, const std::string& q) {
  Outcome o = full_pipeline(exact);
  if (!o.pass) return o;
  if (exact.report["graph"]["n"] != 512) return {false, "wrong vertex count"};
  if (exact.report["graph"]["classical"]["q"] != q) return {false, "q = " + exact.report["graph"]["classical"]["q"].dump()};
  if (exact.seconds <= kLargeBudget) return {true, "exact, " + secs(exact.seconds)};
  // Over budget: the float backend must carry the criterion.
  if (FloatMatrix::residual_tolerance() > 1e-8) return {false, "float tolerance above 1e-8"};
  const Run f = run_family(exact.name, family, std::move(params), true);
  Outcome fo = full_pipeline(f);
  if (!fo.pass) return fo;
  return {true, "float, " + secs(f.seconds) + "; exact run long-running at " + secs(exact.seconds)};
}

Outcome criterion5(const std::vector<const Run*>& runs) {
  for (const Run* r : runs) {
    const json& u = field(r->report, "uq");
    if (!u.is_array() || u.size() != 4) return {false, r->name + ": expected 4 pullbacks"};
    for (const auto& p : u) {
      if (!records_zero(p["equitable"]) || !records_zero(p["chevalley"])) {
        return {false, r->name + " pullback " + p["index"].dump() + " has a nonzero residual"};
      }
    }
  }
  return {true, "i = 0..3 on Bil2(2,2), Alt2(4)"};
}

Outcome criterion6(const std::vector<const Run*>& runs) {
  for (const Run* r : runs) {
    const json& c = field(field(r->report, "analysis"), "centrality");
    if (!c.is_array() || c.size() != 4 || !records_zero(c)) return {false, r->name + ": commutator nonzero or missing"};
  }
  return {true, std::to_string(runs.size()) + " graphs"};
}

Outcome criterion7(const std::vector<const Run*>& runs,
                   const std::map<std::string, std::pair<std::string, std::vector<int64_t>>>& source) {
  std::string summary;
  for (const Run* r : runs) {
    const json& c = field(field(r->report, "analysis"), "conjectures");
    if (!c.is_object() || !c.contains("transpose") || !c.contains("orthogonality")) return {false, r->name + ": missing records"};
    if (c["transpose"].size() < 4) return {false, r->name + ": fewer than 4 transpose records"};
    for (const auto& t : c["transpose"]) {
      const auto v = t["outcome"].get<std::string>();
      if (v != "observed-pass" && v != "observed-fail") return {false, r->name + ": bad outcome " + v};
      if (v == "observed-fail" && t["witness"].get<std::string>().empty()) return {false, "fail without witness"};
    }
    // Second run with another thread count and only the conjecture stage.
    const auto& [family, params] = source.at(r->name);
    const Run again = run_family(r->name, family, params, false, {"conjectures"}, 2);
    if (field(field(again.report, "analysis"), "conjectures").dump() != c.dump()) {
      return {false, r->name + ": outcome differs between 1 and 2 threads"};
    }
    std::size_t fails = 0, extra = 0;
    for (const auto& t : c["transpose"]) {
      if (t["outcome"] != "observed-fail") continue;
      (t["supplementary"].get<bool>() ? extra : fails) += 1;
    }
    fails += c["orthogonality"]["outcome"] == "observed-fail" ? 1 : 0;
    summary += (summary.empty() ? "" : ", ") + r->name + " " + std::to_string(fails) + " observed-fail";
    if (extra > 0) summary += " (+" + std::to_string(extra) + " supplementary)";
  }
  return {true, summary + "; identical at 1 and 2 threads"};
}

Outcome criterion8(const std::vector<const Run*>& runs) {
  // Closed forms on every built family, including some not in the main runs.
  const std::vector<std::pair<std::string, std::vector<int64_t>>> extra = {
      {"bilinear", {2, 2, 3}}, {"bilinear", {3, 2, 2}}, {"bilinear", {2, 2, 4}}, {"hermitean", {3, 2}},
      {"alternating", {2, 5}}, {"alternating", {3, 4}}};
  std::size_t graphs = 0;
  for (const auto& [family, params] : extra) {
    const Run r = run_family(family + json(params).dump(), family, params, false, {"drg"});
    if (!r.ok || !r.report["graph"]["closed_forms_match"].get<bool>()) return {false, r.name + ": closed forms differ"};
    ++graphs;
  }
  for (const Run* r : runs) {
    if (!field(field(r->report, "graph"), "closed_forms_match") == true) return {false, r->name + ": closed forms differ"};
    if (!field(field(r->report, "spectral"), "krein_expansion_holds") == true) return {false, r->name + ": Krein expansion"};
    ++graphs;
  }
  // Minimal polynomial, multiplied out directly on the adjacency matrix.
  for (const Run* r : runs) {
    if (!field(r->report, "spectral").contains("theta")) return {false, r->name + ": no eigenvalues"};
    const auto& p = r->report["config"]["params"];
    GraphData g = build_family(r->report["config"]["family"], p.get<std::vector<int64_t>>());
    const ExactMatrix a = g.adjacency();
    ExactMatrix prod = ExactMatrix::identity(g.n);
    for (const auto& t : r->report["spectral"]["theta"]) prod = prod * a.add_identity(-QuadScalar::parse(t.get<std::string>()));
    if (!prod.is_zero()) return {false, r->name + ": product of (A - theta I) is nonzero"};
  }
  return {true, std::to_string(graphs) + " graphs for closed forms; minimal polynomial and Krein expansion on " +
                    std::to_string(runs.size())};
}

// Plain elimination for the dimension oracle.
std::size_t scalar_rank(const ExactMatrix& m) {
  std::vector<std::vector<QuadScalar>> a(m.rows(), std::vector<QuadScalar>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c].is_zero()) continue;
      const QuadScalar f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

Outcome criterion9() {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<int> d(-12, 12);
  std::uniform_int_distribution<int> den(1, 7);
  auto rnd = [&](int64_t m) { return QuadScalar(Rational(d(rng), den(rng)), Rational(d(rng), den(rng)), m); };
  std::size_t cases = 0;
  for (int64_t m : {2, -2, 3, -1, 5, -3, 7, -7}) {
    for (int t = 0; t < 1500; ++t) {
      const QuadScalar a = rnd(m), b = rnd(m), c = rnd(m);
      bool ok = a + b == b + a && a * b == b * a && (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) &&
                a * (b + c) == a * b + a * c && a + QuadScalar(0) == a && a * QuadScalar(1) == a &&
                (a - a).is_zero() && conj(a * b) == conj(a) * conj(b) && conj(conj(a)) == a &&
                QuadScalar::parse(a.str()) == a;
      if (!a.is_zero()) ok = ok && a * a.inverse() == QuadScalar(1) && (b / a) * a == b;
      if (!ok) return {false, "field axiom failed for a = " + a.str() + ", b = " + b.str() + ", c = " + c.str()};
      ++cases;
    }
  }

  std::size_t subspaces = 0;
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<std::size_t> kd(1, 4);
  auto random_columns = [&](std::size_t n, std::size_t k, int64_t m) {
    std::vector<QuadScalar> e(n * k);
    for (auto& x : e) x = m == 0 ? QuadScalar(small(rng)) : QuadScalar(Rational(small(rng)), Rational(small(rng)), m);
    return ExactMatrix::from_entries(n, k, e, m);
  };
  for (int64_t m : {0, 2, -2}) {
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 6;
      const ExactMatrix g1 = random_columns(n, 3, m) * random_columns(3, kd(rng), 0);
      const ExactMatrix g2 = random_columns(n, kd(rng), m);
      const Subspace s1 = Subspace::span(g1), s2 = Subspace::span(g2);
      const Subspace meet = intersect(s1, s2), join = sum(s1, s2);
      const bool ok = s1.dim() == scalar_rank(g1.transpose()) && s2.dim() == scalar_rank(g2.transpose()) &&
                      join.dim() == scalar_rank(ExactMatrix::hconcat({&g1, &g2}).transpose()) &&
                      meet.dim() + join.dim() == s1.dim() + s2.dim() && s1.contains(meet) && s2.contains(meet);
      if (!ok) return {false, "dimension formula failed on a random instance"};
      ++subspaces;
    }
  }

  std::size_t blocks = 0;
  const QuadScalar q = QuadScalar::sqrt_of(-2);
  while (blocks < 20) {
    const ExactMatrix u = random_columns(7, 7, -2);
    if (u.rank() < 7) continue;
    const std::vector<Subspace> parts = {Subspace::span(u.select_columns({0, 1, 2})),
                                         Subspace::span(u.select_columns({3})),
                                         Subspace::span(u.select_columns({4, 5, 6}))};
    const std::vector<QuadScalar> lambda = {q, q.pow(-1), q.pow(2)};
    const ExactMatrix op = assemble_block_scalar<ExactMatrix>({{parts[0], lambda[0]}, {parts[1], lambda[1]},
                                                               {parts[2], lambda[2]}});
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const ExactMatrix b = parts[k].basis();
      if (!(op * b == b * lambda[k])) return {false, "assembled operator misses a block scalar"};
    }
    ++blocks;
  }

  // Negation invariance on an assembled action.
  PipelineConfig cfg;
  cfg.family = "bilinear";
  cfg.params = {2, 2, 2};
  cfg.checks = {"qtet"};
  const auto res = run_pipeline(cfg);
  if (field(field(res.report, "qtet"), "negation_invariant") != true) return {false, "negation invariance"};

  return {true, std::to_string(cases) + " field-axiom cases, " + std::to_string(subspaces) + " subspace instances, " +
                    std::to_string(blocks) + " block assemblies, negation invariance"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string json_out;
  bool skip_large = false;
  app.add_option("--json", json_out, "also write the outcomes as JSON");
  app.add_flag("--skip-large", skip_large, "do not run the 512-vertex graphs");
  CLI11_PARSE(app, argc, argv);
  set_thread_count(1);

  std::map<std::string, std::pair<std::string, std::vector<int64_t>>> source = {
      {"Bil2(2,2)", {"bilinear", {2, 2, 2}}},
      {"Alt2(4)", {"alternating", {2, 4}}},
      {"Bil2(3,3)", {"bilinear", {2, 3, 3}}},
      {"Her2(3)", {"hermitean", {2, 3}}}};
  auto run = [&](const std::string& name) {
    const auto& [f, p] = source.at(name);
    return run_family(name, f, p, false);
  };

  std::map<int, Outcome> out;
  const Run bil22 = run("Bil2(2,2)");
  const Run alt24 = run("Alt2(4)");
  out[1] = criterion1(bil22);
  out[2] = criterion2(alt24);
  std::vector<const Run*> all = {&bil22, &alt24};
  Run bil33, her23;
  if (skip_large) {
    out[3] = {false, "not run (--skip-large)"};
    out[4] = {false, "not run (--skip-large)"};
  } else {
    bil33 = run("Bil2(3,3)");
    out[3] = large(bil33, "bilinear", {2, 3, 3}, "1*sqrt(2)");
    her23 = run("Her2(3)");
    out[4] = large(her23, "hermitean", {2, 3}, "1*sqrt(-2)");
    if (out[4].pass && her23.report["graph"]["classical"]["b"] != -2) out[4] = {false, "b is not -2"};
    all.push_back(&bil33);
    all.push_back(&her23);
  }
  out[5] = criterion5({&bil22, &alt24});
  out[6] = criterion6(all);
  out[7] = criterion7(all, source);
  out[8] = criterion8(all);
  out[9] = criterion9();
  if (skip_large) {
    for (int k : {6, 7, 8}) out[k] = {false, "incomplete without the 512-vertex graphs: " + out[k].detail};
  }

  bool all_pass = true;
  json j = json::object();
  for (const auto& [k, o] : out) {
    std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << (o.detail.empty() ? "" : "  " + o.detail)
              << '\n';
    all_pass = all_pass && o.pass;
    j[std::to_string(k)] = {{"pass", o.pass}, {"detail", o.detail}};
  }
  if (!json_out.empty()) std::ofstream(json_out) << j.dump(2) << '\n';
  return all_pass ? 0 : 1;
}
