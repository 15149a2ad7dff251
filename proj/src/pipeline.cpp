#include "drgtet/pipeline.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "drgtet/analysis.hpp"
#include "drgtet/parallel.hpp"
#include "drgtet/qtet_action.hpp"
#include "drgtet/spectral.hpp"
#include "drgtet/split_system.hpp"
#include "drgtet/uq_pullback.hpp"

namespace drgtet {

using json = nlohmann::json;

const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> names = {"drg",   "selfdual", "qserre",     "split",      "qtet",
                                                 "uq",    "centrality", "conjectures", "patterns"};
  return names;
}

json PipelineConfig::to_json() const {
  json j;
  j["family"] = family;
  j["params"] = params;
  j["graph_file"] = graph_file;
  j["base_vertex"] = base_vertex;
  j["root"] = negative_root ? "negative" : "principal";
  j["mode"] = float_mode ? "float" : "exact";
  j["checks"] = checks.empty() ? json(all_checks()) : json(std::vector<std::string>(checks.begin(), checks.end()));
  j["seed"] = seed;
  j["threads"] = thread_count();
  j["pattern_pairs"] = pattern_pairs;
  return j;
}

GraphData build_family(const std::string& family, const std::vector<int64_t>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k) {
      throw std::invalid_argument(family + " takes " + std::to_string(k) + " parameters, got " +
                                  std::to_string(params.size()));
    }
    for (auto p : params) {
      if (p < 0 || p > 1000000) throw std::invalid_argument("parameter out of range: " + std::to_string(p));
    }
  };
  if (family == "bilinear") {
    need(3);
    return build_bilinear(static_cast<uint32_t>(params[0]), static_cast<int>(params[1]), static_cast<int>(params[2]));
  }
  if (family == "hermitean") {
    need(2);
    return build_hermitean(static_cast<uint32_t>(params[0]), static_cast<int>(params[1]));
  }
  if (family == "alternating") {
    need(2);
    return build_alternating(static_cast<uint32_t>(params[0]), static_cast<int>(params[1]));
  }
  throw std::invalid_argument("unknown family '" + family + "' (expected bilinear, hermitean or alternating)");
}

namespace {

json strings(const std::vector<QuadScalar>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(s.str());
  return a;
}

template <class S>
json scalar_strings(const std::vector<S>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(scalar_text(s));
  return a;
}

json relation_json(const RelationReport& rep) {
  json a = json::array();
  for (const auto& r : rep.records) {
    a.push_back({{"id", r.id}, {"kind", r.kind}, {"relation", r.relation}, {"zero", r.zero}, {"residual", r.residual}});
  }
  return a;
}

json grid_json(const std::vector<std::vector<std::size_t>>& g) {
  json a = json::array();
  for (const auto& row : g) a.push_back(row);
  return a;
}

class Runner {
 public:
  Runner(const PipelineConfig& cfg, json& report, std::vector<std::string>& failures)
      : cfg_(cfg), report_(report), failures_(failures) {}

  /// Runs body under a stage tag; returns false if it threw.
  bool stage(const std::string& name, const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    try {
      body();
    } catch (const std::exception& e) {
      report_["errors"].push_back({{"stage", name}, {"message", e.what()}});
      failures_.push_back(name + ": " + e.what());
      ok = false;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cfg_.timings) report_["timings"][name] = secs;
    return ok;
  }

  void hard(bool pass, const std::string& id) {
    if (!pass) failures_.push_back(id);
  }

 private:
  const PipelineConfig& cfg_;
  json& report_;
  std::vector<std::string>& failures_;
};

template <class Mat>
void run_algebra(const PipelineConfig& cfg, const GraphData& g, const IntersectionArray& arr,
                 const ClassicalParams& cp, Runner& run, json& rep) {
  const bool want_split = cfg.wants("split") || cfg.wants("qtet") || cfg.wants("uq") || cfg.wants("centrality") ||
                          cfg.wants("conjectures") || cfg.wants("patterns");
  const bool want_spectral = want_split || cfg.wants("selfdual") || cfg.wants("qserre");
  if (!want_spectral) return;
  const QuadScalar& q = cp.q;
  const std::size_t x = cfg.base_vertex;
  if (x >= g.n) {
    run.stage("spectral", [&] { throw std::invalid_argument("base vertex " + std::to_string(x) + " out of range"); });
    return;
  }

  Eigenvalues ev;
  Mat a1;
  std::vector<Mat> e;
  KreinData<Mat> kp;
  DualData<Mat> dual;
  NormalizedPair<Mat> pair;
  const bool spectral_ok = run.stage("spectral", [&] {
    json& s = rep["spectral"];
    ev = solve_eigenvalues(arr, cp);
    s["theta"] = strings(ev.theta);
    s["alpha0"] = ev.alpha0.str();
    s["alpha1"] = ev.alpha1.str();
    a1 = Mat::lift(g.adjacency());
    e = primitive_idempotents(a1, ev.theta);
    s["minimal_polynomial_zero"] = true;
    kp = krein_parameters(e);
    s["multiplicities"] = kp.multiplicities;
    s["krein_expansion_holds"] = kp.expansion_holds;
    s["krein_real_nonnegative"] = kp.real_nonnegative;
    run.hard(kp.real_nonnegative, "spectral.krein_real_nonnegative");
    json tensor = json::array();
    for (int h = 0; h <= arr.D; ++h) {
      json mh = json::array();
      for (int i = 0; i <= arr.D; ++i) {
        json row = json::array();
        for (int j = 0; j <= arr.D; ++j) row.push_back(scalar_text(kp.krein(h, i, j)));
        mh.push_back(row);
      }
      tensor.push_back(mh);
    }
    s["krein"] = tensor;
    const auto qp = check_q_polynomial(kp);
    s["q_polynomial"] = {{"pass", qp.ok}, {"detail", qp.detail}};
    run.hard(qp.ok, "spectral.q_polynomial");

    dual = dual_structures(g, e, kp, x);
    s["theta_star"] = scalar_strings(dual.theta_star);
    bool star_equal = true;
    for (int i = 0; i <= arr.D; ++i) star_equal = star_equal && scalar_zero(dual.theta_star[i] - Mat::lift(ev.theta[i]));
    s["theta_star_equals_theta"] = star_equal;
    run.hard(star_equal, "spectral.theta_star_equals_theta");
    s["dual_multiplication_holds"] = dual.multiplication_holds;

    const auto tri = triple_product_checks(g, arr, kp, dual);
    s["triple_products"] = {{"checked", tri.checked}, {"violations", tri.violations}};
    run.hard(tri.ok(), "spectral.triple_products");

    pair = normalize_pair(a1, dual, e, ev, q);
    s["normalized_eigen_relations"] = pair.eigen_relations_hold;
  });
  if (!spectral_ok) return;

  if (cfg.wants("selfdual")) {
    run.stage("selfdual", [&] {
      const auto sd = check_self_dual(arr, kp);
      rep["selfdual"] = {{"pass", sd.ok}, {"detail", sd.detail}};
      run.hard(sd.ok, "selfdual");
    });
  }
  if (cfg.wants("qserre")) {
    run.stage("qserre", [&] {
      const auto r = check_q_serre(pair, q);
      rep["qserre"] = {{"A3Astar", {{"zero", r.first.is_zero()}, {"residual", residual_text(r.first)}}},
                       {"Astar3A", {{"zero", r.second.is_zero()}, {"residual", residual_text(r.second)}}}};
      run.hard(r.ok(), "qserre");
    });
  }
  if (!want_split) return;

  std::optional<SplitSystem<Mat>> sys;
  SplitMatrices<Mat> sm;
  const bool split_ok = run.stage("split", [&] {
    const FlagContext<Mat> ctx(e, dual);
    sys = build_split_system(ctx);
    json& s = rep["split"];
    for (Dir eta : {Dir::Down, Dir::Up}) {
      for (Dir mu : {Dir::Down, Dir::Up}) {
        const std::string name = pair_name(eta, mu);
        s["dimensions"][name] = grid_json(sys->grid(eta, mu).dimensions());
        s["direct_sum"][name] = sys->decomposition(eta, mu).has_value();
        run.hard(sys->decomposition(eta, mu).has_value(), "split.direct_sum." + name);
      }
    }
    // Reported only: point reflection between the dd and uu grids.
    const auto dd = sys->grid(Dir::Down, Dir::Down).dimensions();
    const auto uu = sys->grid(Dir::Up, Dir::Up).dimensions();
    bool reflected = true;
    const int d = arr.D;
    for (int i = 0; i <= d; ++i) {
      for (int j = 0; j <= d; ++j) reflected = reflected && dd[i][j] == uu[d - i][d - j];
    }
    s["dd_uu_point_reflection"] = reflected;
    sm = split_matrices(*sys, q);
    s["block_actions_verified"] = true;
    s["commute_K_Phi"] = (sm.K * sm.Phi == sm.Phi * sm.K);
    s["commute_B_Psi"] = (sm.B * sm.Psi == sm.Psi * sm.B);
    run.hard(s["commute_K_Phi"].get<bool>(), "split.commute_K_Phi");
    run.hard(s["commute_B_Psi"].get<bool>(), "split.commute_B_Psi");
  });
  if (!split_ok) return;

  std::optional<QTetAction<Mat>> act;
  if (cfg.wants("qtet") || cfg.wants("uq")) {
    run.stage("qtet", [&] {
      act = assemble_action(pair, sm, q);
      const auto relations = verify_qtet_relations(*act);
      rep["qtet"]["relations"] = relation_json(relations);
      rep["qtet"]["all_zero"] = relations.all_zero();
      run.hard(relations.all_zero(), "qtet.relations");
      if (cfg.wants("qtet")) {
        const bool flip = flip_negation_check(*act, relations);
        rep["qtet"]["negation_invariant"] = flip;
        run.hard(flip, "qtet.negation_invariant");
      }
    });
  }
  if (cfg.wants("uq") && act) {
    run.stage("uq", [&] {
      json arr_json = json::array();
      for (int i = 0; i < 4; ++i) {
        const auto u = pullback(*act, i);
        const auto eq = verify_uq_equitable(u);
        const auto ch = verify_uq_chevalley(u);
        const auto sl2 = verify_uq_sl2(u);
        const bool trip = chevalley_round_trip(u);
        arr_json.push_back({{"index", i},
                            {"central_element_is_identity", (u.x[0] * u.x[1]).is_identity()},
                            {"equitable", relation_json(eq)},
                            {"chevalley", relation_json(ch)},
                            {"sl2", relation_json(sl2)},
                            {"round_trip", trip}});
        const std::string tag = "uq[" + std::to_string(i) + "]";
        run.hard(eq.all_zero(), tag + ".equitable");
        run.hard(ch.all_zero(), tag + ".chevalley");
        run.hard(sl2.all_zero(), tag + ".sl2");
        run.hard(trip, tag + ".round_trip");
      }
      rep["uq"] = arr_json;
    });
  }
  if (cfg.wants("centrality")) {
    run.stage("centrality", [&] {
      json a = json::array();
      for (const auto& c : check_centrality(sm, pair)) {
        a.push_back({{"id", c.id}, {"zero", c.zero}, {"residual", c.residual}});
        run.hard(c.zero, "centrality." + c.id);
      }
      rep["analysis"]["centrality"] = a;
    });
  }
  if (cfg.wants("conjectures")) {
    run.stage("conjectures", [&] {
      json& c = rep["analysis"]["conjectures"];
      c["psi_is_identity"] = check_psi_identity(sm);
      json t = json::array();
      for (const auto& r : conjecture_transpose(sm, cp.b < 0)) {
        t.push_back({{"id", r.id},
                     {"statement", r.statement},
                     {"outcome", r.observed_pass ? "observed-pass" : "observed-fail"},
                     {"witness", r.witness},
                     {"supplementary", r.supplementary}});
      }
      c["transpose"] = t;
      const auto orth = conjecture_orthogonality(*sys);
      json v = json::array();
      for (const auto& w : orth.violations) {
        v.push_back({{"systems", w.systems}, {"i", w.i}, {"j", w.j}, {"r", w.r}, {"s", w.s}, {"witness", w.witness}});
      }
      c["orthogonality"] = {{"outcome", orth.observed_pass() ? "observed-pass" : "observed-fail"},
                            {"pairs_checked", orth.pairs_checked},
                            {"pairs_exempt", orth.pairs_exempt},
                            {"violations", v}};
      const auto spec = phi_psi_spectrum(*sys, q);
      auto spectrum = [](const std::vector<SpectrumEntry>& v) {
        json a = json::array();
        for (const auto& s : v) a.push_back({{"exponent", s.exponent}, {"value", s.value}, {"multiplicity", s.multiplicity}});
        return a;
      };
      rep["analysis"]["spectra"] = {{"Phi", spectrum(spec.phi)}, {"Psi", spectrum(spec.psi)}};
    });
  }
  if (cfg.wants("patterns")) {
    run.stage("patterns", [&] {
      json a = json::array();
      const std::pair<const char*, const Mat*> mats[] = {{"B", &sm.B},     {"B*", &sm.Bstar}, {"K", &sm.K},
                                                         {"K*", &sm.Kstar}, {"Phi", &sm.Phi}, {"Psi", &sm.Psi}};
      for (const auto& [name, m] : mats) {
        const auto t = entry_pattern_report(*m, name, g, x, cfg.pattern_pairs, cfg.seed);
        json classes = json::array();
        for (const auto& c : t.classes) {
          classes.push_back({{"distances", {c.xy, c.yz, c.zx}},
                             {"samples", c.samples},
                             {"constant", c.constant},
                             {"value", c.value}});
        }
        a.push_back({{"matrix", t.matrix},
                     {"exhaustive", t.exhaustive},
                     {"seed", t.seed},
                     {"pairs", t.pairs},
                     {"classes", classes}});
      }
      rep["analysis"]["patterns"] = a;
    });
  }
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  if (cfg.threads > 0) set_thread_count(cfg.threads);
  PipelineResult res;
  GraphData g;
  Runner run(cfg, res.report, res.hard_failures);
  res.report["errors"] = json::array();
  const bool ok = run.stage("graph", [&] {
    if (!cfg.graph_file.empty()) {
      g = load_graph(cfg.graph_file);
    } else {
      g = build_family(cfg.family, cfg.params);
    }
  });
  if (!ok) {
    res.report["schema"] = "drgtet.report";
    res.report["schema_version"] = kReportSchemaVersion;
    res.report["tool_version"] = kToolVersion;
    res.report["config"] = cfg.to_json();
    res.report["status"] = "fail";
    res.report["hard_failures"] = res.hard_failures;
    return res;
  }
  json timings = res.report.contains("timings") ? res.report["timings"] : json::object();
  PipelineResult rest = run_pipeline(cfg, std::move(g));
  if (cfg.timings) rest.report["timings"]["graph"] = timings["graph"];
  return rest;
}

PipelineResult run_pipeline(const PipelineConfig& cfg, GraphData g) {
  if (cfg.threads > 0) set_thread_count(cfg.threads);
  PipelineResult res;
  json& rep = res.report;
  rep["schema"] = "drgtet.report";
  rep["schema_version"] = kReportSchemaVersion;
  rep["tool_version"] = kToolVersion;
  rep["config"] = cfg.to_json();
  rep["errors"] = json::array();
  Runner run(cfg, rep, res.hard_failures);

  IntersectionArray arr;
  ClassicalParams cp;
  const bool drg_ok = run.stage("drg", [&] {
    json& s = rep["graph"];
    s["n"] = g.n;
    s["edges"] = g.edge_count();
    s["family"] = g.family;
    s["params"] = g.params.empty() ? json(nullptr) : json::parse(g.params);
    bfs_distances(g);
    s["diameter"] = g.diameter;
    arr = verify_distance_regular(g);
    s["distance_regular"] = true;
    s["intersection_array"] = {{"c", arr.c}, {"a", arr.a}, {"b", arr.b}};
    cp = fit_classical_params(arr, cfg.negative_root);
    s["classical"] = {{"D", cp.D}, {"b", cp.b}, {"alpha", cp.alpha}, {"beta", cp.beta}, {"q", cp.q.str()}};
    bool closed = true;
    for (int i = 0; i <= arr.D; ++i) {
      closed = closed && cp.c_formula(i) == arr.c[i] && cp.b_formula(i) == arr.b[i];
    }
    s["closed_forms_match"] = closed;
    run.hard(closed, "drg.closed_forms");
    s["exploratory"] = arr.D < 3;
  });

  if (drg_ok) {
    if (cfg.float_mode) {
      rep["float_tolerances"] = {{"pivot", FloatMatrix::pivot_tolerance()},
                                 {"residual", FloatMatrix::residual_tolerance()}};
      run_algebra<FloatMatrix>(cfg, g, arr, cp, run, rep);
    } else {
      run_algebra<ExactMatrix>(cfg, g, arr, cp, run, rep);
    }
  }
  rep["hard_failures"] = res.hard_failures;
  rep["status"] = res.hard_failures.empty() ? "pass" : "fail";
  return res;
}

namespace {

std::string pass_text(bool pass, bool exact) {
  return pass ? (exact ? "PASS (exact)" : "PASS (float)") : "FAIL";
}

void line(std::ostringstream& os, const std::string& name, const std::string& value) {
  os << "  " << name;
  for (std::size_t k = name.size(); k < 34; ++k) os << ' ';
  os << value << '\n';
}

bool all_zero(const json& records) {
  for (const auto& r : records) {
    if (!r.at("zero").get<bool>()) return false;
  }
  return true;
}

}  // namespace

std::string render_report(const json& report, const std::string& format) {
  if (format != "summary" && format != "full") throw std::invalid_argument("format must be summary or full");
  if (!report.is_object() || report.value("schema", "") != "drgtet.report") {
    throw std::invalid_argument("not a drgtet report");
  }
  std::ostringstream os;
  try {
    const bool exact = report.at("config").at("mode") == "exact";
    os << "drgtet report (schema " << report.at("schema_version").get<int>() << ", tool " <<
        report.at("tool_version").get<std::string>() << ")\n";
    if (report.contains("graph")) {
      const auto& g = report["graph"];
      os << "graph: " << g.value("family", "") << " n=" << g.at("n").get<std::size_t>();
      if (g.contains("classical")) {
        const auto& c = g["classical"];
        os << " D=" << c.at("D").get<int>() << " b=" << c.at("b").get<int64_t>() << " alpha=" <<
            c.at("alpha").get<int64_t>() << " beta=" << c.at("beta").get<int64_t>() << " q=" <<
            c.at("q").get<std::string>();
      }
      os << '\n';
      if (g.contains("closed_forms_match")) line(os, "intersection numbers", pass_text(g["closed_forms_match"], true));
    }
    if (report.contains("spectral")) {
      const auto& s = report["spectral"];
      line(os, "eigenvalues", s.at("theta").dump());
      if (s.contains("minimal_polynomial_zero")) line(os, "minimal polynomial", pass_text(true, exact));
      if (s.contains("krein_expansion_holds")) line(os, "Krein expansion", pass_text(s["krein_expansion_holds"], exact));
      if (s.contains("q_polynomial")) line(os, "Q-polynomial", pass_text(s["q_polynomial"]["pass"], exact));
      if (s.contains("triple_products")) {
        line(os, "triple products", pass_text(s["triple_products"]["violations"].empty(), exact));
      }
    }
    if (report.contains("selfdual")) line(os, "self-duality q = p", pass_text(report["selfdual"]["pass"], exact));
    if (report.contains("qserre")) {
      line(os, "q-Serre (A, A*)",
           pass_text(report["qserre"]["A3Astar"]["zero"].get<bool>() && report["qserre"]["Astar3A"]["zero"].get<bool>(),
                     exact));
    }
    if (report.contains("split")) {
      for (const auto& [k, v] : report["split"]["direct_sum"].items()) line(os, "direct sum " + k, pass_text(v, exact));
      if (format == "full") {
        for (const auto& [k, v] : report["split"]["dimensions"].items()) {
          os << "  tilde dimensions " << k << ":\n";
          for (const auto& row : v) {
            os << "   ";
            for (const auto& d : row) os << ' ' << d.get<std::size_t>();
            os << '\n';
          }
        }
      }
    }
    if (report.contains("qtet")) {
      const auto& rel = report["qtet"]["relations"];
      if (format == "full") {
        for (const auto& r : rel) line(os, r.at("id").get<std::string>(), pass_text(r.at("zero"), exact));
      }
      line(os, "q-tetrahedron relations (" + std::to_string(rel.size()) + ")", pass_text(all_zero(rel), exact));
      if (report["qtet"].contains("negation_invariant")) {
        line(os, "negation invariance", pass_text(report["qtet"]["negation_invariant"], exact));
      }
    }
    if (report.contains("uq")) {
      for (const auto& u : report["uq"]) {
        const std::string i = std::to_string(u.at("index").get<int>());
        line(os, "U_q pullback " + i + " equitable", pass_text(all_zero(u.at("equitable")), exact));
        line(os, "U_q pullback " + i + " Chevalley", pass_text(all_zero(u.at("chevalley")), exact));
        line(os, "U_q pullback " + i + " sl2", pass_text(all_zero(u.at("sl2")), exact));
      }
    }
    if (report.contains("analysis")) {
      const auto& a = report["analysis"];
      if (a.contains("centrality")) line(os, "centrality of Phi, Psi", pass_text(all_zero(a["centrality"]), exact));
      if (a.contains("conjectures")) {
        const auto& c = a["conjectures"];
        line(os, "Psi = I", c.at("psi_is_identity").get<bool>() ? "yes" : "no");
        for (const auto& t : c.at("transpose")) {
          if (t.at("supplementary").get<bool>() && format != "full") continue;
          std::string v = t.at("outcome").get<std::string>();
          if (v == "observed-fail") v += " (" + t.at("witness").get<std::string>() + ")";
          line(os, t.at("statement").get<std::string>(), v);
        }
        const auto& o = c.at("orthogonality");
        std::string v = o.at("outcome").get<std::string>();
        for (const auto& w : o.at("violations")) {
          v += "\n      " + w.at("systems").get<std::string>() + " (" + std::to_string(w.at("i").get<int>()) + "," +
               std::to_string(w.at("j").get<int>()) + ") vs (" + std::to_string(w.at("r").get<int>()) + "," +
               std::to_string(w.at("s").get<int>()) + "): " + w.at("witness").get<std::string>();
          if (format != "full") break;
        }
        line(os, "tilde orthogonality", v);
      }
      if (a.contains("spectra") && format == "full") {
        for (const char* m : {"Phi", "Psi"}) {
          std::string v;
          for (const auto& e : a["spectra"][m]) {
            v += e.at("value").get<std::string>() + "^" + std::to_string(e.at("multiplicity").get<std::size_t>()) + " ";
          }
          line(os, std::string(m) + " spectrum", v);
        }
      }
    }
    for (const auto& e : report.at("errors")) {
      os << "  error in " << e.at("stage").get<std::string>() << ": " << e.at("message").get<std::string>() << '\n';
    }
    if (format == "full" && report.contains("timings")) {
      for (const auto& [k, v] : report["timings"].items()) {
        std::ostringstream t;
        t.precision(3);
        t << std::fixed << v.get<double>() << " s";
        line(os, "time " + k, t.str());
      }
    }
    os << "status: " << report.at("status").get<std::string>() << '\n';
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
  return os.str();
}

}  // namespace drgtet
