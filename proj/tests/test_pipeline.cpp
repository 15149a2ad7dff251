#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "drgtet/parallel.hpp"
#include "drgtet/pipeline.hpp"

using namespace drgtet;
using json = nlohmann::json;

namespace {

PipelineConfig family_config(const std::string& family, std::vector<int64_t> params) {
  PipelineConfig cfg;
  cfg.family = family;
  cfg.params = std::move(params);
  return cfg;
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("drgtet_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("full pipeline on Bil2(2,2)") {
  const auto res = run_pipeline(family_config("bilinear", {2, 2, 2}));
  const json& r = res.report;
  CHECK(res.ok());
  CHECK(r["status"] == "pass");
  CHECK(r["schema"] == "drgtet.report");
  CHECK(r["schema_version"] == kReportSchemaVersion);
  CHECK(r["graph"]["n"] == 16);
  CHECK(r["graph"]["exploratory"] == true);
  CHECK(r["graph"]["intersection_array"]["b"] == json({9, 4, 0}));
  CHECK(r["spectral"]["theta"] == json({"9", "1", "-3"}));
  CHECK(r["spectral"]["alpha0"] == "-7");
  CHECK(r["spectral"]["alpha1"] == "8");
  CHECK(r["selfdual"]["pass"] == true);
  CHECK(r["qtet"]["relations"].size() == 20);
  CHECK(r["qtet"]["all_zero"] == true);
  CHECK(r["uq"].size() == 4);
  CHECK(r["split"]["dimensions"]["du"] == json::parse("[[0,0,1],[0,9,0],[6,0,0]]"));
  CHECK(r["analysis"]["centrality"].size() == 4);
  CHECK(r["analysis"]["patterns"].size() == 6);
  CHECK(r["errors"].empty());
  for (const auto& stage : {"graph", "drg", "spectral", "split", "qtet", "uq"}) CHECK(r["timings"].contains(stage));
}

TEST_CASE("stage selection") {
  auto cfg = family_config("bilinear", {2, 2, 2});
  cfg.checks = {"qserre"};
  const auto res = run_pipeline(cfg);
  CHECK(res.ok());
  CHECK(res.report.contains("qserre"));
  CHECK(res.report.contains("spectral"));
  CHECK_FALSE(res.report.contains("split"));
  CHECK_FALSE(res.report.contains("qtet"));
  CHECK_FALSE(res.report.contains("selfdual"));

  cfg.checks = {"drg"};
  const auto only = run_pipeline(cfg);
  CHECK_FALSE(only.report.contains("spectral"));
  CHECK(only.report["graph"]["closed_forms_match"] == true);
}

TEST_CASE("a graph that is not distance-regular fails in the drg stage") {
  // Path on 4 vertices.
  const auto path = temp_file("path.json", R"({"n": 4, "edges": [[0,1],[1,2],[2,3]]})");
  PipelineConfig cfg;
  cfg.graph_file = path;
  const auto res = run_pipeline(cfg);
  CHECK_FALSE(res.ok());
  CHECK(res.report["status"] == "fail");
  REQUIRE(res.report["errors"].size() == 1);
  CHECK(res.report["errors"][0]["stage"] == "drg");
  CHECK_FALSE(res.report.contains("spectral"));
  std::filesystem::remove(path);

  PipelineConfig missing;
  missing.graph_file = "/nonexistent/graph.json";
  const auto m = run_pipeline(missing);
  CHECK_FALSE(m.ok());
  CHECK(m.report["errors"][0]["stage"] == "graph");
}

TEST_CASE("out-of-range base vertex is a stage error") {
  auto cfg = family_config("bilinear", {2, 2, 2});
  cfg.base_vertex = 16;
  const auto res = run_pipeline(cfg);
  CHECK_FALSE(res.ok());
  CHECK(res.report["errors"][0]["stage"] == "spectral");
}

TEST_CASE("reports are byte-identical across runs and thread counts without timings") {
  auto cfg = family_config("hermitean", {2, 2});
  cfg.timings = false;
  const std::size_t saved = thread_count();
  cfg.threads = 1;
  const auto a = run_pipeline(cfg).report;
  const auto b = run_pipeline(cfg).report;
  CHECK(a.dump() == b.dump());
  CHECK_FALSE(a.contains("timings"));
  cfg.threads = 3;
  auto c = run_pipeline(cfg).report;
  CHECK(c["config"]["threads"] == 3);
  c["config"]["threads"] = 1;
  CHECK(a.dump() == c.dump());
  set_thread_count(saved);
}

TEST_CASE("float mode passes and records tolerances") {
  auto cfg = family_config("bilinear", {2, 2, 2});
  cfg.float_mode = true;
  const auto res = run_pipeline(cfg);
  CHECK(res.ok());
  CHECK(res.report["config"]["mode"] == "float");
  CHECK(res.report.contains("float_tolerances"));
  CHECK(res.report["split"]["dimensions"]["du"] == json::parse("[[0,0,1],[0,9,0],[6,0,0]]"));
}

TEST_CASE("negative root on Her(2,2)") {
  auto cfg = family_config("hermitean", {2, 2});
  cfg.negative_root = true;
  const auto res = run_pipeline(cfg);
  CHECK(res.ok());
  CHECK(res.report["graph"]["classical"]["q"] == "-1*sqrt(-2)");
  CHECK(res.report["config"]["root"] == "negative");
  // Conjugate-transpose variants are recorded for b < 0.
  CHECK(res.report["analysis"]["conjectures"]["transpose"].size() == 8);
}

TEST_CASE("build_family validation") {
  CHECK(build_family("bilinear", {2, 2, 2}).n == 16);
  CHECK(build_family("alternating", {2, 4}).n == 64);
  CHECK_THROWS_AS(build_family("bilinear", {4, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(build_family("bilinear", {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(build_family("grassmann", {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(build_family("hermitean", {-2, 2}), std::invalid_argument);
}

TEST_CASE("graph files round-trip through the pipeline") {
  const auto g = build_family("alternating", {2, 4});
  const auto path = temp_file("alt.json", serialize_graph(g));
  PipelineConfig cfg;
  cfg.graph_file = path;
  cfg.checks = {"drg"};
  const auto from_file = run_pipeline(cfg);
  auto direct = family_config("alternating", {2, 4});
  direct.checks = {"drg"};
  const auto built = run_pipeline(direct);
  CHECK(from_file.report["graph"] == built.report["graph"]);
  std::filesystem::remove(path);
}

TEST_CASE("report rendering") {
  const auto res = run_pipeline(family_config("bilinear", {2, 2, 2}));
  const std::string summary = render_report(res.report, "summary");
  CHECK(summary.find("q-tetrahedron relations (20)      PASS (exact)") != std::string::npos);
  CHECK(summary.find("FAIL") == std::string::npos);
  CHECK(summary.find("status: pass") != std::string::npos);
  CHECK(summary.find("tilde dimensions") == std::string::npos);
  const std::string full = render_report(res.report, "full");
  CHECK(full.find("tilde dimensions du") != std::string::npos);
  CHECK(full.find("q-serre(0,1,2,3)") != std::string::npos);

  SUBCASE("observed fail shows its witness") {
    json r = res.report;
    auto& t = r["analysis"]["conjectures"]["transpose"][2];
    t["outcome"] = "observed-fail";
    t["witness"] = "entry (3, 4) = 1";
    r["analysis"]["conjectures"]["orthogonality"]["outcome"] = "observed-fail";
    r["analysis"]["conjectures"]["orthogonality"]["violations"] =
        json::parse(R"([{"systems":"dd/uu","i":1,"j":0,"r":0,"s":1,"witness":"entry (0, 0) = 2"}])");
    const std::string text = render_report(r, "summary");
    CHECK(text.find("observed-fail (entry (3, 4) = 1)") != std::string::npos);
    CHECK(text.find("dd/uu (1,0) vs (0,1): entry (0, 0) = 2") != std::string::npos);
  }
  SUBCASE("malformed reports are rejected") {
    CHECK_THROWS_AS(render_report(json::object(), "summary"), std::invalid_argument);
    json r = res.report;
    r.erase("status");
    CHECK_THROWS_AS(render_report(r, "summary"), std::invalid_argument);
    CHECK_THROWS_AS(render_report(res.report, "xml"), std::invalid_argument);
  }
}
