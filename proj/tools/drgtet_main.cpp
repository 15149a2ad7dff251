// drgtet command-line front end: construct, verify, report.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "drgtet/parallel.hpp"
#include "drgtet/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts "2 2 2", "2,2,2" or "s=2 d=2 e=2"; named values are put in the
// family's parameter order.
std::vector<int64_t> parse_params(const std::string& family, const std::vector<std::string>& raw) {
  static const std::map<std::string, std::vector<std::string>> order = {
      {"bilinear", {"s", "d", "e"}}, {"hermitean", {"r", "d"}}, {"alternating", {"s", "n"}}};
  std::vector<std::string> tokens;
  for (const auto& r : raw) {
    std::stringstream ss(r);
    std::string t;
    while (std::getline(ss, t, ',')) {
      if (!t.empty()) tokens.push_back(t);
    }
  }
  auto to_int = [](const std::string& t) {
    std::size_t used = 0;
    int64_t v = 0;
    try {
      v = std::stoll(t, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer: '" + t + "'");
    }
    if (used != t.size()) throw UsageError("not an integer: '" + t + "'");
    return v;
  };
  const auto it = order.find(family);
  if (it == order.end()) throw UsageError("unknown family '" + family + "'");
  const auto& names = it->second;
  std::vector<int64_t> out;
  std::map<std::string, int64_t> named;
  for (const auto& t : tokens) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      out.push_back(to_int(t));
    } else {
      named[t.substr(0, eq)] = to_int(t.substr(eq + 1));
    }
  }
  if (!named.empty()) {
    if (!out.empty()) throw UsageError("mix of named and positional parameters");
    for (const auto& [k, v] : named) {
      if (std::find(names.begin(), names.end(), k) == names.end()) {
        throw UsageError("unknown parameter '" + k + "' for " + family);
      }
    }
    for (const auto& n : names) {
      const auto f = named.find(n);
      if (f == named.end()) throw UsageError(family + " needs parameter " + n);
      out.push_back(f->second);
    }
  }
  if (out.size() != names.size()) {
    throw UsageError(family + " takes " + std::to_string(names.size()) + " parameters");
  }
  return out;
}

std::set<std::string> parse_checks(const std::string& list) {
  std::set<std::string> out;
  if (list.empty() || list == "all") return out;
  std::stringstream ss(list);
  std::string t;
  const auto& known = drgtet::all_checks();
  while (std::getline(ss, t, ',')) {
    if (t.empty()) continue;
    if (std::find(known.begin(), known.end(), t) == known.end()) throw UsageError("unknown check '" + t + "'");
    out.insert(t);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"drgtet: q-tetrahedron actions on self-dual distance-regular graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", drgtet::kToolVersion);

  std::string family, out, graph_file, mode = "exact", checks, root = "principal", report_file, format = "summary";
  std::vector<std::string> params;
  std::size_t base_vertex = 0, threads = 0, pattern_pairs = 100000;
  uint64_t seed = 1;
  bool no_timings = false;

  auto* construct = app.add_subcommand("construct", "build a graph family and write it as JSON");
  construct->add_option("--family", family, "bilinear | hermitean | alternating")->required();
  construct->add_option("--params", params, "e.g. s=2 d=2 e=2, or 2,2,2")->required();
  construct->add_option("-o,--output", out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the verification pipeline");
  auto* g_opt = verify->add_option("--graph", graph_file, "graph JSON file");
  auto* f_opt = verify->add_option("--family", family, "build the graph from a family instead");
  verify->add_option("--params", params, "family parameters");
  g_opt->excludes(f_opt);
  verify->add_option("--base-vertex", base_vertex, "base vertex x (default 0)");
  verify->add_option("--mode", mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  verify->add_option("--checks", checks, "comma list from drg,selfdual,qserre,split,qtet,uq,centrality,"
                                         "conjectures,patterns (default all)");
  verify->add_option("--root", root, "principal | negative square root of b")
      ->check(CLI::IsMember({"principal", "negative"}));
  verify->add_option("--seed", seed, "seed for sampled entry patterns");
  verify->add_option("--threads", threads, "worker threads (overrides DRGTET_THREADS)");
  verify->add_option("--pattern-pairs", pattern_pairs, "exhaustive entry patterns up to this many pairs");
  verify->add_flag("--no-timings", no_timings, "omit stage timings so reports are byte-identical across runs");
  verify->add_option("-o,--output", out, "report file (default stdout)");

  auto* report = app.add_subcommand("report", "render a report file");
  report->add_option("file", report_file, "report JSON")->required();
  report->add_option("--format", format, "summary | full")->check(CLI::IsMember({"summary", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (const char* env = std::getenv("DRGTET_THREADS"); env != nullptr && threads == 0) {
    try {
      threads = std::stoul(env);
    } catch (const std::exception&) {
      std::cerr << "error: DRGTET_THREADS must be a positive integer\n";
      return kExitUsage;
    }
  }
  if (threads > 0) drgtet::set_thread_count(threads);

  try {
    if (*construct) {
      const auto g = drgtet::build_family(family, parse_params(family, params));
      write_text(out, drgtet::serialize_graph(g) + "\n");
      if (!out.empty() && out != "-") std::cerr << "wrote " << g.n << "-vertex " << family << " graph to " << out << '\n';
      return kExitOk;
    }
    if (*verify) {
      drgtet::PipelineConfig cfg;
      if (graph_file.empty() && family.empty()) throw UsageError("verify needs --graph or --family");
      if (!family.empty()) {
        cfg.family = family;
        cfg.params = parse_params(family, params);
      } else if (!params.empty()) {
        throw UsageError("--params needs --family");
      }
      cfg.graph_file = graph_file;
      cfg.base_vertex = base_vertex;
      cfg.float_mode = mode == "float";
      cfg.negative_root = root == "negative";
      cfg.checks = parse_checks(checks);
      cfg.seed = seed;
      cfg.threads = threads;
      cfg.pattern_pairs = pattern_pairs;
      cfg.timings = !no_timings;
      const auto res = drgtet::run_pipeline(cfg);
      write_text(out, res.report.dump(2) + "\n");
      if (!out.empty() && out != "-") std::cerr << drgtet::render_report(res.report, "summary");
      return res.ok() ? kExitOk : kExitFail;
    }
    if (*report) {
      std::ifstream f(report_file);
      if (!f) throw UsageError("cannot open '" + report_file + "'");
      nlohmann::json j;
      try {
        f >> j;
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed report: ") + e.what());
      }
      std::cout << drgtet::render_report(j, format);
      return j.value("status", "fail") == "pass" ? kExitOk : kExitFail;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
