#include "drgtet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "drgtet/finite_field.hpp"
#include "drgtet/parallel.hpp"

namespace drgtet {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxVertices = 1u << 14;

// All forms of one family as full row-major matrices, in lexicographic order
// of their entry indices.
struct FormFamily {
  FieldSpec field;
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<FFElem>> forms;
};

uint64_t form_code(const std::vector<FFElem>& form, uint32_t order) {
  uint64_t code = 0;
  for (const auto& x : form) code = code * order + x.index();
  return code;
}

// Enumerates all assignments of `slots` free entries, slot k ranging over
// choices[k]; fill writes a full matrix from one assignment.
template <class Fill>
std::vector<std::vector<FFElem>> enumerate_forms(const std::vector<std::vector<FFElem>>& choices, Fill fill) {
  std::size_t total = 1;
  for (const auto& c : choices) {
    total *= c.size();
    if (total > kMaxVertices) throw std::invalid_argument("graph too large (more than 16384 vertices)");
  }
  std::vector<std::vector<FFElem>> out;
  out.reserve(total);
  std::vector<std::size_t> digit(choices.size(), 0);
  std::vector<FFElem> assignment(choices.size());
  for (std::size_t t = 0; t < total; ++t) {
    for (std::size_t k = 0; k < choices.size(); ++k) assignment[k] = choices[k][digit[k]];
    out.push_back(fill(assignment));
    for (std::size_t k = choices.size(); k-- > 0;) {
      if (++digit[k] < choices[k].size()) break;
      digit[k] = 0;
    }
  }
  return out;
}

std::string label_of(const std::vector<FFElem>& form, int rows, int cols) {
  json m = json::array();
  for (int i = 0; i < rows; ++i) {
    json row = json::array();
    for (int j = 0; j < cols; ++j) row.push_back(form[i * cols + j].index());
    m.push_back(row);
  }
  return m.dump();
}

// Cayley graph on the additive group of forms: y ~ y + s for every form s of
// the given rank.
GraphData rank_distance_graph(FormFamily fam, int edge_rank, std::string family, const json& params) {
  const uint32_t order = fam.field.order();
  std::sort(fam.forms.begin(), fam.forms.end(), [&](const auto& x, const auto& y) {
    return form_code(x, order) < form_code(y, order);
  });
  const std::size_t n = fam.forms.size();
  std::unordered_map<uint64_t, uint32_t> index;
  index.reserve(n * 2);
  for (std::size_t v = 0; v < n; ++v) index.emplace(form_code(fam.forms[v], order), static_cast<uint32_t>(v));

  std::vector<std::size_t> steps;
  for (std::size_t v = 0; v < n; ++v) {
    if (ff_rank(fam.forms[v], fam.rows, fam.cols) == edge_rank) steps.push_back(v);
  }

  GraphData g;
  g.n = n;
  g.family = std::move(family);
  g.params = params.dump();
  g.adj.assign(n, {});
  g.labels.resize(n);
  parallel_for(0, n, 64, [&](std::size_t lo, std::size_t hi) {
    std::vector<FFElem> z(fam.forms.front().size());
    for (std::size_t y = lo; y < hi; ++y) {
      auto& nb = g.adj[y];
      nb.reserve(steps.size());
      for (std::size_t s : steps) {
        for (std::size_t k = 0; k < z.size(); ++k) z[k] = fam.forms[y][k] + fam.forms[s][k];
        nb.push_back(index.at(form_code(z, order)));
      }
      std::sort(nb.begin(), nb.end());
      g.labels[y] = label_of(fam.forms[y], fam.rows, fam.cols);
    }
  });
  return g;
}

void require_prime(uint32_t p, const char* what) {
  if (!is_prime(p)) throw std::invalid_argument(std::string(what) + " must be prime, got " + std::to_string(p));
}

Int int_pow(int64_t b, int e) {
  Int r(1);
  for (int t = 0; t < e; ++t) r *= Int(static_cast<long long>(b));
  return r;
}

// 1 + b + ... + b^{e-1}
Int geometric(int64_t b, int e) {
  Int r(0);
  Int p(1);
  for (int t = 0; t < e; ++t) {
    r += p;
    p *= Int(static_cast<long long>(b));
  }
  return r;
}

int64_t to_int64(const Int& v) {
  if (!v.is_small()) throw GraphError("intersection number out of range");
  return v.small();
}

}  // namespace

std::size_t GraphData::edge_count() const {
  std::size_t e = 0;
  for (const auto& nb : adj) e += nb.size();
  return e / 2;
}

ExactMatrix GraphData::adjacency() const {
  std::vector<int64_t> e(n * n, 0);
  for (std::size_t y = 0; y < n; ++y) {
    for (auto z : adj[y]) e[y * n + z] = 1;
  }
  return ExactMatrix::from_integers(n, n, e);
}

ExactMatrix GraphData::distance_matrix(int i) const {
  if (!has_distances()) throw std::logic_error("distances not computed");
  std::vector<int64_t> e(n * n, 0);
  for (std::size_t k = 0; k < n * n; ++k) e[k] = dist[k] == i ? 1 : 0;
  return ExactMatrix::from_integers(n, n, e);
}

std::vector<std::size_t> GraphData::sphere(std::size_t x, int i) const {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < n; ++y) {
    if (distance(x, y) == i) out.push_back(y);
  }
  return out;
}

int64_t ClassicalParams::c_formula(int i) const {
  if (i == 0) return 0;
  return to_int64(int_pow(b, i - 1) * geometric(b, i));
}

int64_t ClassicalParams::b_formula(int i) const {
  if (i >= D) return 0;
  return to_int64((Int(static_cast<long long>(beta + 1)) - int_pow(b, i)) * int_pow(b, i) * geometric(b, D - i));
}

QuadScalar root_of(int64_t b, bool negative_root) {
  const auto [s, m] = squarefree_decompose(b);
  QuadScalar q = m == 1 ? QuadScalar(static_cast<long long>(s))
                        : QuadScalar(Rational(0), Rational(static_cast<long long>(s)), m);
  return negative_root ? -q : q;
}

GraphData build_bilinear(uint32_t s, int d, int e) {
  require_prime(s, "s");
  if (d < 1 || e < 1 || d > e) throw std::invalid_argument("bilinear forms graph needs 1 <= d <= e");
  const FieldSpec f = FieldSpec::prime(s);
  std::vector<FFElem> all;
  for (uint32_t v = 0; v < s; ++v) all.push_back(FFElem::from_index(f, v));
  const std::vector<std::vector<FFElem>> choices(static_cast<std::size_t>(d * e), all);
  FormFamily fam{f, d, e, enumerate_forms(choices, [](const std::vector<FFElem>& a) { return a; })};
  return rank_distance_graph(std::move(fam), 1, "bilinear", json{{"s", s}, {"d", d}, {"e", e}});
}

GraphData build_hermitean(uint32_t r, int d) {
  require_prime(r, "r");
  if (d < 1) throw std::invalid_argument("hermitean forms graph needs d >= 1");
  const FieldSpec f = FieldSpec::quadratic(r);
  std::vector<FFElem> base;
  std::vector<FFElem> ext;
  for (uint32_t v = 0; v < r; ++v) base.push_back(FFElem::from_index(f, v));
  for (uint32_t v = 0; v < f.order(); ++v) ext.push_back(FFElem::from_index(f, v));
  // free entries: row-major upper triangle including the diagonal
  std::vector<std::vector<FFElem>> choices;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) choices.push_back(i == j ? base : ext);
  }
  auto fill = [&](const std::vector<FFElem>& a) {
    std::vector<FFElem> m(static_cast<std::size_t>(d * d));
    std::size_t k = 0;
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        m[i * d + j] = a[k];
        m[j * d + i] = a[k].frobenius();
        ++k;
      }
    }
    return m;
  };
  FormFamily fam{f, d, d, enumerate_forms(choices, fill)};
  return rank_distance_graph(std::move(fam), 1, "hermitean", json{{"r", r}, {"d", d}});
}

GraphData build_alternating(uint32_t s, int n) {
  require_prime(s, "s");
  if (n < 4) throw std::invalid_argument("alternating forms graph needs n >= 4");
  const FieldSpec f = FieldSpec::prime(s);
  std::vector<FFElem> all;
  for (uint32_t v = 0; v < s; ++v) all.push_back(FFElem::from_index(f, v));
  const std::vector<std::vector<FFElem>> choices(static_cast<std::size_t>(n * (n - 1) / 2), all);
  auto fill = [&](const std::vector<FFElem>& a) {
    std::vector<FFElem> m(static_cast<std::size_t>(n * n), FFElem(f, 0));
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        m[i * n + j] = a[k];
        m[j * n + i] = -a[k];
        ++k;
      }
    }
    return m;
  };
  FormFamily fam{f, n, n, enumerate_forms(choices, fill)};
  return rank_distance_graph(std::move(fam), 2, "alternating", json{{"s", s}, {"n", n}});
}

GraphData parse_graph(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw GraphError(std::string("malformed graph file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw GraphError("malformed graph file: expected an object with \"n\" and \"edges\"");
  }
  if (j.contains("schema_version") && j["schema_version"] != kGraphSchemaVersion) {
    throw GraphError("unsupported graph schema_version " + j["schema_version"].dump());
  }
  if (!j["n"].is_number_integer() || j["n"].get<int64_t>() < 1) throw GraphError("malformed graph file: bad \"n\"");
  const auto n = j["n"].get<std::size_t>();
  if (n > kMaxVertices) throw GraphError("graph too large (more than 16384 vertices)");
  GraphData g;
  g.n = n;
  g.adj.assign(n, {});
  if (!j["edges"].is_array()) throw GraphError("malformed graph file: \"edges\" must be an array");
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw GraphError("malformed graph file: each edge must be a pair of vertex indices");
    }
    const auto u = e[0].get<int64_t>();
    const auto v = e[1].get<int64_t>();
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw GraphError("malformed graph file: edge endpoint out of range");
    }
    if (u == v) throw GraphError("malformed graph file: self-loop at vertex " + std::to_string(u));
    g.adj[u].push_back(static_cast<uint32_t>(v));
    g.adj[v].push_back(static_cast<uint32_t>(u));
  }
  for (std::size_t y = 0; y < n; ++y) {
    auto& nb = g.adj[y];
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
      throw GraphError("malformed graph file: repeated edge at vertex " + std::to_string(y));
    }
  }
  if (j.contains("labels") && !j["labels"].is_null()) {
    if (!j["labels"].is_array() || j["labels"].size() != n) {
      throw GraphError("malformed graph file: \"labels\" must have one entry per vertex");
    }
    for (const auto& l : j["labels"]) g.labels.push_back(l.dump());
  }
  if (j.contains("family") && !j["family"].is_null()) {
    if (!j["family"].is_string()) throw GraphError("malformed graph file: \"family\" must be a string");
    g.family = j["family"].get<std::string>();
  }
  if (j.contains("params") && !j["params"].is_null()) g.params = j["params"].dump();
  // connectivity
  std::vector<char> seen(n, 0);
  std::vector<uint32_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const uint32_t y = stack.back();
    stack.pop_back();
    for (auto z : g.adj[y]) {
      if (!seen[z]) {
        seen[z] = 1;
        ++reached;
        stack.push_back(z);
      }
    }
  }
  if (reached != n) throw GraphError("graph is disconnected");
  return g;
}

GraphData load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

std::string serialize_graph(const GraphData& g) {
  json j;
  j["schema"] = "drgtet.graph";
  j["schema_version"] = kGraphSchemaVersion;
  j["n"] = g.n;
  json edges = json::array();
  for (std::size_t y = 0; y < g.n; ++y) {
    for (auto z : g.adj[y]) {
      if (y < z) edges.push_back({y, z});
    }
  }
  j["edges"] = std::move(edges);
  if (!g.family.empty()) j["family"] = g.family;
  if (!g.params.empty()) j["params"] = json::parse(g.params);
  if (!g.labels.empty()) {
    json labels = json::array();
    for (const auto& l : g.labels) labels.push_back(json::parse(l));
    j["labels"] = std::move(labels);
  }
  return j.dump();
}

void save_graph(const GraphData& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write graph file " + path);
  out << serialize_graph(g) << '\n';
  if (!out) throw GraphError("failed writing graph file " + path);
}

void bfs_distances(GraphData& g) {
  const std::size_t n = g.n;
  std::vector<uint8_t> dist(n * n, 0xff);
  parallel_for(0, n, 16, [&](std::size_t lo, std::size_t hi) {
    std::vector<uint32_t> frontier;
    std::vector<uint32_t> next;
    for (std::size_t x = lo; x < hi; ++x) {
      uint8_t* row = dist.data() + x * n;
      row[x] = 0;
      frontier.assign(1, static_cast<uint32_t>(x));
      uint8_t level = 0;
      while (!frontier.empty()) {
        ++level;
        if (level == 0xff) throw GraphError("diameter too large");
        next.clear();
        for (auto y : frontier) {
          for (auto z : g.adj[y]) {
            if (row[z] == 0xff) {
              row[z] = level;
              next.push_back(z);
            }
          }
        }
        frontier.swap(next);
      }
    }
  });
  int diameter = 0;
  for (auto v : dist) {
    if (v == 0xff) throw GraphError("graph is disconnected");
    diameter = std::max<int>(diameter, v);
  }
  g.dist = std::move(dist);
  g.diameter = diameter;
}

IntersectionArray verify_distance_regular(const GraphData& g) {
  if (!g.has_distances()) throw std::logic_error("distances not computed");
  const int D = g.diameter;
  const std::size_t w = static_cast<std::size_t>(D + 1);
  const std::size_t n = g.n;
  auto histogram = [&](std::size_t x, std::size_t y, std::vector<int64_t>& h) {
    std::fill(h.begin(), h.end(), 0);
    const uint8_t* rx = g.dist.data() + x * n;
    const uint8_t* ry = g.dist.data() + y * n;
    for (std::size_t z = 0; z < n; ++z) ++h[rx[z] * w + ry[z]];
  };

  IntersectionArray arr;
  arr.D = D;
  arr.p.assign(w * w * w, 0);
  std::vector<int64_t> h(w * w);
  for (int d = 0; d <= D; ++d) {
    const std::size_t y = g.sphere(0, d).front();
    histogram(0, y, h);
    std::copy(h.begin(), h.end(), arr.p.begin() + d * w * w);
  }

  // First violating pair in row-major order, found per chunk then reduced.
  const std::size_t none = n * n;
  std::vector<std::size_t> first(n, none);
  parallel_for(0, n, 8, [&](std::size_t lo, std::size_t hi) {
    std::vector<int64_t> hh(w * w);
    for (std::size_t x = lo; x < hi; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        histogram(x, y, hh);
        const int d = g.distance(x, y);
        if (!std::equal(hh.begin(), hh.end(), arr.p.begin() + d * w * w)) {
          first[x] = x * n + y;
          break;
        }
      }
    }
  });
  const std::size_t bad = *std::min_element(first.begin(), first.end());
  if (bad != none) {
    throw GraphError("not distance-regular: the pair (" + std::to_string(bad / n) + ", " + std::to_string(bad % n) +
                     ") at distance " + std::to_string(g.distance(bad / n, bad % n)) +
                     " has intersection numbers different from the base pair");
  }

  arr.c.assign(w, 0);
  arr.a.assign(w, 0);
  arr.b.assign(w, 0);
  for (int i = 0; i <= D; ++i) {
    if (i >= 1) arr.c[i] = arr.intersection(i, 1, i - 1);
    if (D >= 1) arr.a[i] = arr.intersection(i, 1, i);
    if (i < D) arr.b[i] = arr.intersection(i, 1, i + 1);
  }
  return arr;
}

ClassicalParams fit_classical_params(const IntersectionArray& arr, bool negative_root) {
  const int D = arr.D;
  if (D < 2) throw GraphError("classical parameters need diameter at least 2, got " + std::to_string(D));
  if (arr.c[1] != 1) throw GraphError("classical parameters need c_1 = 1, got " + std::to_string(arr.c[1]));
  // c_2 = b (b + 1)
  const int64_t disc = 1 + 4 * arr.c[2];
  auto r = static_cast<int64_t>(std::llround(std::sqrt(static_cast<double>(disc))));
  while (r * r > disc) --r;
  while ((r + 1) * (r + 1) <= disc) ++r;
  if (r * r != disc) throw GraphError("no integer b with c_2 = b(b+1), c_2 = " + std::to_string(arr.c[2]));
  std::string why = "no candidate b fits";
  for (const int64_t b : {(r - 1) / 2, (-1 - r) / 2}) {
    if (b == 0 || b == 1 || b == -1) continue;
    // b_0 = beta (b^D - 1) / (b - 1)
    const Int g = geometric(b, D);
    const Int k(static_cast<long long>(arr.b[0]));
    if (!tdiv_r(k, g).is_zero()) {
      why = "b = " + std::to_string(b) + " gives a non-integral beta";
      continue;
    }
    ClassicalParams cp;
    cp.D = D;
    cp.b = b;
    cp.alpha = b - 1;
    cp.beta = to_int64(tdiv_q(k, g));
    bool ok = true;
    for (int i = 0; i <= D && ok; ++i) {
      if (cp.c_formula(i) != arr.c[i] || cp.b_formula(i) != arr.b[i]) {
        ok = false;
        why = "b = " + std::to_string(b) + " violates the closed form at i = " + std::to_string(i);
      }
    }
    if (!ok) continue;
    const auto [s, m] = squarefree_decompose(b);
    cp.s = s;
    cp.m = m;
    cp.q = root_of(b, negative_root);
    return cp;
  }
  throw GraphError("no classical parameters with alpha = b - 1: " + why);
}

}  // namespace drgtet
