#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "drgtet/exact_matrix.hpp"
#include "drgtet/quad_scalar.hpp"

namespace drgtet {

/// Raised when a graph fails a structural requirement (connectivity,
/// distance-regularity, classical parameters).
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphData {
  std::size_t n = 0;
  /// Sorted neighbour lists.
  std::vector<std::vector<uint32_t>> adj;
  /// Optional per-vertex labels, each a serialized JSON value.
  std::vector<std::string> labels;
  std::string family;
  /// Optional construction parameters as a serialized JSON object.
  std::string params;
  /// Row-major n x n distances; empty until bfs_distances runs.
  std::vector<uint8_t> dist;
  int diameter = -1;

  [[nodiscard]] int distance(std::size_t y, std::size_t z) const { return dist[y * n + z]; }
  [[nodiscard]] bool has_distances() const noexcept { return !dist.empty(); }
  [[nodiscard]] std::size_t edge_count() const;
  /// 0/1 adjacency matrix A_1.
  [[nodiscard]] ExactMatrix adjacency() const;
  /// Distance-i matrix A_i.
  [[nodiscard]] ExactMatrix distance_matrix(int i) const;
  /// Vertices at distance i from x, in increasing order.
  [[nodiscard]] std::vector<std::size_t> sphere(std::size_t x, int i) const;

  friend bool operator==(const GraphData&, const GraphData&) = default;
};

struct IntersectionArray {
  int D = 0;
  std::vector<int64_t> c;  ///< c_0..c_D (c_0 = 0)
  std::vector<int64_t> a;  ///< a_0..a_D
  std::vector<int64_t> b;  ///< b_0..b_D (b_D = 0)
  /// p^h_{ij} for 0 <= h, i, j <= D, flattened as (h * (D+1) + i) * (D+1) + j.
  std::vector<int64_t> p;

  [[nodiscard]] int64_t valency() const { return b.empty() ? 0 : b[0]; }
  [[nodiscard]] int64_t intersection(int h, int i, int j) const { return p[(h * (D + 1) + i) * (D + 1) + j]; }
  /// k_i = p^0_{ii}.
  [[nodiscard]] int64_t k(int i) const { return intersection(0, i, i); }
};

struct ClassicalParams {
  int D = 0;
  int64_t b = 0;
  int64_t alpha = 0;
  int64_t beta = 0;
  int64_t s = 1;  ///< b = s^2 m
  int64_t m = 0;  ///< squarefree part of b, 1 when b is a square
  QuadScalar q;   ///< the chosen square root of b

  /// c_i and b_i from the closed forms.
  [[nodiscard]] int64_t c_formula(int i) const;
  [[nodiscard]] int64_t b_formula(int i) const;
};

/// Square root of b: principal (c > 0, or positive rational) unless negative.
QuadScalar root_of(int64_t b, bool negative_root = false);

GraphData build_bilinear(uint32_t s, int d, int e);
GraphData build_hermitean(uint32_t r, int d);
GraphData build_alternating(uint32_t s, int n);

inline constexpr int kGraphSchemaVersion = 1;

/// Graph JSON: {"n", "edges", "labels"?, "family"?, "params"?, "schema_version"?}.
GraphData load_graph(const std::string& path);
GraphData parse_graph(const std::string& text);
std::string serialize_graph(const GraphData& g);
void save_graph(const GraphData& g, const std::string& path);

/// Fills dist and diameter. Throws GraphError if disconnected.
void bfs_distances(GraphData& g);

/// Computes p^h_{ij} from one base pair per h and checks every other pair.
/// Throws GraphError naming the first violating pair.
IntersectionArray verify_distance_regular(const GraphData& g);

/// Fits (D, b, alpha, beta) with alpha = b - 1 and checks every c_i, b_i.
/// Throws GraphError when no integer fit exists.
ClassicalParams fit_classical_params(const IntersectionArray& arr, bool negative_root = false);

}  // namespace drgtet
