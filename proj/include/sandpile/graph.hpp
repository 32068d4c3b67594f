#pragma once

#include "sandpile/matrix.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace sandpile {

using Subset = std::vector<int>;
using Edge = std::pair<Index, Index>;

/// Simple undirected graph with a fixed vertex order.
///
/// Edges are stored once, as (i, j) with i < j, sorted lexicographically.
/// Vertex labels are the k-subsets for Kneser graphs and {i} otherwise.
class Graph {
 public:
  Graph() = default;

  /// Throws std::invalid_argument on loops, repeated edges or bad indices.
  static Graph from_edges(Index vertex_count, std::vector<Edge> edges);
  static Graph from_edges(std::vector<Subset> labels, std::vector<Edge> edges);

  Index vertex_count() const { return static_cast<Index>(labels_.size()); }
  Index edge_count() const { return static_cast<Index>(edges_.size()); }
  const std::vector<Subset>& vertex_labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<Index> degrees() const;
  Index component_count() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<Subset> labels_;
  std::vector<Edge> edges_;
};

/// KG(n, k): the k-subsets of {1..n} in lexicographic order, adjacent when
/// disjoint. Throws std::invalid_argument if k < 1 or k > n.
Graph kneser_graph(int n, int k = 2);

template <typename Scalar = BigInt>
Matrix<Scalar> adjacency_matrix(const Graph& g) {
  const Index v = g.vertex_count();
  Matrix<Scalar> a = Matrix<Scalar>::Zero(v, v);
  for (const auto& [i, j] : g.edges()) {
    a(i, j) = Scalar(1);
    a(j, i) = Scalar(1);
  }
  return a;
}

/// L = D - A.
template <typename Scalar = BigInt>
Matrix<Scalar> laplacian_matrix(const Graph& g) {
  Matrix<Scalar> l = -adjacency_matrix<Scalar>(g);
  const auto deg = g.degrees();
  for (Index i = 0; i < g.vertex_count(); ++i) l(i, i) = Scalar(static_cast<long long>(deg[std::size_t(i)]));
  return l;
}

struct SrgParameters {
  long long v = 0;
  long long k = 0;
  long long lambda = 0;
  long long mu = 0;

  friend bool operator==(const SrgParameters&, const SrgParameters&) = default;
};

/// Strongly regular parameters of KG(n, 2). Throws std::out_of_range for n < 5.
SrgParameters srg_parameters(int n);

/// Checks A^2 = kI + lambda A + mu (J - A - I) exactly. Throws ShapeError if
/// the graph does not have prm.v vertices.
bool verify_srg_identity(const Graph& g, const SrgParameters& prm);

/// Edge-list text: a "p edge <vertices> <edges>" header followed by one
/// "i j" line per edge, 0-based canonical indices.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

}  // namespace sandpile
