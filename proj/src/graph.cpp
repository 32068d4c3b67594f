#include "sandpile/graph.hpp"

#include "sandpile/matrix_market.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sandpile {
namespace {

long long choose2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

// All k-subsets of {1..n} in lexicographic order.
std::vector<Subset> k_subsets(int n, int k) {
  std::vector<Subset> out;
  Subset s(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 1);
  for (;;) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[std::size_t(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++s[std::size_t(i)];
    for (int j = i + 1; j < k; ++j) s[std::size_t(j)] = s[std::size_t(j - 1)] + 1;
  }
  return out;
}

bool disjoint(const Subset& a, const Subset& b) {
  // both sorted
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) ++i;
    else ++j;
  }
  return true;
}

}  // namespace

Graph Graph::from_edges(Index vertex_count, std::vector<Edge> edges) {
  if (vertex_count < 0) throw std::invalid_argument("Graph: negative vertex count");
  std::vector<Subset> labels;
  labels.reserve(static_cast<std::size_t>(vertex_count));
  for (Index i = 0; i < vertex_count; ++i) labels.push_back({static_cast<int>(i)});
  return from_edges(std::move(labels), std::move(edges));
}

Graph Graph::from_edges(std::vector<Subset> labels, std::vector<Edge> edges) {
  const auto v = static_cast<Index>(labels.size());
  for (auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= v || j >= v) throw std::invalid_argument("Graph: edge endpoint out of range");
    if (i == j) throw std::invalid_argument("Graph: loops are not allowed");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("Graph: repeated edge");
  }
  Graph g;
  g.labels_ = std::move(labels);
  g.edges_ = std::move(edges);
  return g;
}

std::vector<Index> Graph::degrees() const {
  std::vector<Index> deg(labels_.size(), 0);
  for (const auto& [i, j] : edges_) {
    ++deg[std::size_t(i)];
    ++deg[std::size_t(j)];
  }
  return deg;
}

Index Graph::component_count() const {
  std::vector<Index> parent(labels_.size());
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[std::size_t(x)] != x) x = parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
    return x;
  };
  Index components = vertex_count();
  for (const auto& [i, j] : edges_) {
    const Index a = find(i), b = find(j);
    if (a != b) {
      parent[std::size_t(a)] = b;
      --components;
    }
  }
  return components;
}

Graph kneser_graph(int n, int k) {
  if (k < 1) throw std::invalid_argument("kneser_graph: k must be at least 1");
  if (k > n) throw std::invalid_argument("kneser_graph: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  auto labels = k_subsets(n, k);
  std::vector<Edge> edges;
  const auto v = static_cast<Index>(labels.size());
  for (Index i = 0; i < v; ++i)
    for (Index j = i + 1; j < v; ++j)
      if (disjoint(labels[std::size_t(i)], labels[std::size_t(j)])) edges.emplace_back(i, j);
  return Graph::from_edges(std::move(labels), std::move(edges));
}

SrgParameters srg_parameters(int n) {
  if (n < 5) throw std::out_of_range("srg_parameters: KG(n,2) parameters require n >= 5, got " + std::to_string(n));
  return {choose2(n), choose2(n - 2), choose2(n - 4), choose2(n - 3)};
}

bool verify_srg_identity(const Graph& g, const SrgParameters& prm) {
  if (g.vertex_count() != prm.v) {
    throw ShapeError("verify_srg_identity: graph has " + std::to_string(g.vertex_count()) +
                     " vertices, parameters declare " + std::to_string(prm.v));
  }
  using M = Matrix<long long>;
  const M a = adjacency_matrix<long long>(g);
  const M id = M::Identity(prm.v, prm.v);
  const M j = M::Ones(prm.v, prm.v);
  const M lhs = a * a;
  const M rhs = prm.k * id + prm.lambda * a + prm.mu * (j - a - id);
  return lhs == rhs;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  Index vertices = -1, declared = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first) || first[0] == 'c' || first[0] == '#') continue;
    if (first == "p") {
      std::string kind;
      if (!(ss >> kind >> vertices >> declared) || kind != "edge") throw ParseError("edge list: malformed header");
      continue;
    }
    if (vertices < 0) throw ParseError("edge list: edge before header");
    Index j;
    std::size_t used = 0;
    Index i;
    try {
      i = std::stoll(first, &used);
    } catch (const std::exception&) {
      throw ParseError("edge list: bad vertex index '" + first + "'");
    }
    if (used != first.size() || !(ss >> j)) throw ParseError("edge list: malformed edge line '" + line + "'");
    edges.emplace_back(i, j);
  }
  if (vertices < 0) throw ParseError("edge list: missing header");
  if (static_cast<Index>(edges.size()) != declared) throw ParseError("edge list: edge count does not match header");
  try {
    return Graph::from_edges(vertices, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("edge list: ") + e.what());
  }
}

}  // namespace sandpile
