#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "cliquelab/bitset.hpp"
#include "cliquelab/rng.hpp"

namespace cliquelab {

// Edge identifiers index the unordered pairs of [n] in lexicographic
// (min,max) order: 01, 02, ..., 0(n-1), 12, 13, ...
using EdgeId = std::uint32_t;

inline std::size_t edge_count(int n) {
  return static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2;
}

EdgeId edge_id(int u, int v, int n);
std::pair<int, int> edge_endpoints(EdgeId e, int n);

// A graph on [n], kept as the set of present edge ids.
struct Graph {
  int n = 0;
  Bitset edges;

  Graph() = default;
  explicit Graph(int n_) : n(n_), edges(edge_count(n_)) {}
  Graph(int n_, Bitset e) : n(n_), edges(std::move(e)) {}

  bool has_edge(int u, int v) const { return edges.test(edge_id(u, v, n)); }
  void add_edge(int u, int v) { edges.set(edge_id(u, v, n)); }
  std::size_t num_edges() const { return edges.count(); }

  bool operator==(const Graph&) const = default;
};

Graph empty_graph(int n);
Graph complete_graph(int n);

// K(A): all pairs within the vertex set A, as an edge set over K([n]).
Bitset clique_edge_set(const Bitset& vertices, int n);
Graph clique_edges(const Bitset& vertices, int n);

// Union of edge endpoints, as a vertex set.
Bitset edge_endpoints_union(const Bitset& edges, int n);

Bitset vertex_set(int n, std::initializer_list<int> vs);

// True iff some k vertices are pairwise adjacent. Pruned backtracking over
// candidate sets; desk scale only.
bool has_k_clique(const Graph& g, int k);

// Erdős–Rényi sample; `edge_prob` is the PRESENCE probability of each edge.
Graph sample_er_graph(int n, double edge_prob, RngStream& rng);

// All k-subsets of [n] in lexicographic order.
void for_each_k_subset(int n, int k, const std::function<void(const Bitset&)>& fn);

// C(n,k) as an exact 64-bit count; throws std::overflow_error beyond 2^62.
std::uint64_t binomial(int n, int k);

}  // namespace cliquelab
