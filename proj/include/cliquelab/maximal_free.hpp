#pragma once

#include <cstdint>
#include <vector>

#include "cliquelab/flat.hpp"
#include "cliquelab/graph.hpp"

namespace cliquelab {

// Graphs with no k-clique where every single-edge addition creates one.
// Labeled graphs, no isomorphism reduction.
struct MaximalFreeFamily {
  int n = 0;
  int k = 0;
  std::vector<Graph> graphs;  // enumeration order: ascending edge-set integer
};

// Does adding edge (u,v) to g complete a k-clique?
bool edge_completes_clique(const Graph& g, int u, int v, int k);

bool is_maximal_clique_free(const Graph& g, int k);

// Brute force over all 2^C(n,2) graphs; throws ResourceError past the budget.
MaximalFreeFamily enumerate_maximal_clique_free(int n, int k,
                                                std::uint64_t graph_budget = std::uint64_t{1} << 22);

// Depth-2 CLIQUE with a top AND gate: one clause per maximal k-clique-free
// graph H, listing the non-edges of H. Equals clique_indicator(n,k).
FlatCNF clique_cnf(int n, int k, std::uint64_t graph_budget = std::uint64_t{1} << 22);

// Add k2-k vertices adjacent to everything. Input must be maximal
// k-clique-free; the result is checked to be maximal k2-clique-free.
Graph extend_maximal(const Graph& h, int k, int k2);

}  // namespace cliquelab
