#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cliquelab/bitset.hpp"
#include "cliquelab/graph.hpp"

namespace cliquelab::testing {

// brute-force clique oracle: enumerate every k-subset
inline bool brute_force_has_clique(const Graph& g, int k) {
  if (k == 1) return g.n >= 1;
  bool found = false;
  for_each_k_subset(g.n, k, [&](const Bitset& a) {
    if (found) return;
    if (clique_edge_set(a, g.n).subset_of(g.edges)) found = true;
  });
  return found;
}

// run fn over every subset of `support`, passing the subset as an edge set
inline void for_each_subset(const Bitset& support, int n,
                            const std::function<void(const Bitset&)>& fn) {
  const std::vector<int> sup = support.to_vector();
  const std::uint64_t limit = std::uint64_t{1} << sup.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    Bitset u(edge_count(n));
    for (std::size_t i = 0; i < sup.size(); ++i)
      if ((mask >> i) & 1) u.set(static_cast<std::size_t>(sup[i]));
    fn(u);
  }
}

// every graph on n vertices (all 2^C(n,2) edge subsets)
inline void for_each_graph(int n, const std::function<void(const Bitset&)>& fn) {
  Bitset all(edge_count(n));
  all.set_all();
  for_each_subset(all, n, fn);
}

}  // namespace cliquelab::testing
