#include "cliquelab/maximal_free.hpp"

#include <stdexcept>

#include "cliquelab/errors.hpp"

namespace cliquelab {

bool edge_completes_clique(const Graph& g, int u, int v, int k) {
  // a k-clique through the new edge needs a (k-2)-clique in the common
  // neighborhood of u and v
  if (k <= 1) return true;
  if (k == 2) return true;
  Bitset common(static_cast<std::size_t>(g.n));
  for (int w = 0; w < g.n; ++w) {
    if (w == u || w == v) continue;
    if (g.has_edge(u, w) && g.has_edge(v, w)) common.set(static_cast<std::size_t>(w));
  }
  if (common.count() < static_cast<std::size_t>(k - 2)) return false;
  if (k == 3) return true;
  // induced subgraph on the common neighborhood
  const auto verts = common.to_vector();
  Graph sub(static_cast<int>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (g.has_edge(verts[i], verts[j])) sub.add_edge(static_cast<int>(i), static_cast<int>(j));
  return has_k_clique(sub, k - 2);
}

bool is_maximal_clique_free(const Graph& g, int k) {
  if (k < 2) throw std::invalid_argument("is_maximal_clique_free: k must be >= 2");
  if (has_k_clique(g, k)) return false;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (!g.has_edge(u, v) && !edge_completes_clique(g, u, v, k)) return false;
  return true;
}

MaximalFreeFamily enumerate_maximal_clique_free(int n, int k, std::uint64_t graph_budget) {
  if (k < 2) throw std::invalid_argument("enumerate_maximal_clique_free: k must be >= 2");
  const std::size_t m = edge_count(n);
  if (m >= 63 || (std::uint64_t{1} << m) > graph_budget)
    throw ResourceError("enumerate_maximal_clique_free: 2^|K([n])| exceeds the graph budget");
  MaximalFreeFamily out{n, k, {}};
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Graph g(n);
    for (std::size_t e = 0; e < m; ++e)
      if ((mask >> e) & 1) g.edges.set(e);
    if (is_maximal_clique_free(g, k)) out.graphs.push_back(std::move(g));
  }
  return out;
}

FlatCNF clique_cnf(int n, int k, std::uint64_t graph_budget) {
  if (k < 2 || k > n) throw std::invalid_argument("clique_cnf: need 2 <= k <= n");
  MaximalFreeFamily fam = enumerate_maximal_clique_free(n, k, graph_budget);
  Bitset full(edge_count(n));
  full.set_all();
  FlatCNF out(n);
  out.clauses.reserve(fam.graphs.size());
  for (const auto& h : fam.graphs) out.clauses.push_back(full - h.edges);
  return out;
}

Graph extend_maximal(const Graph& h, int k, int k2) {
  if (k2 < k) throw std::invalid_argument("extend_maximal: k2 must be >= k");
  if (!is_maximal_clique_free(h, k))
    throw std::invalid_argument("extend_maximal: input is not maximal k-clique-free");
  if (k2 == k) return h;
  const int n2 = h.n + (k2 - k);
  Graph out(n2);
  for (int u = 0; u < h.n; ++u)
    for (int v = u + 1; v < h.n; ++v)
      if (h.has_edge(u, v)) out.add_edge(u, v);
  for (int w = h.n; w < n2; ++w)
    for (int v = 0; v < n2; ++v)
      if (v != w && !out.has_edge(std::min(v, w), std::max(v, w))) out.add_edge(v, w);
  if (!is_maximal_clique_free(out, k2))
    throw std::logic_error("extend_maximal: universal-vertex extension failed the maximality oracle");
  return out;
}

}  // namespace cliquelab
