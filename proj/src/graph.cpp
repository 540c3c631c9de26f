#include "cliquelab/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cliquelab {

EdgeId edge_id(int u, int v, int n) {
  if (u == v) throw std::invalid_argument("edge_id: self loop " + std::to_string(u));
  if (u < 0 || v < 0 || u >= n || v >= n)
    throw std::invalid_argument("edge_id: vertex out of range for n=" + std::to_string(n));
  if (u > v) std::swap(u, v);
  // rank of (u,v) among pairs in lexicographic order
  const std::size_t offset = static_cast<std::size_t>(u) * (n - 1) - static_cast<std::size_t>(u) * (u - 1) / 2;
  return static_cast<EdgeId>(offset + (v - u - 1));
}

std::pair<int, int> edge_endpoints(EdgeId e, int n) {
  std::size_t rest = e;
  for (int u = 0; u < n - 1; ++u) {
    const std::size_t row = static_cast<std::size_t>(n - 1 - u);
    if (rest < row) return {u, u + 1 + static_cast<int>(rest)};
    rest -= row;
  }
  throw std::invalid_argument("edge_endpoints: id out of range for n=" + std::to_string(n));
}

Graph empty_graph(int n) { return Graph(n); }

Graph complete_graph(int n) {
  Graph g(n);
  g.edges.set_all();
  return g;
}

Bitset clique_edge_set(const Bitset& vertices, int n) {
  Bitset out(edge_count(n));
  for (std::size_t u = vertices.first(); u != Bitset::npos; u = vertices.next(u))
    for (std::size_t v = vertices.next(u); v != Bitset::npos; v = vertices.next(v))
      out.set(edge_id(static_cast<int>(u), static_cast<int>(v), n));
  return out;
}

Graph clique_edges(const Bitset& vertices, int n) { return Graph(n, clique_edge_set(vertices, n)); }

Bitset edge_endpoints_union(const Bitset& edges, int n) {
  Bitset out(static_cast<std::size_t>(n));
  for (std::size_t e = edges.first(); e != Bitset::npos; e = edges.next(e)) {
    auto [u, v] = edge_endpoints(static_cast<EdgeId>(e), n);
    out.set(u);
    out.set(v);
  }
  return out;
}

Bitset vertex_set(int n, std::initializer_list<int> vs) {
  Bitset out(static_cast<std::size_t>(n));
  for (int v : vs) out.set(static_cast<std::size_t>(v));
  return out;
}

namespace {

bool clique_search(const std::vector<Bitset>& adj, const Bitset& cand, int need) {
  if (need == 0) return true;
  if (cand.count() < static_cast<std::size_t>(need)) return false;
  for (std::size_t v = cand.first(); v != Bitset::npos; v = cand.next(v)) {
    // only extend with larger vertices to visit each set once
    Bitset next = cand & adj[v];
    for (std::size_t w = next.first(); w != Bitset::npos && w <= v; w = next.next(w)) next.reset(w);
    if (clique_search(adj, next, need - 1)) return true;
  }
  return false;
}

}  // namespace

bool has_k_clique(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("has_k_clique: k must be >= 1");
  if (k == 1) return g.n >= 1;
  if (k > g.n) return false;
  std::vector<Bitset> adj(g.n, Bitset(static_cast<std::size_t>(g.n)));
  for (std::size_t e = g.edges.first(); e != Bitset::npos; e = g.edges.next(e)) {
    auto [u, v] = edge_endpoints(static_cast<EdgeId>(e), g.n);
    adj[u].set(v);
    adj[v].set(u);
  }
  Bitset all(static_cast<std::size_t>(g.n));
  all.set_all();
  return clique_search(adj, all, k);
}

Graph sample_er_graph(int n, double edge_prob, RngStream& rng) {
  if (edge_prob < 0.0 || edge_prob > 1.0)
    throw std::invalid_argument("sample_er_graph: edge_prob outside [0,1]");
  Graph g(n);
  const std::size_t m = edge_count(n);
  for (std::size_t e = 0; e < m; ++e)
    if (rng.bernoulli(edge_prob)) g.edges.set(e);
  return g;
}

void for_each_k_subset(int n, int k, const std::function<void(const Bitset&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Bitset s(static_cast<std::size_t>(n));
    for (int v : idx) s.set(static_cast<std::size_t>(v));
    fn(s);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > (static_cast<unsigned __int128>(1) << 62))
      throw std::overflow_error("binomial: value exceeds 2^62");
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace cliquelab
