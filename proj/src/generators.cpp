#include "cliquelab/generators.hpp"

#include <algorithm>
#include <stdexcept>

namespace cliquelab {

namespace {

Bitset random_edges(int n, int count, RngStream& rng) {
  const std::size_t m = edge_count(n);
  if (count > static_cast<int>(m)) throw std::invalid_argument("random_edges: width exceeds K([n])");
  Bitset out(m);
  int placed = 0;
  while (placed < count) {
    const auto e = static_cast<std::size_t>(rng.below(m));
    if (!out.test(e)) {
      out.set(e);
      ++placed;
    }
  }
  return out;
}

std::vector<Bitset> random_groups(int n, int max_groups, int max_width, RngStream& rng) {
  const int groups = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_groups)));
  std::vector<Bitset> out;
  out.reserve(groups);
  for (int i = 0; i < groups; ++i) {
    const int width = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_width)));
    out.push_back(random_edges(n, width, rng));
  }
  return out;
}

}  // namespace

FlatCNF random_cnf(int n, int max_clauses, int max_width, RngStream& rng) {
  if (max_clauses < 1 || max_width < 1) throw std::invalid_argument("random_cnf: bad bounds");
  return FlatCNF(n, random_groups(n, max_clauses, max_width, rng));
}

FlatDNF random_dnf(int n, int max_monomials, int max_width, RngStream& rng) {
  if (max_monomials < 1 || max_width < 1) throw std::invalid_argument("random_dnf: bad bounds");
  return FlatDNF(n, random_groups(n, max_monomials, max_width, rng));
}

MonotoneCircuit random_circuit(int n, int levels, int gates_per_level, int max_fanin,
                               RngStream& rng) {
  if (levels < 1 || gates_per_level < 1 || max_fanin < 1)
    throw std::invalid_argument("random_circuit: bad shape");
  MonotoneCircuit f(n);
  const std::size_t m = edge_count(n);
  std::vector<std::uint32_t> pool;
  const int inputs = std::min<int>(static_cast<int>(m), std::max(2, gates_per_level));
  Bitset chosen = random_edges(n, inputs, rng);
  for (std::size_t e = chosen.first(); e != Bitset::npos; e = chosen.next(e))
    pool.push_back(f.add_input(static_cast<EdgeId>(e)));

  for (int level = 0; level < levels; ++level) {
    std::vector<std::uint32_t> next;
    const int count = (level == levels - 1) ? 1 : gates_per_level;
    for (int i = 0; i < count; ++i) {
      const int fanin = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_fanin)));
      std::vector<std::uint32_t> kids;
      for (int j = 0; j < fanin; ++j)
        kids.push_back(pool[static_cast<std::size_t>(rng.below(pool.size()))]);
      std::sort(kids.begin(), kids.end());
      kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
      next.push_back(rng.bernoulli(0.5) ? f.add_and(std::move(kids)) : f.add_or(std::move(kids)));
    }
    pool = std::move(next);
  }
  f.output = pool.at(0);
  return trim_reachable(f);
}

Bitset random_edge_subset(int n, double density, RngStream& rng) {
  const std::size_t m = edge_count(n);
  Bitset out(m);
  for (std::size_t e = 0; e < m; ++e)
    if (rng.bernoulli(density)) out.set(e);
  return out;
}

}  // namespace cliquelab
