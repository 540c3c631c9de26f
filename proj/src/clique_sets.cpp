#include "cliquelab/clique_sets.hpp"

#include <algorithm>
#include <stdexcept>

#include "cliquelab/errors.hpp"

namespace cliquelab {

void CliqueFamily::insert(const Bitset& a) {
  auto it = std::lower_bound(members.begin(), members.end(), a, Bitset::lex_less);
  if (it != members.end() && *it == a) return;
  members.insert(it, a);
}

bool CliqueFamily::contains(const Bitset& a) const {
  auto it = std::lower_bound(members.begin(), members.end(), a, Bitset::lex_less);
  return it != members.end() && *it == a;
}

CliqueFamily family_difference(const CliqueFamily& a, const CliqueFamily& b) {
  CliqueFamily out(a.n, a.k);
  for (const auto& m : a.members)
    if (!b.contains(m)) out.members.push_back(m);
  return out;
}

FlatDNF clique_indicator(int n, int k) {
  if (k < 2 || k > n) throw std::invalid_argument("clique_indicator: need 2 <= k <= n");
  FlatDNF out(n);
  for_each_k_subset(n, k, [&](const Bitset& a) { out.monomials.push_back(clique_edge_set(a, n)); });
  return out;
}

CliqueFamily clique_implication_set(const std::function<bool(const Bitset&)>& f, int n,
                                    const Restriction& rho, int k) {
  if (rho.universe.capacity() != edge_count(n))
    throw std::invalid_argument("clique_implication_set: restriction capacity mismatch");
  CliqueFamily out(n, k);
  for_each_k_subset(n, k, [&](const Bitset& a) {
    if (f(clique_edge_set(a, n) | rho.ones)) out.members.push_back(a);
  });
  return out;  // k-subset order is already lexicographic
}

CliqueFamily clique_implication_set(const MonotoneCircuit& f, const Restriction& rho, int k) {
  return clique_implication_set([&](const Bitset& u) { return evaluate(f, u); }, f.n, rho, k);
}

CliqueFamily clique_implication_set(const FlatCNF& f, const Restriction& rho, int k) {
  return clique_implication_set([&](const Bitset& u) { return evaluate(f, u); }, f.n, rho, k);
}

CliqueFamily clique_implication_set(const FlatDNF& f, const Restriction& rho, int k) {
  return clique_implication_set([&](const Bitset& u) { return evaluate(f, u); }, f.n, rho, k);
}

CliqueFamily clique_implication_set_definitional(const MonotoneCircuit& f, const Restriction& rho,
                                                 int k, std::uint64_t ttable_budget) {
  const int n = f.n;
  const Bitset stars = rho.stars();
  const std::vector<int> star_list = stars.to_vector();
  if (star_list.size() >= 63 || binomial(n, k) * (std::uint64_t{1} << star_list.size()) > ttable_budget)
    throw ResourceError("definitional Z oracle: assignment enumeration exceeds budget");

  // u for a mask over the ★ edges, with the 1-edges always present
  auto assignment = [&](std::uint64_t mask) {
    Bitset u = rho.ones;
    for (std::size_t i = 0; i < star_list.size(); ++i)
      if ((mask >> i) & 1) u.set(static_cast<std::size_t>(star_list[i]));
    return u;
  };

  CliqueFamily z(n, k);
  for_each_k_subset(n, k, [&](const Bitset& a) {
    // the restricted monomial K(A) is satisfied exactly above this base mask
    std::uint64_t base = 0;
    Bitset base_edges = clique_edge_set(a, n) & stars;
    for (std::size_t i = 0; i < star_list.size(); ++i)
      if (base_edges.test(static_cast<std::size_t>(star_list[i]))) base |= std::uint64_t{1} << i;
    const std::uint64_t all_bits =
        star_list.empty() ? 0 : ((std::uint64_t{1} << star_list.size()) - 1);
    const std::uint64_t free_bits = all_bits & ~base;
    // walk every superset of base
    bool ok = true;
    std::uint64_t sub = free_bits;
    while (true) {
      if (!evaluate(f, assignment(base | sub))) {
        ok = false;
        break;
      }
      if (sub == 0) break;
      sub = (sub - 1) & free_bits;
    }
    if (ok) z.members.push_back(a);
  });

  // re-verify the union directly against the definition
  const std::uint64_t limit = star_list.empty() ? 1 : (std::uint64_t{1} << star_list.size());
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    Bitset u = assignment(mask);
    bool lhs = false;
    for (const auto& a : z.members)
      if ((clique_edge_set(a, n) & stars).subset_of(u)) {
        lhs = true;
        break;
      }
    if (lhs && !evaluate(f, u))
      throw std::logic_error("definitional Z oracle: union of valid cliques broke the inequality");
  }
  return z;
}

}  // namespace cliquelab
