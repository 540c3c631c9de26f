#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cliquelab/bitset.hpp"
#include "cliquelab/circuit.hpp"
#include "cliquelab/flat.hpp"
#include "cliquelab/restriction.hpp"

namespace cliquelab {

// A set of k-vertex subsets of [n], kept sorted (lexicographic) and unique.
struct CliqueFamily {
  int n = 0;
  int k = 0;
  std::vector<Bitset> members;

  CliqueFamily() = default;
  CliqueFamily(int n_, int k_) : n(n_), k(k_) {}

  void insert(const Bitset& a);
  bool contains(const Bitset& a) const;
  std::size_t size() const { return members.size(); }

  bool operator==(const CliqueFamily&) const = default;
};

// Members of `a` missing from `b`.
CliqueFamily family_difference(const CliqueFamily& a, const CliqueFamily& b);

// The k-clique indicator as a DNF: one monomial K(A) per A in C([n],k).
FlatDNF clique_indicator(int n, int k);

// Z_ρ(f) through the closure characterization: valid clique sets are closed
// under union and the least input satisfying a restricted clique monomial is
// K(A) ∩ ρ⁻¹(★), so the maximal set is exactly the A with f(K(A) ∪ ρ⁻¹(1))
// true. The definitional oracle below guards this shortcut.
CliqueFamily clique_implication_set(const std::function<bool(const Bitset&)>& f, int n,
                                    const Restriction& rho, int k);
CliqueFamily clique_implication_set(const MonotoneCircuit& f, const Restriction& rho, int k);
CliqueFamily clique_implication_set(const FlatCNF& f, const Restriction& rho, int k);
CliqueFamily clique_implication_set(const FlatDNF& f, const Restriction& rho, int k);

// Definition-level oracle: per candidate clique, check the pointwise
// inequality over every ★ assignment, then re-verify the union. Exponential;
// guarded by `ttable_budget` (throws ResourceError).
CliqueFamily clique_implication_set_definitional(const MonotoneCircuit& f, const Restriction& rho,
                                                 int k, std::uint64_t ttable_budget = 1u << 22);

}  // namespace cliquelab
