#pragma once

#include <vector>

#include "cliquelab/bitset.hpp"
#include "cliquelab/circuit.hpp"
#include "cliquelab/restriction.hpp"

namespace cliquelab {

// AND of OR-clauses over edge variables. An empty clause list is constant
// true. A clause with no edges is unsatisfiable, so a CNF containing one is
// constant false; that encoding only arises from switching a constant-false
// DNF and is preserved through merges.
struct FlatCNF {
  int n = 0;
  std::vector<Bitset> clauses;

  FlatCNF() = default;
  explicit FlatCNF(int n_) : n(n_) {}
  FlatCNF(int n_, std::vector<Bitset> cs) : n(n_), clauses(std::move(cs)) {}

  int width() const;
  bool is_const_true() const { return clauses.empty(); }
  bool is_const_false() const;
};

// OR of AND-monomials. An empty monomial list is constant false; an empty
// monomial makes the whole form constant true.
struct FlatDNF {
  int n = 0;
  std::vector<Bitset> monomials;

  FlatDNF() = default;
  explicit FlatDNF(int n_) : n(n_) {}
  FlatDNF(int n_, std::vector<Bitset> ms) : n(n_), monomials(std::move(ms)) {}

  int width() const;
  bool is_const_false() const { return monomials.empty(); }
  bool is_const_true() const;
};

bool evaluate(const FlatCNF& f, const Bitset& edges);
bool evaluate(const FlatDNF& f, const Bitset& edges);

// Depth-2 circuits: top gate over one gate per clause/monomial.
MonotoneCircuit to_circuit(const FlatCNF& f);
MonotoneCircuit to_circuit(const FlatDNF& f);

// i_𝒜: the monotone DNF whose monomials are the members of `family`. With
// pruning, subsumed (superset) monomials are dropped and the rest sorted,
// which never changes the function.
FlatDNF build_dnf(const std::vector<Bitset>& family, int n, bool prune_subsumed = true);

// Remove clauses satisfied by ρ (those containing a 1-edge). Survivors are
// all-★; if everything is satisfied the result is constant true.
FlatCNF simplify_under(const FlatCNF& f, const Restriction& rho);
bool is_simplified_under(const FlatCNF& f, const Restriction& rho);

// Drop 1-edges from monomials. A monomial with all edges fixed makes the
// result constant true (canonicalized to a single empty monomial).
FlatDNF simplify_under(const FlatDNF& g, const Restriction& rho);

}  // namespace cliquelab
