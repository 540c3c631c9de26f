#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "cliquelab/bitset.hpp"
#include "cliquelab/clique_sets.hpp"
#include "cliquelab/flat.hpp"
#include "cliquelab/restriction.hpp"

namespace cliquelab {

using Ratio = boost::rational<long long>;

// The paired decision trees of the CNF-to-DNF switch. Every node carries a
// vertex label A(v) and an edge label G(v) with A(v) = union of G(v)'s
// endpoints; children extend the parent by one edge of the branch clause.
// Node order is DFS preorder with clause edges taken in ascending id order,
// which makes trees reproducible byte for byte.
struct TreeNode {
  Bitset vertices;  // A(v)
  Bitset edges;     // G(v)
  int clause = -1;  // branch clause index; -1 when none
  std::vector<std::uint32_t> children;
  int depth = 0;
  bool in_t = false;     // member of the clique tree T (not only of T′)
  bool t_leaf = false;   // K(A(v)) satisfies every clause
  bool tp_leaf = false;  // G(v) satisfies every clause / hits every monomial
  bool expanded = true;  // false when cut off by a depth limit
};

struct CliqueEdgeTree {
  int n = 0;
  std::vector<TreeNode> nodes;  // nodes[0] is the root
};

// Node labels bucketed by exact depth; families are sorted and deduplicated.
struct LevelSets {
  std::vector<std::vector<Bitset>> t_leaf_labels;   // vertex sets
  std::vector<std::vector<Bitset>> t_node_labels;   // vertex sets (ℬ buckets)
  std::vector<std::vector<Bitset>> tp_leaf_labels;  // edge sets (𝒢 buckets)
  std::vector<std::vector<Bitset>> h_node_labels;   // edge sets (ℋ buckets)
  int t_depth = 0;   // deepest T node
  int tp_depth = 0;  // deepest node overall

  std::vector<Bitset> a_up_to(int d) const;  // 𝒜_d: T-leaf labels at depth <= d
  std::vector<Bitset> b_at(int d) const;     // ℬ_d: all T-node labels at depth d
  std::vector<Bitset> g_up_to(int d) const;  // 𝒢_d: T′-leaf labels at depth <= d
  std::vector<Bitset> h_at(int d) const;     // ℋ_d: all labels at depth d
};

struct TreeBuildResult {
  CliqueEdgeTree tree;
  LevelSets levels;
  std::vector<Bitset> dfs_leaf_labels;  // leaf edge labels in DFS order, duplicates kept
};

struct TreeBudget {
  std::uint64_t max_nodes = 1u << 20;
};

enum class TreeMode {
  TOnly,       // clique tree to depth depth_limit+1; deeper nodes recorded, unexpanded
  TAndTPrime,  // full T and T′; depth_limit ignored
};

// Lemma-3 trees for a CNF already simplified under ρ (no clause carries a
// 1-edge). A node is a T-leaf when K(A(v)) satisfies every clause and a
// T′-leaf when G(v) already does; internal nodes branch on every edge of the
// first clause their label misses.
TreeBuildResult build_trees(const FlatCNF& f, const Restriction& rho, int depth_limit,
                            TreeMode mode, TreeBudget budget = {});

// Transversal tree of a monomial list: a node is a leaf when G(w) hits every
// monomial, else it branches on the first untouched monomial. Leaf labels in
// DFS order are the clauses of the equivalent CNF. Nodes at depth_limit are
// recorded in ℋ_{depth_limit} and left unexpanded; a nonempty bucket there is
// the caller's failure signal, not an error.
TreeBuildResult transversal_tree(const std::vector<Bitset>& monomials, int n, int depth_limit,
                                 TreeBudget budget = {});

// CNF→DNF switch (one-sided, deterministic): g = i_{K(𝒜_d)} over the ★
// edges, with d the largest depth whose clique monomials fit width t.
struct SwitchResult {
  FlatDNF dnf;                 // monomials K(A) ∩ ρ⁻¹(★), sorted by A
  int depth_used = 0;          // d
  int realized_width = 0;      // max ★ edges per monomial, <= C(2d,2) <= t
  Ratio loss_bound{0};         // C(n,k) (s k / n)^{d+1}, s = realized clause width
  double loss_bound_stated = 0;  // the coarser C(n,k) (s k / n)^{sqrt(t/2)} form
  std::optional<std::int64_t> exact_loss;  // |Z_ρ(f) \ Z_ρ(g)| when computed
  std::vector<Bitset> a_family;  // 𝒜_d
  std::vector<Bitset> b_family;  // ℬ_{d+1}
};

SwitchResult cnf_to_dnf(const FlatCNF& f, const Restriction& rho, int t, int k,
                        bool compute_exact_loss = false, TreeBudget budget = {});

// DNF→CNF switch under a restriction: equivalence when the transversal tree
// of the surviving ★ monomials stays below depth s+1, otherwise a witness of
// s+1 edges all left free by ρ.
struct UnswitchFailure {
  Bitset witness;
};

std::variant<FlatCNF, UnswitchFailure> dnf_to_cnf(const FlatDNF& g, const Restriction& rho, int s,
                                                  TreeBudget budget = {});

// Exhaustive verification of the five level-set relations on one instance.
struct Claim7Item {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample or note
};

struct Claim7Report {
  bool all_pass = false;
  std::vector<Claim7Item> items;
  int t_depth = 0;
  int tp_depth = 0;
  std::size_t tree_nodes = 0;
};

struct ExhaustiveBudget {
  std::uint64_t max_nodes = 1u << 20;
  std::uint64_t max_assignments = 1u << 22;
};

Claim7Report check_claim7(const FlatCNF& f, const Restriction& rho, int k,
                          ExhaustiveBudget budget = {});

}  // namespace cliquelab
