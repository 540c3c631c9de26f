#include <doctest.h>

#include <stdexcept>

#include <algorithm>

#include "cliquelab/errors.hpp"
#include "cliquelab/fixtures.hpp"
#include "cliquelab/generators.hpp"
#include "cliquelab/io.hpp"
#include "cliquelab/switching.hpp"
#include "test_helpers.hpp"

using namespace cliquelab;

namespace {

Bitset edges_of(int n, std::initializer_list<std::pair<int, int>> pairs) {
  Bitset out(edge_count(n));
  for (auto [u, v] : pairs) out.set(edge_id(u, v, n));
  return out;
}

bool same_family(std::vector<Bitset> a, std::vector<Bitset> b) {
  std::sort(a.begin(), a.end(), Bitset::lex_less);
  std::sort(b.begin(), b.end(), Bitset::lex_less);
  return a == b;
}

}  // namespace

TEST_CASE("figure formula trees: root branch, leaf sets, level sets") {
  const FlatCNF f = fixtures::figure_formula();
  const Restriction rho = all_star_restriction_full(5);

  TreeBuildResult res = build_trees(f, rho, 2, TreeMode::TOnly);
  const CliqueEdgeTree& tree = res.tree;

  // the root branches on the first clause into vertex labels {0,1} and {0,2}
  REQUIRE(tree.nodes[0].children.size() == 2);
  CHECK(tree.nodes[0].clause == 0);
  CHECK(tree.nodes[tree.nodes[0].children[0]].vertices == vertex_set(5, {0, 1}));
  CHECK(tree.nodes[tree.nodes[0].children[1]].vertices == vertex_set(5, {0, 2}));

  CHECK(same_family(res.levels.a_up_to(2), fixtures::figure_a2()));
  CHECK(same_family(res.levels.b_at(3), fixtures::figure_b3()));
}

TEST_CASE("constant-true CNF gives a root leaf") {
  const FlatCNF f(4);
  TreeBuildResult res = build_trees(f, all_star_restriction_full(4), 2, TreeMode::TOnly);
  CHECK(res.tree.nodes.size() == 1);
  CHECK(res.tree.nodes[0].t_leaf);
  REQUIRE(res.levels.a_up_to(0).size() == 1);
  CHECK(res.levels.a_up_to(0)[0].none());
}

TEST_CASE("unsimplified CNF is rejected") {
  const FlatCNF f = fixtures::figure_formula();
  Bitset full(edge_count(5));
  full.set_all();
  Bitset ones(edge_count(5));
  ones.set(edge_id(0, 1, 5));
  CHECK_THROWS_AS(build_trees(f, Restriction(full, ones), 2, TreeMode::TOnly),
                  std::invalid_argument);
  CHECK_THROWS_AS(cnf_to_dnf(f, Restriction(full, ones), 6, 3), std::invalid_argument);
}

TEST_CASE("level width bound |B_d| <= s^d on random CNFs") {
  RngStream rng(55, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(3));
    FlatCNF f = random_cnf(n, 5, 3, rng);
    Bitset full(edge_count(n));
    full.set_all();
    Restriction rho = sample_restriction(full, 0.7, rng);
    FlatCNF fs = simplify_under(f, rho);
    TreeBuildResult res = build_trees(fs, rho, 2, TreeMode::TOnly);
    const int s = fs.width();
    long long bound = 1;
    for (int d = 0; d <= 3; ++d) {
      CHECK(static_cast<long long>(res.levels.b_at(d).size()) <= bound);
      bound *= std::max(s, 1);
    }
    // every depth-(d+1) label gained at least one and at most two vertices
    // per step
    for (int d = 0; d <= 3; ++d)
      for (const auto& b : res.levels.b_at(d)) {
        CHECK(static_cast<int>(b.count()) >= d + (d > 0 ? 1 : 0));
        CHECK(static_cast<int>(b.count()) <= 2 * d);
      }
  }
}

TEST_CASE("cnf_to_dnf on the figure formula at t=6") {
  const FlatCNF f = fixtures::figure_formula();
  const Restriction rho = all_star_restriction_full(5);
  SwitchResult res = cnf_to_dnf(f, rho, 6, 3, /*compute_exact_loss=*/true);

  CHECK(res.depth_used == 2);
  CHECK(same_family(res.a_family, fixtures::figure_a2()));
  CHECK(res.realized_width <= 6);

  // Z is preserved exactly here
  CliqueFamily zf = clique_implication_set(f, rho, 3);
  CliqueFamily zg = clique_implication_set(res.dnf, rho, 3);
  CliqueFamily expected(5, 3);
  for (const auto& a : fixtures::figure_z_members()) expected.insert(a);
  CHECK(zf == expected);
  CHECK(zg == expected);
  CHECK(res.exact_loss == 0);
  CHECK(Ratio(0) <= res.loss_bound);

  // soundness on every input
  testing::for_each_graph(5, [&](const Bitset& u) {
    CHECK(evaluate(res.dnf, u) <= evaluate(f, u));
  });
}

TEST_CASE("cnf_to_dnf keeps constants") {
  const Restriction rho = all_star_restriction_full(4);
  SwitchResult res = cnf_to_dnf(FlatCNF(4), rho, 3, 3, true);
  CHECK(res.dnf.is_const_true());
  CHECK(res.exact_loss == 0);

  FlatCNF false_cnf(4);
  false_cnf.clauses.push_back(Bitset(edge_count(4)));
  SwitchResult res2 = cnf_to_dnf(false_cnf, rho, 3, 3, true);
  CHECK(res2.dnf.is_const_false());
  CHECK(res2.exact_loss == 0);
}

TEST_CASE("cnf_to_dnf soundness and loss bound on random instances") {
  RngStream rng(56, 0);
  int nonzero_loss = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(4));  // 5..8
    FlatCNF f = random_cnf(n, 6, 3, rng);
    Bitset full(edge_count(n));
    full.set_all();
    Restriction rho = sample_restriction(full, trial % 2 ? 0.5 : 0.8, rng);
    FlatCNF fs = simplify_under(f, rho);
    const int t = 1 + static_cast<int>(rng.below(8));
    SwitchResult res = cnf_to_dnf(fs, rho, t, 3, true);

    CHECK(res.realized_width <= t);
    CHECK(Ratio(res.exact_loss.value()) <= res.loss_bound);
    if (res.exact_loss.value() > 0) ++nonzero_loss;

    Bitset support(edge_count(n));
    for (const auto& c : fs.clauses) support |= c;
    for (const auto& m : res.dnf.monomials) support |= m;
    if (support.count() <= 16)
      testing::for_each_subset(support, n, [&](const Bitset& u) {
        CHECK(evaluate(res.dnf, u) <= evaluate(fs, u));
      });
  }
  CHECK(nonzero_loss > 0);  // the bound is exercised, not vacuous
}

TEST_CASE("claim 7 holds on the figure formula and degenerate cases") {
  Claim7Report rep = check_claim7(fixtures::figure_formula(), all_star_restriction_full(5), 3);
  CHECK(rep.all_pass);
  REQUIRE(rep.items.size() == 5);
  for (const auto& item : rep.items) CHECK(item.pass);

  Claim7Report trivial = check_claim7(FlatCNF(5), all_star_restriction_full(5), 3);
  CHECK(trivial.all_pass);
}

TEST_CASE("claim 7 on random instances") {
  RngStream rng(57, 0);
  for (int trial = 0; trial < 100; ++trial) {
    FlatCNF f = random_cnf(5, 4, 3, rng);
    Bitset full(edge_count(5));
    full.set_all();
    Restriction rho = sample_restriction(full, trial % 2 ? 0.5 : 1.0, rng);
    Claim7Report rep = check_claim7(simplify_under(f, rho), rho, 3);
    CHECK(rep.all_pass);
  }
}

TEST_CASE("claim 7 respects budgets") {
  CHECK_THROWS_AS(check_claim7(fixtures::figure_formula(), all_star_restriction_full(5), 3,
                               ExhaustiveBudget{4, 1u << 22}),
                  ResourceError);
  CHECK_THROWS_AS(check_claim7(fixtures::figure_formula(), all_star_restriction_full(5), 3,
                               ExhaustiveBudget{1u << 20, 4}),
                  ResourceError);
}

TEST_CASE("transversal tree worked examples") {
  const int n = 6;
  const Bitset a = edges_of(n, {{0, 1}});
  const Bitset b = edges_of(n, {{2, 3}});
  const Bitset c = edges_of(n, {{4, 5}});

  // {{a,b},{c}} → leaves {a,c},{b,c}
  {
    TreeBuildResult res = transversal_tree({a | b, c}, n, 10);
    REQUIRE(res.dfs_leaf_labels.size() == 2);
    CHECK(res.dfs_leaf_labels[0] == (a | c));
    CHECK(res.dfs_leaf_labels[1] == (b | c));
  }
  // single monomial {a,b} → unit clauses {a},{b}
  {
    TreeBuildResult res = transversal_tree({a | b}, n, 10);
    REQUIRE(res.dfs_leaf_labels.size() == 2);
    CHECK(res.dfs_leaf_labels[0] == a);
    CHECK(res.dfs_leaf_labels[1] == b);
  }
  // {{a},{b}} → single leaf {a,b} at depth 2
  {
    TreeBuildResult res = transversal_tree({a, b}, n, 10);
    REQUIRE(res.dfs_leaf_labels.size() == 1);
    CHECK(res.dfs_leaf_labels[0] == (a | b));
    CHECK(res.levels.h_at(2).size() == 1);
  }

  CHECK_THROWS_AS(transversal_tree({a, Bitset(edge_count(n))}, n, 10), std::invalid_argument);
}

TEST_CASE("dnf_to_cnf examples") {
  const int n = 6;
  const Bitset a = edges_of(n, {{0, 1}});
  const Bitset b = edges_of(n, {{2, 3}});
  Bitset full(edge_count(n));
  full.set_all();

  // (a)∨(b) with a fixed to 1: constant true
  {
    Bitset ones(edge_count(n));
    ones.set(edge_id(0, 1, n));
    auto res = dnf_to_cnf(FlatDNF(n, {a, b}), Restriction(full, ones), 1);
    REQUIRE(std::holds_alternative<FlatCNF>(res));
    CHECK(std::get<FlatCNF>(res).is_const_true());
  }
  // (a)∨(b) all-star at s=1: failure with witness {a,b}
  {
    auto res = dnf_to_cnf(FlatDNF(n, {a, b}), all_star_restriction(full), 1);
    REQUIRE(std::holds_alternative<UnswitchFailure>(res));
    CHECK(std::get<UnswitchFailure>(res).witness == (a | b));
  }
  // single monomial {a,b} at s=2 always succeeds
  {
    auto res = dnf_to_cnf(FlatDNF(n, {a | b}), all_star_restriction(full), 2);
    REQUIRE(std::holds_alternative<FlatCNF>(res));
    CHECK(std::get<FlatCNF>(res).clauses.size() == 2);
  }
  // constant false in, constant false out
  {
    auto res = dnf_to_cnf(FlatDNF(n), all_star_restriction(full), 2);
    REQUIRE(std::holds_alternative<FlatCNF>(res));
    CHECK(std::get<FlatCNF>(res).is_const_false());
  }
}

TEST_CASE("transversal level sets: sizes and widths") {
  RngStream rng(60, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int t = 1 + static_cast<int>(rng.below(4));
    FlatDNF g = random_dnf(8, 6, t, rng);
    const int limit = 1 + static_cast<int>(rng.below(5));
    TreeBuildResult res = transversal_tree(g.monomials, 8, limit);
    long long cap = 1;
    for (int d = 0; d <= limit; ++d) {
      for (const auto& h : res.levels.h_at(d)) CHECK(h.count() == static_cast<std::size_t>(d));
      CHECK(static_cast<long long>(res.levels.h_at(d).size()) <= cap);
      cap *= t;
    }
  }
}

TEST_CASE("claim 7 on wider instances at n=6") {
  RngStream rng(65, 0);
  for (int trial = 0; trial < 20; ++trial) {
    FlatCNF f = random_cnf(6, 5, 3, rng);
    Bitset full(edge_count(6));
    full.set_all();
    Restriction rho = sample_restriction(full, trial % 2 ? 0.6 : 1.0, rng);
    Claim7Report rep = check_claim7(simplify_under(f, rho), rho, 3);
    CHECK(rep.all_pass);
  }
}

TEST_CASE("dnf_to_cnf equivalence on random instances") {
  RngStream rng(58, 0);
  int successes = 0, failures = 0, iterations = 0;
  while (successes < 120 || failures < 20) {
    REQUIRE(++iterations < 20000);
    const int t = 1 + static_cast<int>(rng.below(3));
    const int s = 1 + static_cast<int>(rng.below(4));
    FlatDNF g = random_dnf(8, 6, t, rng);
    Bitset full(edge_count(8));
    full.set_all();
    Restriction rho = sample_restriction(full, 1.0 / (2 * t), rng);
    auto res = dnf_to_cnf(g, rho, s);
    if (std::holds_alternative<UnswitchFailure>(res)) {
      const auto& w = std::get<UnswitchFailure>(res).witness;
      CHECK(w.count() == static_cast<std::size_t>(s) + 1);
      CHECK(w.subset_of(rho.stars()));
      ++failures;
      continue;
    }
    const FlatCNF& cnf = std::get<FlatCNF>(res);
    CHECK(cnf.width() <= s);
    FlatDNF gs = simplify_under(g, rho);
    Bitset support(edge_count(8));
    for (const auto& m : gs.monomials) support |= m;
    testing::for_each_subset(support, 8, [&](const Bitset& u) {
      CHECK(evaluate(cnf, u) == evaluate(gs, u));
    });
    ++successes;
  }
}

TEST_CASE("trees and dumps are deterministic") {
  const FlatCNF f = fixtures::figure_formula();
  const Restriction rho = all_star_restriction_full(5);
  TreeBuildResult a = build_trees(f, rho, 2, TreeMode::TAndTPrime);
  TreeBuildResult b = build_trees(f, rho, 2, TreeMode::TAndTPrime);
  CHECK(write_tree(a.tree) == write_tree(b.tree));
  CHECK(write_tree_dot(a.tree) == write_tree_dot(b.tree));
}

TEST_CASE("figure tree dump matches the golden file byte for byte") {
  TreeBuildResult res =
      build_trees(fixtures::figure_formula(), all_star_restriction_full(5), 0, TreeMode::TAndTPrime);
  const std::string golden = slurp_file(std::string(GOLDEN_DIR) + "/figure_tree.txt");
  CHECK(write_tree(res.tree) == golden);
}

TEST_CASE("tree node budget is enforced") {
  RngStream rng(59, 0);
  FlatCNF f = random_cnf(8, 6, 3, rng);
  const Restriction rho = all_star_restriction_full(8);
  FlatCNF fs = simplify_under(f, rho);
  CHECK_THROWS_AS(build_trees(fs, rho, 6, TreeMode::TAndTPrime, TreeBudget{2}), ResourceError);
}
