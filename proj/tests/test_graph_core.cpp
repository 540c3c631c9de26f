#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "cliquelab/graph.hpp"
#include "cliquelab/restriction.hpp"
#include "cliquelab/rng.hpp"
#include "test_helpers.hpp"

using namespace cliquelab;

TEST_CASE("edge ids rank pairs lexicographically") {
  CHECK(edge_id(0, 1, 4) == 0);
  CHECK(edge_id(1, 0, 4) == 0);  // order-independent

  // oracle: enumerate all C(4,2)=6 pairs in lexicographic order
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) pairs.emplace_back(u, v);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    CHECK(edge_id(pairs[i].first, pairs[i].second, 4) == i);
  CHECK(edge_id(2, 3, 4) == 5);

  CHECK_THROWS_AS(edge_id(1, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(edge_id(0, 4, 4), std::invalid_argument);
}

TEST_CASE("edge id encode/decode is a bijection for every n up to 64") {
  for (int n = 2; n <= 64; ++n) {
    for (EdgeId e = 0; e < edge_count(n); ++e) {
      auto [u, v] = edge_endpoints(e, n);
      CHECK(u < v);
      CHECK(edge_id(u, v, n) == e);
    }
  }
}

TEST_CASE("clique_edges") {
  CHECK(clique_edges(Bitset(5), 5).num_edges() == 0);
  CHECK(clique_edges(vertex_set(5, {2}), 5).num_edges() == 0);

  Graph k3 = clique_edges(vertex_set(5, {1, 2, 4}), 5);
  CHECK(k3.num_edges() == 3);
  CHECK(k3.has_edge(1, 2));
  CHECK(k3.has_edge(1, 4));
  CHECK(k3.has_edge(2, 4));
}

TEST_CASE("restriction sampling extremes and concentration") {
  Bitset universe(100000);
  universe.set_all();
  RngStream rng(42, 1);

  CHECK(sample_restriction(universe, 0.0, rng).stars().none());
  CHECK(sample_restriction(universe, 1.0, rng).ones.none());

  Restriction r = sample_restriction(universe, 0.5, rng);
  const double stars = static_cast<double>(r.stars().count());
  const double sigma = std::sqrt(0.25 * 100000);
  CHECK(std::abs(stars - 50000.0) <= 3 * sigma);
}

TEST_CASE("compose identities") {
  Bitset universe(10);
  universe.set_all();
  Restriction all_star = all_star_restriction(universe);

  // composing the all-star restriction with sigma reproduces sigma
  RngStream rng(7, 0);
  Restriction sigma = sample_restriction(universe, 0.4, rng);
  Restriction composed = compose(all_star, sigma);
  CHECK(composed.ones == sigma.ones);
  CHECK(composed.universe == universe);

  // all-1 rho composes only with the empty-universe sigma
  Bitset ones = universe;
  Restriction all_one(universe, ones);
  Restriction empty_sigma = all_star_restriction(Bitset(10));
  Restriction still_one = compose(all_one, empty_sigma);
  CHECK(still_one.stars().none());

  CHECK_THROWS_AS(compose(all_one, sigma), std::invalid_argument);
}

TEST_CASE("compose is associative and stars shrink") {
  RngStream rng(11, 3);
  Bitset universe(64);
  universe.set_all();
  for (int trial = 0; trial < 50; ++trial) {
    Restriction a = sample_restriction(universe, 0.7, rng);
    Restriction b = sample_restriction(a.stars(), 0.6, rng);
    Restriction c = sample_restriction(compose(a, b).stars(), 0.5, rng);
    Restriction left = compose(compose(a, b), c);
    Restriction right = compose(a, compose(b, c));
    CHECK(left == right);
    CHECK(left.stars().subset_of(a.stars()));
  }
}

TEST_CASE("composed star rate is the product of the rates") {
  const double rates[] = {0.1, 0.5, 0.9};
  Bitset universe(10000);
  universe.set_all();
  int stream = 0;
  for (double p : rates) {
    for (double q : rates) {
      RngStream rng(123, static_cast<std::uint64_t>(stream++));
      Restriction rho = sample_restriction(universe, p, rng);
      Restriction sigma = sample_restriction(rho.stars(), q, rng);
      Restriction composed = compose(rho, sigma);
      const double expected = 10000.0 * p * q;
      const double sigma3 = 3.0 * std::sqrt(10000.0 * p * q * (1 - p * q));
      CHECK(std::abs(static_cast<double>(composed.stars().count()) - expected) <= sigma3);
    }
  }
}

TEST_CASE("restriction_to_graph") {
  Bitset full(edge_count(5));
  full.set_all();
  CHECK(restriction_to_graph(Restriction(full, full), 5).num_edges() == edge_count(5));
  CHECK(restriction_to_graph(all_star_restriction(full), 5).num_edges() == 0);

  // partial universe is rejected
  Bitset partial(edge_count(5));
  partial.set(0);
  CHECK_THROWS_AS(restriction_to_graph(all_star_restriction(partial), 5), std::invalid_argument);

  // density of the 1-edges matches ER(n, 1-p)
  RngStream rng(5, 9);
  Bitset big(edge_count(100));
  big.set_all();
  Restriction rho = sample_restriction(big, 0.3, rng);
  Graph g = restriction_to_graph(rho, 100);
  const double m = static_cast<double>(edge_count(100));
  CHECK(std::abs(static_cast<double>(g.num_edges()) - 0.7 * m) <= 3 * std::sqrt(m * 0.21));
}

TEST_CASE("has_k_clique basics") {
  Graph k3 = clique_edges(vertex_set(5, {0, 1, 2}), 5);
  CHECK(has_k_clique(k3, 3));
  CHECK_FALSE(has_k_clique(empty_graph(4), 2));

  // 5-cycle has no triangle: cross-checked against all 10 triples
  Graph c5(5);
  for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
  CHECK_FALSE(testing::brute_force_has_clique(c5, 3));
  CHECK_FALSE(has_k_clique(c5, 3));

  CHECK(has_k_clique(empty_graph(3), 1));
  CHECK_FALSE(has_k_clique(complete_graph(3), 4));
  CHECK_THROWS_AS(has_k_clique(empty_graph(3), 0), std::invalid_argument);
}

TEST_CASE("has_k_clique agrees with subset enumeration on random graphs") {
  RngStream rng(2024, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(7));  // 4..10
    const int k = 2 + static_cast<int>(rng.below(4));  // 2..5
    Graph g = sample_er_graph(n, 0.2 + 0.6 * rng.next_unit(), rng);
    CHECK(has_k_clique(g, k) == testing::brute_force_has_clique(g, k));
  }
}

TEST_CASE("rng streams are reproducible and disjoint") {
  RngStream a(99, 5), b(99, 5), c(99, 6);
  bool all_same = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64(), y = b.next_u64(), z = c.next_u64();
    all_same = all_same && (x == y);
    any_diff = any_diff || (x != z);
  }
  CHECK(all_same);
  CHECK(any_diff);
}
