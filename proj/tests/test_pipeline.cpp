#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "cliquelab/fixtures.hpp"
#include "cliquelab/generators.hpp"
#include "cliquelab/pipeline.hpp"
#include "test_helpers.hpp"

using namespace cliquelab;

namespace {

PipelineParams desk_params(int n, int k, int t, int s, std::uint64_t seed = 9) {
  PipelineParams p;
  p.n = n;
  p.k = k;
  p.t = t;
  p.s = s;
  p.p_layer = 1.0 / (2.0 * t);
  p.seed = seed;
  p.compute_exact_loss = true;
  return p;
}

}  // namespace

TEST_CASE("paper_schedule values") {
  PipelineParams p = paper_schedule(1024, 4, 2, 1);
  CHECK(p.t == 1800);  // 2 * (1+2)^2 * log2(1024)^2
  CHECK(p.p_layer == doctest::Approx(1.0 / 3600.0));

  CHECK(paper_schedule(16, 4, 2, 1).s == 2);
  CHECK(paper_schedule(8, 4, 2, 1).s == 1);  // floor would be 1

  // target rate is (1/(2t))^(cd/2+2); both printed base forms are reported
  CHECK(p.target_star_rate == doctest::Approx(std::pow(1.0 / 3600.0, 3.0)));
  CHECK(p.star_rate_corrected_form < p.star_rate_paper_form);  // base 6 vs base 4
}

TEST_CASE("pipeline leaves a DNF alone") {
  FlatDNF g(5, {Bitset(edge_count(5), {0, 3}), Bitset(edge_count(5), {7})});
  const MonotoneCircuit f = to_circuit(g);
  PipelineTrace trace = run_pipeline(f, desk_params(5, 3, 6, 2), 0);
  CHECK(trace.outcome == PipelineOutcome::Completed);
  CHECK(trace.stages.empty());
  CHECK(trace.ledger.records.empty());
  CHECK(trace.composed.stars().count() == edge_count(5));
  testing::for_each_graph(5, [&](const Bitset& u) {
    CHECK(evaluate(trace.final_dnf, u) == evaluate(g, u));
  });
}

TEST_CASE("pipeline switches the figure formula in one stage") {
  const MonotoneCircuit f = to_circuit(fixtures::figure_formula());
  PipelineTrace trace = run_pipeline(f, desk_params(5, 3, 6, 2), 0);
  CHECK(trace.outcome == PipelineOutcome::Completed);
  REQUIRE(trace.stages.size() == 1);
  CHECK(trace.stages[0].cnf_to_dnf);
  CHECK(trace.composed.stars().count() == edge_count(5));  // no fresh randomness

  // f'' = the clique-closure DNF of the depth-2 cut
  CliqueFamily z = clique_implication_set(trace.final_dnf, trace.composed, 3);
  CliqueFamily expected(5, 3);
  for (const auto& a : fixtures::figure_z_members()) expected.insert(a);
  CHECK(z == expected);
  CHECK(trace.ledger.total_exact == 0);
  CHECK(trace.ledger.records.size() == 1);
}

TEST_CASE("pipeline handles constants") {
  MonotoneCircuit t(4);
  t.output = t.add_const(true);
  PipelineTrace trace = run_pipeline(t, desk_params(4, 3, 6, 2), 0);
  CHECK(trace.input_constant);
  CHECK(trace.final_dnf.is_const_true());

  MonotoneCircuit fa(4);
  fa.output = fa.add_const(false);
  CHECK(run_pipeline(fa, desk_params(4, 3, 6, 2), 0).final_dnf.is_const_false());
}

TEST_CASE("completed traces are one-sided sound end to end") {
  int completed = 0;
  for (int idx = 0; idx < fixtures::toy_circuit_count(); ++idx) {
    const MonotoneCircuit f = fixtures::toy_circuit(idx);
    PipelineParams params = desk_params(f.n, 3, 6, 2, 17);
    for (std::uint64_t trial = 0; trial < 3; ++trial) {
      PipelineTrace trace = run_pipeline(f, params, trial);
      if (trace.outcome != PipelineOutcome::Completed) {
        // aborts carry a well-formed witness
        REQUIRE(trace.failure.has_value());
        CHECK(trace.failure->witness.count() == static_cast<std::size_t>(params.s) + 1);
        CHECK(trace.failure->witness.subset_of(trace.composed.stars()));
        continue;
      }
      ++completed;
      testing::for_each_subset(trace.composed.stars(), f.n, [&](const Bitset& u) {
        if (evaluate(trace.final_dnf, u)) CHECK(evaluate(f, u | trace.composed.ones));
      });
      for (const auto& r : trace.ledger.records) CHECK(Ratio(r.exact.value()) <= r.bound);
      // end-to-end ledger soundness
      CliqueFamily zf = clique_implication_set(f, trace.composed, params.k);
      CliqueFamily zg = clique_implication_set(trace.final_dnf, trace.composed, params.k);
      CHECK(Ratio(static_cast<long long>(family_difference(zf, zg).size())) <=
            trace.ledger.total_bound);
    }
  }
  CHECK(completed > 10);
}

TEST_CASE("identical seeds replay identical traces") {
  const MonotoneCircuit f = fixtures::toy_circuit(0);
  PipelineParams params = desk_params(f.n, 3, 6, 2, 123);
  PipelineTrace a = run_pipeline(f, params, 7);
  PipelineTrace b = run_pipeline(f, params, 7);
  CHECK(a.composed == b.composed);
  CHECK(a.final_dnf.monomials == b.final_dnf.monomials);
  CHECK(a.stages.size() == b.stages.size());

  PipelineTrace c = run_pipeline(f, params, 8);
  const bool differs = !(a.composed == c.composed) || a.outcome != c.outcome;
  CHECK(differs);
}

TEST_CASE("a seeded abort carries its witness") {
  // the AND-of-DNFs toy must abort for some trial at tight width
  const MonotoneCircuit f = fixtures::toy_circuit(0);
  PipelineParams params = desk_params(f.n, 3, 2, 1, 2024);
  bool seen_abort = false;
  for (std::uint64_t trial = 0; trial < 200 && !seen_abort; ++trial) {
    PipelineTrace trace = run_pipeline(f, params, trial);
    if (trace.outcome == PipelineOutcome::Aborted) {
      seen_abort = true;
      CHECK(trace.failed_stage >= 0);
      CHECK(trace.failed_gate >= 0);
      CHECK(trace.failure->witness.count() == 2);
    }
  }
  CHECK(seen_abort);
}

TEST_CASE("select_disjoint_monomials") {
  const int n = 5;
  Bitset m1(edge_count(n), {edge_id(0, 1, n)});
  Bitset m2(edge_count(n), {edge_id(2, 3, n)});
  const Restriction all_star = all_star_restriction_full(n);

  // (01) ∨ (23): both monomials picked
  {
    DisjointSelection sel = select_disjoint_monomials(FlatDNF(n, {m1, m2}), all_star, 3);
    CHECK(sel.count == 2);
  }
  // (01) ∨ (02) at k=3 on n=4: the greedy first covers {0,1,2} with edge 01,
  // then {0,2,3} survives (its clique misses edge 01) and takes edge 02; the
  // two picks share vertex 0 but no edge
  {
    Bitset a(edge_count(4), {edge_id(0, 1, 4)});
    Bitset b(edge_count(4), {edge_id(0, 2, 4)});
    DisjointSelection sel = select_disjoint_monomials(FlatDNF(4, {a, b}), all_star_restriction_full(4), 3);
    CHECK(sel.count == 2);
    CHECK(sel.z_size == 3);
    CHECK_FALSE(sel.picked[0].intersects(sel.picked[1]));
  }
  // constant-true input degenerates
  {
    FlatDNF top(n);
    top.monomials.push_back(Bitset(edge_count(n)));
    DisjointSelection sel = select_disjoint_monomials(top, all_star, 3);
    CHECK(sel.degenerate_constant);
    CHECK(sel.count == 0);
  }
  // empty Z gives an empty selection
  {
    DisjointSelection sel = select_disjoint_monomials(FlatDNF(n), all_star, 3);
    CHECK(sel.count == 0);
    CHECK(sel.z_size == 0);
  }
}

TEST_CASE("greedy selection respects the counting bound") {
  RngStream rng(61, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(2));
    FlatDNF g = random_dnf(n, 5, 2, rng);
    Bitset full(edge_count(n));
    full.set_all();
    Restriction rho = sample_restriction(full, 0.8, rng);
    FlatDNF gs = simplify_under(g, rho);
    if (gs.is_const_true()) continue;
    DisjointSelection sel = select_disjoint_monomials(gs, rho, 3);

    const auto per_edge = static_cast<long long>(binomial(n - 2, 1));
    long long removed = 0;
    for (std::size_t j = 0; j < sel.picked.size(); ++j) {
      CHECK(static_cast<long long>(sel.x_trail[j]) >=
            static_cast<long long>(sel.z_size) - removed * per_edge);
      removed += static_cast<long long>(sel.picked[j].count());
    }
    for (std::size_t i = 0; i < sel.picked.size(); ++i)
      for (std::size_t j = i + 1; j < sel.picked.size(); ++j)
        CHECK_FALSE(sel.picked[i].intersects(sel.picked[j]));
  }
}

TEST_CASE("estimate_satisfaction") {
  RngStream rng(62, 0);
  MonotoneCircuit t(4);
  t.output = t.add_const(true);
  CHECK(estimate_satisfaction(t, 4, 0.5, 100, rng).p_hat == 1.0);

  MonotoneCircuit e(4);
  e.output = e.add_input(0, 1);
  SatisfactionEstimate est = estimate_satisfaction(e, 4, 0.5, 100000, rng);
  CHECK(std::abs(est.p_hat - 0.5) <= 0.01);
  CHECK(est.ci_low <= 0.5);
  CHECK(0.5 <= est.ci_high);

  MonotoneCircuit ind = to_circuit(clique_indicator(6, 3));
  CHECK(estimate_satisfaction(ind, 6, 1.0, 50, rng).p_hat == 1.0);
}

TEST_CASE("clique_appearance_bound") {
  CHECK(clique_appearance_bound(5, 3, 0.9) == doctest::Approx(0.01));
  CHECK(clique_appearance_bound(5, 3, 1.0) == 0.0);
  CHECK_THROWS_AS(clique_appearance_bound(5, 3, 1.5), std::invalid_argument);

  // Monte Carlo frequency stays below the union bound
  RngStream rng(63, 0);
  for (double p : {0.5, 0.8}) {
    std::uint64_t hits = 0;
    const std::uint64_t trials = 2000;
    for (std::uint64_t i = 0; i < trials; ++i)
      if (has_k_clique(sample_er_graph(12, 1.0 - p, rng), 4)) ++hits;
    const double freq = static_cast<double>(hits) / trials;
    const double band = 3.0 * std::sqrt(freq * (1 - freq) / trials);
    CHECK(freq <= clique_appearance_bound(12, 4, p) + band);
  }
}

TEST_CASE("theorem1_experiment") {
  RngStream rng(64, 0);

  // constant-true circuits at p=1: conjunction certain, cliques impossible
  {
    MonotoneCircuit t(5);
    t.output = t.add_const(true);
    Theorem1Report rep = theorem1_experiment({t, t}, 5, 3, 1.0, 200, rng);
    CHECK(rep.conjunction.p_hat == 1.0);
    CHECK(rep.clique.p_hat == 0.0);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->num_edges() == 0);
  }
  // the clique indicator leaves no witness: identical events
  {
    Theorem1Report rep =
        theorem1_experiment({to_circuit(clique_indicator(5, 3))}, 5, 3, 0.5, 0, rng);
    CHECK(rep.exhaustive);
    CHECK(rep.conjunction.successes == rep.clique.successes);
    CHECK_FALSE(rep.witness.has_value());
    // at p = 1/2 the exact probability is the plain graph-count frequency
    CHECK(rep.conjunction.p_hat ==
          doctest::Approx(static_cast<double>(rep.conjunction.successes) / 1024.0));
  }
  // exhaustive probabilities are exact under the edge distribution: a single
  // edge variable is present with probability 1-p
  {
    MonotoneCircuit e(4);
    e.output = e.add_input(0, 1);
    Theorem1Report rep = theorem1_experiment({e}, 4, 3, 0.3, 0, rng);
    CHECK(rep.conjunction.p_hat == doctest::Approx(0.7));
  }
}

TEST_CASE("count_dnf_switch_gates matches the trace structure") {
  const MonotoneCircuit f = fixtures::toy_circuit(0);
  PipelineParams params = desk_params(f.n, 3, 6, 2);
  const int predicted = count_dnf_switch_gates(f, params);
  CHECK(predicted > 0);
  PipelineTrace trace = run_pipeline(f, params, 0);
  if (trace.outcome == PipelineOutcome::Completed) {
    int counted = 0;
    for (const auto& st : trace.stages)
      if (!st.cnf_to_dnf) counted += st.gates;
    CHECK(counted == predicted);
  }
}
