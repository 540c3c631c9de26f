#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cliquelab/circuit.hpp"
#include "cliquelab/clique_sets.hpp"
#include "cliquelab/flat.hpp"
#include "cliquelab/layered.hpp"
#include "cliquelab/restriction.hpp"
#include "cliquelab/rng.hpp"
#include "cliquelab/switching.hpp"

namespace cliquelab {

struct PipelineParams {
  int n = 0;
  int k = 2;
  int depth_budget = 0;    // c_d, informational
  int size_exponent = 0;   // c_s, informational
  int t = 1;               // DNF width
  int s = 1;               // CNF width
  double p_layer = 0.5;    // star rate of each fresh per-layer restriction
  int trials = 1;
  std::uint64_t seed = 0;
  bool compute_exact_loss = true;

  // reported only: the target composed star rate (1/(2t))^{c_d/2+2} and the
  // two printed forms of its base, which disagree by a bracketing slip
  double target_star_rate = 0;
  double star_rate_paper_form = 0;
  double star_rate_corrected_form = 0;
};

// t = ceil(2 (c_s+2)^2 log2(n)^2), s = max(1, floor(n/2k)), p_layer = 1/(2t).
PipelineParams paper_schedule(int n, int k, int c_d, int c_s);

struct LossRecord {
  int stage = 0;
  int gate = 0;
  Ratio bound{0};
  std::optional<std::int64_t> exact;
};

struct LossLedger {
  std::vector<LossRecord> records;
  Ratio total_bound{0};
  std::int64_t total_exact = 0;
  bool exact_complete = true;  // every record carries an exact loss

  void add(LossRecord r);
};

struct StageRecord {
  int index = 0;
  bool cnf_to_dnf = false;  // else DNF→CNF
  int gates = 0;
  int max_width_out = 0;
  std::optional<std::uint64_t> rng_stream;  // DNF→CNF stages only
};

enum class PipelineOutcome { Completed, Aborted };

struct PipelineTrace {
  Restriction composed;
  std::vector<StageRecord> stages;
  FlatDNF final_dnf;  // f″ over the ★ edges of `composed`
  LossLedger ledger;
  PipelineOutcome outcome = PipelineOutcome::Completed;
  std::optional<UnswitchFailure> failure;
  int failed_stage = -1;
  int failed_gate = -1;
  LayeredCircuit normalized;  // f′ (empty for constant inputs)
  bool input_constant = false;
};

// How many DNF→CNF gate switches a full run of this circuit performs; the
// union-bound abort prediction is this count times 2^{-s-1}.
int count_dnf_switch_gates(const MonotoneCircuit& f, const PipelineParams& params);

// Alternate switching under composed restrictions until a single t-DNF
// remains. CNF→DNF stages are deterministic given the composed restriction;
// DNF→CNF stages draw one fresh restriction each from stream
// (trial << 16) | stage of params.seed.
PipelineTrace run_pipeline(const MonotoneCircuit& f, const PipelineParams& params,
                           std::uint64_t trial = 0);

struct DisjointSelection {
  std::vector<Bitset> picked;          // the r_j, pairwise disjoint ★ edge sets
  std::size_t count = 0;               // x
  std::size_t z_size = 0;              // |Z_ρ(f″)| before selection
  std::vector<std::size_t> x_trail;    // |X| before each pick
  bool degenerate_constant = false;    // f″ constant true: nothing to pick
};

// Greedy disjoint-monomial selection from the proof's endgame: repeatedly
// take the least clique still untouched and the first monomial its edges
// satisfy.
DisjointSelection select_disjoint_monomials(const FlatDNF& f2, const Restriction& rho, int k);

struct SatisfactionEstimate {
  double p_hat = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;

  double half_width() const { return (ci_high - ci_low) / 2; }
};

// Monte Carlo Pr[f(G)] over G ~ ER(n, edge_prob) with a 95% Wilson interval.
SatisfactionEstimate estimate_satisfaction(const MonotoneCircuit& f, int n, double edge_prob,
                                           std::uint64_t trials, RngStream& rng);

// C(n,k) (1-p)^C(k,2): union bound on a k-clique appearing in ER(n, 1-p).
double clique_appearance_bound(int n, int k, double p);

struct Theorem1Report {
  SatisfactionEstimate conjunction;  // Pr[∧ f_j(G)]
  SatisfactionEstimate clique;       // Pr[G has a k-clique]
  double gap = 0;
  double bound = 0;  // clique_appearance_bound(n,k,p)
  std::optional<Graph> witness;  // all f_j true, no k-clique
  bool exhaustive = false;
};

// Samples G ~ ER(n, 1-p), or enumerates all graphs exactly when trials == 0
// (budget permitting). A witness demonstrates the gap.
Theorem1Report theorem1_experiment(const std::vector<MonotoneCircuit>& fs, int n, int k, double p,
                                   std::uint64_t trials, RngStream& rng,
                                   std::uint64_t graph_budget = std::uint64_t{1} << 22);

}  // namespace cliquelab
