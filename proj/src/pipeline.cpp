#include "cliquelab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cliquelab/errors.hpp"

namespace cliquelab {

PipelineParams paper_schedule(int n, int k, int c_d, int c_s) {
  if (n < 2 || k < 2) throw std::invalid_argument("paper_schedule: need n >= 2 and k >= 2");
  PipelineParams p;
  p.n = n;
  p.k = k;
  p.depth_budget = c_d;
  p.size_exponent = c_s;
  const double log2n = std::log2(static_cast<double>(n));
  p.t = static_cast<int>(std::ceil(2.0 * (c_s + 2) * (c_s + 2) * log2n * log2n));
  p.t = std::max(p.t, 1);
  p.s = std::max(1, n / (2 * k));
  p.p_layer = 1.0 / (2.0 * p.t);
  const double exponent = static_cast<double>(c_d) / 2.0 + 2.0;
  p.target_star_rate = std::pow(p.p_layer, exponent);
  p.star_rate_paper_form =
      std::pow(2.0 * c_s + 2.0, -(c_d + 4.0)) * std::pow(log2n, -(c_d + 4.0));
  p.star_rate_corrected_form =
      std::pow(2.0 * (c_s + 2.0), -(c_d + 4.0)) * std::pow(log2n, -(c_d + 4.0));
  return p;
}

void LossLedger::add(LossRecord r) {
  total_bound += r.bound;
  if (r.exact)
    total_exact += *r.exact;
  else
    exact_complete = false;
  records.push_back(std::move(r));
}

namespace {

// the pipeline's working state: one flat form per gate of the current bottom
// layer, plus the layers still above them
struct Working {
  bool forms_are_cnf = false;
  std::vector<FlatCNF> cnfs;
  std::vector<FlatDNF> dnfs;
  std::vector<LayeredCircuit::Layer> upper;  // upper[0] consumes the forms
};

// The working forms span the bottom depth-2 block: with three or more
// layers, each layer-3 gate is one flat form whose groups are its layer-2
// children expanded to edge sets. A two-layer circuit is a single width-1
// form and a lone pass-through is a width-1 DNF, so an input that is already
// a DNF takes zero stages.
Working initial_working(const LayeredCircuit& ly) {
  Working w;
  const int depth = ly.depth();
  if (depth == 1) {
    FlatDNF form(ly.n);
    Bitset mono(edge_count(ly.n));
    mono.set(ly.inputs.at(ly.layers[0].gates.at(0).at(0)));
    form.monomials.push_back(std::move(mono));
    w.dnfs.push_back(std::move(form));
    w.forms_are_cnf = false;
    return w;
  }
  const auto& bottom = ly.layers[0];
  auto edge_under = [&](std::uint32_t dummy) { return ly.inputs.at(bottom.gates.at(dummy).at(0)); };

  if (depth == 2) {
    const auto& top = ly.layers[1];
    w.forms_are_cnf = top.kind == GateKind::And;
    std::vector<Bitset> parts;
    for (auto c : top.gates.at(0)) {
      Bitset single(edge_count(ly.n));
      single.set(edge_under(c));
      parts.push_back(std::move(single));
    }
    if (w.forms_are_cnf)
      w.cnfs.emplace_back(ly.n, std::move(parts));
    else
      w.dnfs.emplace_back(ly.n, std::move(parts));
    return w;
  }

  const auto& second = ly.layers[1];
  const auto& third = ly.layers[2];
  w.forms_are_cnf = third.kind == GateKind::And;
  for (const auto& kids : third.gates) {
    std::vector<Bitset> parts;
    for (auto c : kids) {
      Bitset group(edge_count(ly.n));
      for (auto dummy : second.gates.at(c)) group.set(edge_under(dummy));
      parts.push_back(std::move(group));
    }
    if (w.forms_are_cnf)
      w.cnfs.emplace_back(ly.n, std::move(parts));
    else
      w.dnfs.emplace_back(ly.n, std::move(parts));
  }
  w.upper.assign(ly.layers.begin() + 3, ly.layers.end());
  return w;
}

int structural_dnf_gates(Working w) {
  // replay the stage structure without any switching: DNF layers contribute
  // their gate counts, merges walk up one layer at a time
  int total = 0;
  std::size_t forms = w.forms_are_cnf ? w.cnfs.size() : w.dnfs.size();
  bool cnf = w.forms_are_cnf;
  std::size_t level = 0;
  while (true) {
    if (w.upper.size() == level && !cnf) break;  // final DNF reached
    if (!cnf) total += static_cast<int>(forms);
    if (w.upper.size() == level) break;  // final CNF gets one deterministic switch
    forms = w.upper[level].gates.size();
    cnf = !cnf;
    ++level;
  }
  return total;
}

}  // namespace

int count_dnf_switch_gates(const MonotoneCircuit& f, const PipelineParams&) {
  MonotoneCircuit cp = constant_propagate(f);
  if (constant_value(cp)) return 0;
  return structural_dnf_gates(initial_working(normalize_alternating(cp)));
}

PipelineTrace run_pipeline(const MonotoneCircuit& f, const PipelineParams& params,
                           std::uint64_t trial) {
  validate(f);
  if (f.n != params.n) throw std::invalid_argument("run_pipeline: vertex count mismatch");
  if (params.t < 1 || params.s < 1) throw std::invalid_argument("run_pipeline: widths must be >= 1");
  if (params.p_layer <= 0.0 || params.p_layer > 1.0)
    throw std::invalid_argument("run_pipeline: p_layer outside (0,1]");

  PipelineTrace trace;
  trace.composed = all_star_restriction_full(params.n);

  MonotoneCircuit cp = constant_propagate(f);
  if (auto cv = constant_value(cp)) {
    trace.input_constant = true;
    trace.final_dnf = FlatDNF(params.n);
    if (*cv) trace.final_dnf.monomials.push_back(Bitset(edge_count(params.n)));
    return trace;
  }

  trace.normalized = normalize_alternating(cp);
  Working w = initial_working(trace.normalized);

  int stage = 0;
  while (true) {
    if (!w.forms_are_cnf && w.upper.empty()) {
      trace.final_dnf = std::move(w.dnfs.at(0));
      break;
    }

    StageRecord rec;
    rec.index = stage;
    if (w.forms_are_cnf) {
      rec.cnf_to_dnf = true;
      rec.gates = static_cast<int>(w.cnfs.size());
      std::vector<FlatDNF> switched;
      for (std::size_t i = 0; i < w.cnfs.size(); ++i) {
        FlatCNF simplified = simplify_under(w.cnfs[i], trace.composed);
        SwitchResult res = cnf_to_dnf(simplified, trace.composed, params.t, params.k,
                                      params.compute_exact_loss);
        rec.max_width_out = std::max(rec.max_width_out, res.realized_width);
        trace.ledger.add(LossRecord{stage, static_cast<int>(i), res.loss_bound, res.exact_loss});
        switched.push_back(std::move(res.dnf));
      }
      trace.stages.push_back(rec);
      ++stage;
      if (w.upper.empty()) {
        trace.final_dnf = std::move(switched.at(0));
        break;
      }
      if (w.upper.front().kind != GateKind::Or)
        throw std::logic_error("run_pipeline: expected an OR layer above a CNF bottom");
      std::vector<FlatDNF> merged;
      for (const auto& kids : w.upper.front().gates) {
        FlatDNF m(params.n);
        for (auto c : kids)
          m.monomials.insert(m.monomials.end(), switched.at(c).monomials.begin(),
                             switched.at(c).monomials.end());
        merged.push_back(std::move(m));
      }
      w.dnfs = std::move(merged);
      w.cnfs.clear();
      w.forms_are_cnf = false;
      w.upper.erase(w.upper.begin());
    } else {
      rec.cnf_to_dnf = false;
      rec.gates = static_cast<int>(w.dnfs.size());
      const std::uint64_t stream = (trial << 16) | static_cast<std::uint64_t>(stage);
      rec.rng_stream = stream;
      RngStream rng(params.seed, stream);
      Restriction fresh = sample_restriction(trace.composed.stars(), params.p_layer, rng);
      trace.composed = compose(trace.composed, fresh);

      std::vector<FlatCNF> switched;
      for (std::size_t i = 0; i < w.dnfs.size(); ++i) {
        auto res = dnf_to_cnf(w.dnfs[i], trace.composed, params.s);
        if (auto* fail = std::get_if<UnswitchFailure>(&res)) {
          trace.outcome = PipelineOutcome::Aborted;
          trace.failure = *fail;
          trace.failed_stage = stage;
          trace.failed_gate = static_cast<int>(i);
          trace.stages.push_back(rec);
          return trace;
        }
        FlatCNF& cnf = std::get<FlatCNF>(res);
        rec.max_width_out = std::max(rec.max_width_out, cnf.width());
        switched.push_back(std::move(cnf));
      }
      trace.stages.push_back(rec);
      ++stage;
      if (w.upper.front().kind != GateKind::And)
        throw std::logic_error("run_pipeline: expected an AND layer above a DNF bottom");
      std::vector<FlatCNF> merged;
      for (const auto& kids : w.upper.front().gates) {
        FlatCNF m(params.n);
        for (auto c : kids)
          m.clauses.insert(m.clauses.end(), switched.at(c).clauses.begin(),
                           switched.at(c).clauses.end());
        merged.push_back(std::move(m));
      }
      w.cnfs = std::move(merged);
      w.dnfs.clear();
      w.forms_are_cnf = true;
      w.upper.erase(w.upper.begin());
    }
  }
  return trace;
}

DisjointSelection select_disjoint_monomials(const FlatDNF& f2, const Restriction& rho, int k) {
  const int n = f2.n;
  DisjointSelection sel;
  if (f2.is_const_true()) {
    sel.degenerate_constant = true;
    CliqueFamily z = clique_implication_set(f2, rho, k);
    sel.z_size = z.size();
    return sel;
  }
  const Bitset stars = rho.stars();
  CliqueFamily z = clique_implication_set(f2, rho, k);
  sel.z_size = z.size();

  std::vector<Bitset> live = z.members;  // X, kept in lexicographic order
  while (!live.empty()) {
    sel.x_trail.push_back(live.size());
    const Bitset a = live.front();
    const Bitset target = clique_edge_set(a, n) | rho.ones;
    Bitset r(edge_count(n));
    bool found = false;
    for (const auto& q : f2.monomials)
      if (q.subset_of(target)) {
        r = q & stars;
        found = true;
        break;
      }
    if (!found)
      throw std::logic_error("select_disjoint_monomials: clique in Z without a satisfied monomial");
    if (r.none()) {
      // an all-1 monomial makes f″_ρ constant true; nothing blocks anything
      sel.degenerate_constant = true;
      break;
    }
    sel.picked.push_back(r);
    std::vector<Bitset> next;
    for (const auto& b : live)
      if (!r.intersects(clique_edge_set(b, n))) next.push_back(b);
    live = std::move(next);
  }
  sel.count = sel.picked.size();

  for (std::size_t i = 0; i < sel.picked.size(); ++i)
    for (std::size_t j = i + 1; j < sel.picked.size(); ++j)
      if (sel.picked[i].intersects(sel.picked[j]))
        throw std::logic_error("select_disjoint_monomials: picks are not disjoint");
  return sel;
}

namespace {

SatisfactionEstimate wilson(std::uint64_t successes, std::uint64_t trials) {
  SatisfactionEstimate est;
  est.successes = successes;
  est.trials = trials;
  if (trials == 0) return est;
  const double z = 1.959963984540054;  // 97.5th normal quantile
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  est.p_hat = p;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (p + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
  est.ci_low = std::max(0.0, center - half);
  est.ci_high = std::min(1.0, center + half);
  return est;
}

}  // namespace

SatisfactionEstimate estimate_satisfaction(const MonotoneCircuit& f, int n, double edge_prob,
                                           std::uint64_t trials, RngStream& rng) {
  if (trials < 1) throw std::invalid_argument("estimate_satisfaction: trials must be >= 1");
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < trials; ++i)
    if (evaluate(f, sample_er_graph(n, edge_prob, rng))) ++hits;
  return wilson(hits, trials);
}

double clique_appearance_bound(int n, int k, double p) {
  if (k < 2 || k > n) throw std::invalid_argument("clique_appearance_bound: need 2 <= k <= n");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("clique_appearance_bound: p outside [0,1]");
  const double pairs = static_cast<double>(k) * (k - 1) / 2.0;
  return static_cast<double>(binomial(n, k)) * std::pow(1.0 - p, pairs);
}

Theorem1Report theorem1_experiment(const std::vector<MonotoneCircuit>& fs, int n, int k, double p,
                                   std::uint64_t trials, RngStream& rng,
                                   std::uint64_t graph_budget) {
  for (const auto& f : fs)
    if (f.n != n) throw std::invalid_argument("theorem1_experiment: circuit vertex count mismatch");
  Theorem1Report rep;
  rep.bound = clique_appearance_bound(n, k, p);
  const double edge_prob = 1.0 - p;

  auto all_true = [&](const Graph& g) {
    for (const auto& f : fs)
      if (!evaluate(f, g)) return false;
    return true;
  };

  if (trials == 0) {
    const std::size_t m = edge_count(n);
    if (m >= 63 || (std::uint64_t{1} << m) > graph_budget)
      throw ResourceError("theorem1_experiment: exhaustive enumeration exceeds budget");
    rep.exhaustive = true;
    const std::uint64_t total = std::uint64_t{1} << m;
    std::uint64_t conj = 0, cliq = 0;
    long double conj_prob = 0, cliq_prob = 0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      Graph g(n);
      for (std::size_t e = 0; e < m; ++e)
        if ((mask >> e) & 1) g.edges.set(e);
      const std::size_t present = g.num_edges();
      const long double weight = std::pow(static_cast<long double>(edge_prob), present) *
                                 std::pow(static_cast<long double>(p), m - present);
      const bool has = has_k_clique(g, k);
      const bool conj_true = all_true(g);
      if (conj_true) {
        ++conj;
        conj_prob += weight;
      }
      if (has) {
        ++cliq;
        cliq_prob += weight;
      }
      if (conj_true && !has && !rep.witness) rep.witness = g;
    }
    // exact probabilities under ER(n, 1-p); counts keep the raw events
    rep.conjunction.successes = conj;
    rep.conjunction.trials = total;
    rep.conjunction.p_hat = static_cast<double>(conj_prob);
    rep.conjunction.ci_low = rep.conjunction.ci_high = rep.conjunction.p_hat;
    rep.clique.successes = cliq;
    rep.clique.trials = total;
    rep.clique.p_hat = static_cast<double>(cliq_prob);
    rep.clique.ci_low = rep.clique.ci_high = rep.clique.p_hat;
  } else {
    std::uint64_t conj = 0, cliq = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
      Graph g = sample_er_graph(n, edge_prob, rng);
      const bool has = has_k_clique(g, k);
      const bool conj_true = all_true(g);
      if (conj_true) ++conj;
      if (has) ++cliq;
      if (conj_true && !has && !rep.witness) rep.witness = std::move(g);
    }
    rep.conjunction = wilson(conj, trials);
    rep.clique = wilson(cliq, trials);
  }
  rep.gap = rep.conjunction.p_hat - rep.clique.p_hat;
  return rep;
}

}  // namespace cliquelab
