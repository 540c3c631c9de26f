#include "cliquelab/switching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cliquelab/errors.hpp"
#include "cliquelab/graph.hpp"

namespace cliquelab {

namespace {

std::vector<Bitset> sorted_unique(std::vector<Bitset> v) {
  std::sort(v.begin(), v.end(), Bitset::lex_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Bitset> merge_buckets(const std::vector<std::vector<Bitset>>& buckets, int up_to) {
  std::vector<Bitset> out;
  for (int d = 0; d <= up_to && d < static_cast<int>(buckets.size()); ++d)
    out.insert(out.end(), buckets[d].begin(), buckets[d].end());
  return sorted_unique(std::move(out));
}

void bucket_insert(std::vector<std::vector<Bitset>>& buckets, int depth, const Bitset& label) {
  if (static_cast<int>(buckets.size()) <= depth) buckets.resize(depth + 1);
  buckets[depth].push_back(label);
}

std::string edge_list_string(const Bitset& edges, int n) {
  std::string out = "{";
  bool first = true;
  for (std::size_t e = edges.first(); e != Bitset::npos; e = edges.next(e)) {
    auto [u, v] = edge_endpoints(static_cast<EdgeId>(e), n);
    if (!first) out += ",";
    out += std::to_string(u) + "-" + std::to_string(v);
    first = false;
  }
  return out + "}";
}

}  // namespace

std::vector<Bitset> LevelSets::a_up_to(int d) const { return merge_buckets(t_leaf_labels, d); }
std::vector<Bitset> LevelSets::g_up_to(int d) const { return merge_buckets(tp_leaf_labels, d); }

std::vector<Bitset> LevelSets::b_at(int d) const {
  if (d < 0 || d >= static_cast<int>(t_node_labels.size())) return {};
  return sorted_unique(t_node_labels[d]);
}

std::vector<Bitset> LevelSets::h_at(int d) const {
  if (d < 0 || d >= static_cast<int>(h_node_labels.size())) return {};
  return sorted_unique(h_node_labels[d]);
}

namespace {

// pending child of `parent` reached by branching edge `edge`; the root uses
// parent = npos
struct Pending {
  std::uint32_t parent;
  EdgeId edge;
};

int first_clause_missed(const std::vector<Bitset>& clauses, const Bitset& covered) {
  for (std::size_t j = 0; j < clauses.size(); ++j)
    if (!clauses[j].intersects(covered)) return static_cast<int>(j);
  return -1;
}

}  // namespace

TreeBuildResult build_trees(const FlatCNF& f, const Restriction& rho, int depth_limit,
                            TreeMode mode, TreeBudget budget) {
  if (!is_simplified_under(f, rho))
    throw std::invalid_argument("build_trees: CNF must be simplified under the restriction");
  if (mode == TreeMode::TOnly && depth_limit < 0)
    throw std::invalid_argument("build_trees: negative depth limit");

  const int n = f.n;
  TreeBuildResult res;
  res.tree.n = n;
  auto& nodes = res.tree.nodes;
  auto& lv = res.levels;

  constexpr std::uint32_t kNoParent = ~std::uint32_t{0};
  std::vector<Pending> stack{{kNoParent, 0}};
  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();

    TreeNode node;
    if (p.parent == kNoParent) {
      node.vertices = Bitset(static_cast<std::size_t>(n));
      node.edges = Bitset(edge_count(n));
      node.depth = 0;
      node.in_t = true;
    } else {
      const TreeNode& par = nodes[p.parent];
      node.vertices = par.vertices;
      node.edges = par.edges;
      auto [u, v] = edge_endpoints(p.edge, n);
      node.vertices.set(static_cast<std::size_t>(u));
      node.vertices.set(static_cast<std::size_t>(v));
      node.edges.set(p.edge);
      node.depth = par.depth + 1;
      node.in_t = par.in_t && !par.t_leaf;
    }

    const int first_g = first_clause_missed(f.clauses, node.edges);
    node.tp_leaf = first_g < 0;
    int first_k = -1;
    if (node.in_t) {
      first_k = first_clause_missed(f.clauses, clique_edge_set(node.vertices, n));
      node.t_leaf = first_k < 0;
    }

    bool expand = false;
    int branch = -1;
    if (mode == TreeMode::TOnly) {
      expand = node.in_t && !node.t_leaf && node.depth <= depth_limit;
      branch = first_k;
      if (node.in_t && !node.t_leaf && !expand) node.expanded = false;
    } else {
      expand = !node.tp_leaf;
      branch = (node.in_t && !node.t_leaf) ? first_k : first_g;
    }
    if (expand) node.clause = branch;

    const auto id = static_cast<std::uint32_t>(nodes.size());
    if (id >= budget.max_nodes) throw ResourceError("build_trees: node budget exceeded");
    if (p.parent != kNoParent) nodes[p.parent].children.push_back(id);

    if (node.in_t) {
      bucket_insert(lv.t_node_labels, node.depth, node.vertices);
      lv.t_depth = std::max(lv.t_depth, node.depth);
      if (node.t_leaf) bucket_insert(lv.t_leaf_labels, node.depth, node.vertices);
    }
    if (node.tp_leaf) {
      bucket_insert(lv.tp_leaf_labels, node.depth, node.edges);
      res.dfs_leaf_labels.push_back(node.edges);
    }
    lv.tp_depth = std::max(lv.tp_depth, node.depth);

    std::vector<EdgeId> branch_edges;
    if (expand && branch >= 0)
      for (std::size_t e = f.clauses[branch].first(); e != Bitset::npos;
           e = f.clauses[branch].next(e))
        branch_edges.push_back(static_cast<EdgeId>(e));
    nodes.push_back(std::move(node));
    for (auto it = branch_edges.rbegin(); it != branch_edges.rend(); ++it)
      stack.push_back(Pending{id, *it});
  }

  for (auto& bucket : lv.t_leaf_labels) bucket = sorted_unique(std::move(bucket));
  for (auto& bucket : lv.t_node_labels) bucket = sorted_unique(std::move(bucket));
  for (auto& bucket : lv.tp_leaf_labels) bucket = sorted_unique(std::move(bucket));
  return res;
}

TreeBuildResult transversal_tree(const std::vector<Bitset>& monomials, int n, int depth_limit,
                                 TreeBudget budget) {
  for (const auto& m : monomials)
    if (m.none())
      throw std::invalid_argument("transversal_tree: empty monomial (constant-true input)");
  if (depth_limit < 0) throw std::invalid_argument("transversal_tree: negative depth limit");

  TreeBuildResult res;
  res.tree.n = n;
  auto& nodes = res.tree.nodes;
  auto& lv = res.levels;

  auto first_missed = [&](const Bitset& covered) {
    for (std::size_t j = 0; j < monomials.size(); ++j)
      if (!monomials[j].intersects(covered)) return static_cast<int>(j);
    return -1;
  };

  constexpr std::uint32_t kNoParent = ~std::uint32_t{0};
  std::vector<Pending> stack{{kNoParent, 0}};
  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();

    TreeNode node;
    if (p.parent == kNoParent) {
      node.vertices = Bitset(static_cast<std::size_t>(n));
      node.edges = Bitset(edge_count(n));
      node.depth = 0;
    } else {
      const TreeNode& par = nodes[p.parent];
      node.vertices = par.vertices;
      node.edges = par.edges;
      auto [u, v] = edge_endpoints(p.edge, n);
      node.vertices.set(static_cast<std::size_t>(u));
      node.vertices.set(static_cast<std::size_t>(v));
      node.edges.set(p.edge);
      node.depth = par.depth + 1;
    }

    const int missed = first_missed(node.edges);
    node.tp_leaf = missed < 0;
    const bool expand = !node.tp_leaf && node.depth < depth_limit;
    if (!node.tp_leaf && !expand) node.expanded = false;
    if (expand) node.clause = missed;

    const auto id = static_cast<std::uint32_t>(nodes.size());
    if (id >= budget.max_nodes) throw ResourceError("transversal_tree: node budget exceeded");
    if (p.parent != kNoParent) nodes[p.parent].children.push_back(id);

    bucket_insert(lv.h_node_labels, node.depth, node.edges);
    lv.tp_depth = std::max(lv.tp_depth, node.depth);
    if (node.tp_leaf) {
      bucket_insert(lv.tp_leaf_labels, node.depth, node.edges);
      res.dfs_leaf_labels.push_back(node.edges);
    }

    std::vector<EdgeId> branch_edges;
    if (expand)
      for (std::size_t e = monomials[missed].first(); e != Bitset::npos;
           e = monomials[missed].next(e))
        branch_edges.push_back(static_cast<EdgeId>(e));
    nodes.push_back(std::move(node));
    for (auto it = branch_edges.rbegin(); it != branch_edges.rend(); ++it)
      stack.push_back(Pending{id, *it});
  }

  for (auto& bucket : lv.tp_leaf_labels) bucket = sorted_unique(std::move(bucket));
  // h buckets keep raw entries; h_at() dedupes on access
  return res;
}

namespace {

long long checked_ipow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::int64_t{1} << 62) / base)
      throw std::overflow_error("checked_ipow: overflow");
    r *= base;
  }
  return r;
}

}  // namespace

SwitchResult cnf_to_dnf(const FlatCNF& f, const Restriction& rho, int t, int k,
                        bool compute_exact_loss, TreeBudget budget) {
  if (t < 1) throw std::invalid_argument("cnf_to_dnf: width t must be >= 1");
  if (!is_simplified_under(f, rho))
    throw std::invalid_argument("cnf_to_dnf: CNF must be simplified under the restriction");

  // largest d with C(2d,2) = d(2d-1) <= t
  int d = 0;
  while (static_cast<long long>(d + 1) * (2 * (d + 1) - 1) <= t) ++d;

  TreeBuildResult trees = build_trees(f, rho, d, TreeMode::TOnly, budget);

  SwitchResult out;
  out.depth_used = d;
  out.a_family = trees.levels.a_up_to(d);
  out.b_family = trees.levels.b_at(d + 1);

  const Bitset stars = rho.stars();
  out.dnf.n = f.n;
  for (const auto& a : out.a_family) {
    Bitset mono = clique_edge_set(a, f.n) & stars;
    out.realized_width = std::max(out.realized_width, static_cast<int>(mono.count()));
    out.dnf.monomials.push_back(std::move(mono));
  }

  const int s_real = f.width();
  const auto n_choose_k = static_cast<long long>(binomial(f.n, k));
  out.loss_bound = Ratio(n_choose_k) * Ratio(checked_ipow(static_cast<long long>(s_real) * k, d + 1),
                                             checked_ipow(f.n, d + 1));
  out.loss_bound_stated =
      static_cast<double>(n_choose_k) *
      std::pow(static_cast<double>(s_real) * k / f.n, std::sqrt(static_cast<double>(t) / 2.0));

  if (compute_exact_loss) {
    CliqueFamily zf = clique_implication_set(f, rho, k);
    CliqueFamily zg = clique_implication_set(out.dnf, rho, k);
    out.exact_loss = static_cast<std::int64_t>(family_difference(zf, zg).size());
  }
  return out;
}

std::variant<FlatCNF, UnswitchFailure> dnf_to_cnf(const FlatDNF& g, const Restriction& rho, int s,
                                                  TreeBudget budget) {
  if (s < 0) throw std::invalid_argument("dnf_to_cnf: negative width");
  FlatDNF simplified = simplify_under(g, rho);
  if (simplified.is_const_true()) return FlatCNF(g.n);
  if (simplified.is_const_false()) {
    FlatCNF false_cnf(g.n);
    false_cnf.clauses.push_back(Bitset(edge_count(g.n)));
    return false_cnf;
  }

  TreeBuildResult trees = transversal_tree(simplified.monomials, g.n, s + 1, budget);
  for (const auto& node : trees.tree.nodes)
    if (node.depth == s + 1) return UnswitchFailure{node.edges};
  return FlatCNF(g.n, std::move(trees.dfs_leaf_labels));
}

Claim7Report check_claim7(const FlatCNF& f, const Restriction& rho, int k,
                          ExhaustiveBudget budget) {
  const int n = f.n;
  FlatCNF fs = simplify_under(f, rho);
  const Bitset stars = rho.stars();

  TreeBuildResult trees =
      build_trees(fs, rho, 0, TreeMode::TAndTPrime, TreeBudget{budget.max_nodes});
  const LevelSets& lv = trees.levels;
  const int dt = lv.t_depth;

  // every function involved reads only these edges
  Bitset clause_union(edge_count(n));
  for (const auto& c : fs.clauses) clause_union |= c;
  Bitset support = clause_union | (clique_edge_set(edge_endpoints_union(clause_union, n), n) & stars);
  const std::vector<int> sup = support.to_vector();
  if (sup.size() >= 63 || (std::uint64_t{1} << sup.size()) > budget.max_assignments)
    throw ResourceError("check_claim7: assignment enumeration exceeds budget");

  auto to_mask = [&](const Bitset& edges) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < sup.size(); ++i)
      if (edges.test(static_cast<std::size_t>(sup[i]))) m |= std::uint64_t{1} << i;
    return m;
  };
  auto mask_to_edges = [&](std::uint64_t m) {
    Bitset out(edge_count(n));
    for (std::size_t i = 0; i < sup.size(); ++i)
      if ((m >> i) & 1) out.set(static_cast<std::size_t>(sup[i]));
    return out;
  };

  std::vector<std::uint64_t> clause_masks;
  for (const auto& c : fs.clauses) clause_masks.push_back(to_mask(c));
  auto cnf_val = [&](std::uint64_t u) {
    for (auto cm : clause_masks)
      if (!(cm & u)) return false;
    return true;
  };
  auto family_masks = [&](const std::vector<Bitset>& edge_sets) {
    std::vector<std::uint64_t> ms;
    ms.reserve(edge_sets.size());
    for (const auto& s : edge_sets) ms.push_back(to_mask(s));
    return ms;
  };
  auto dnf_val = [](const std::vector<std::uint64_t>& monos, std::uint64_t u) {
    for (auto m : monos)
      if ((m & u) == m) return true;
    return false;
  };
  auto clique_monomials = [&](const std::vector<Bitset>& vertex_sets) {
    std::vector<Bitset> out;
    out.reserve(vertex_sets.size());
    for (const auto& a : vertex_sets) out.push_back(clique_edge_set(a, n) & stars);
    return out;
  };

  const std::vector<std::uint64_t> g_masks = family_masks(lv.g_up_to(lv.tp_depth));
  const std::vector<Bitset> a_full = lv.a_up_to(dt);
  const std::vector<std::uint64_t> a_masks = family_masks(clique_monomials(a_full));
  std::vector<std::vector<std::uint64_t>> ab_masks_by_d;
  for (int d = 0; d <= dt; ++d) {
    std::vector<Bitset> fam = lv.a_up_to(d);
    for (const auto& b : lv.b_at(d + 1)) fam.push_back(b);
    ab_masks_by_d.push_back(family_masks(clique_monomials(fam)));
  }

  Claim7Report rep;
  rep.t_depth = dt;
  rep.tp_depth = lv.tp_depth;
  rep.tree_nodes = trees.tree.nodes.size();
  Claim7Item i1{"tree_cnf_equivalence", true, ""};
  Claim7Item i2{"clique_closure_one_sided", true, ""};
  Claim7Item i3{"clique_implication_preserved", true, ""};
  Claim7Item i4{"depth_cut_sandwich", true, ""};
  Claim7Item i5{"level_width_bound", true, ""};

  const std::uint64_t limit = std::uint64_t{1} << sup.size();
  for (std::uint64_t u = 0; u < limit; ++u) {
    const bool fv = cnf_val(u);
    if (i1.pass && dnf_val(g_masks, u) != fv)
      i1 = {i1.name, false, "input " + edge_list_string(mask_to_edges(u), n)};
    const bool av = dnf_val(a_masks, u);
    if (i2.pass && av && !fv) i2 = {i2.name, false, "input " + edge_list_string(mask_to_edges(u), n)};
    if (i4.pass && av) {
      for (int d = 0; d <= dt; ++d)
        if (!dnf_val(ab_masks_by_d[d], u)) {
          i4 = {i4.name, false,
                "d=" + std::to_string(d) + " input " + edge_list_string(mask_to_edges(u), n)};
          break;
        }
    }
  }

  CliqueFamily zf = clique_implication_set(fs, rho, k);
  CliqueFamily zg =
      clique_implication_set(FlatDNF(n, clique_monomials(a_full)), rho, k);
  if (!(zf == zg)) {
    CliqueFamily fwd = family_difference(zf, zg);
    CliqueFamily bwd = family_difference(zg, zf);
    const Bitset& witness = fwd.size() ? fwd.members.front() : bwd.members.front();
    std::string side = fwd.size() ? " lost" : " gained";
    std::string vs = "{";
    for (int v : witness.to_vector()) vs += std::to_string(v) + ",";
    vs.back() = '}';
    i3 = {i3.name, false, "clique " + vs + side};
  }

  const int s_width = fs.width();
  for (int d = 0; d <= dt && i5.pass; ++d) {
    const std::size_t count = lv.b_at(d).size();
    // s^d, saturating: a bucket can never hold 2^62 labels
    long long bound;
    try {
      bound = checked_ipow(s_width, d);
    } catch (const std::overflow_error&) {
      bound = std::int64_t{1} << 62;
    }
    if (static_cast<long long>(count) > bound)
      i5 = {i5.name, false,
            "depth " + std::to_string(d) + ": " + std::to_string(count) + " > s^d"};
  }

  rep.items = {i1, i2, i3, i4, i5};
  rep.all_pass = true;
  for (const auto& it : rep.items) rep.all_pass = rep.all_pass && it.pass;
  return rep;
}

}  // namespace cliquelab
