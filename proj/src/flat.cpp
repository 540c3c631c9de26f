#include "cliquelab/flat.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cliquelab {

int FlatCNF::width() const {
  std::size_t w = 0;
  for (const auto& c : clauses) w = std::max(w, c.count());
  return static_cast<int>(w);
}

bool FlatCNF::is_const_false() const {
  return std::any_of(clauses.begin(), clauses.end(), [](const Bitset& c) { return c.none(); });
}

int FlatDNF::width() const {
  std::size_t w = 0;
  for (const auto& m : monomials) w = std::max(w, m.count());
  return static_cast<int>(w);
}

bool FlatDNF::is_const_true() const {
  return std::any_of(monomials.begin(), monomials.end(), [](const Bitset& m) { return m.none(); });
}

bool evaluate(const FlatCNF& f, const Bitset& edges) {
  if (edges.capacity() != edge_count(f.n))
    throw std::invalid_argument("evaluate: edge set capacity mismatch");
  for (const auto& c : f.clauses)
    if (!c.intersects(edges)) return false;
  return true;
}

bool evaluate(const FlatDNF& f, const Bitset& edges) {
  if (edges.capacity() != edge_count(f.n))
    throw std::invalid_argument("evaluate: edge set capacity mismatch");
  for (const auto& m : f.monomials)
    if (m.subset_of(edges)) return true;
  return false;
}

namespace {

MonotoneCircuit flat_to_circuit(int n, const std::vector<Bitset>& groups, bool top_is_and) {
  MonotoneCircuit out(n);
  if (groups.empty()) {
    out.add_const(top_is_and);  // empty AND is true, empty OR is false
    return out;
  }
  for (const auto& g : groups)
    if (g.none()) {
      out.add_const(!top_is_and);  // an empty OR-clause / AND-monomial decides the value
      return out;
    }
  std::map<EdgeId, std::uint32_t> input_of;
  for (const auto& g : groups)
    for (std::size_t e = g.first(); e != Bitset::npos; e = g.next(e))
      if (!input_of.count(static_cast<EdgeId>(e)))
        input_of[static_cast<EdgeId>(e)] = out.add_input(static_cast<EdgeId>(e));
  std::vector<std::uint32_t> group_gates;
  group_gates.reserve(groups.size());
  for (const auto& g : groups) {
    std::vector<std::uint32_t> kids;
    for (std::size_t e = g.first(); e != Bitset::npos; e = g.next(e))
      kids.push_back(input_of[static_cast<EdgeId>(e)]);
    group_gates.push_back(top_is_and ? out.add_or(std::move(kids)) : out.add_and(std::move(kids)));
  }
  out.output = top_is_and ? out.add_and(std::move(group_gates)) : out.add_or(std::move(group_gates));
  return out;
}

}  // namespace

MonotoneCircuit to_circuit(const FlatCNF& f) { return flat_to_circuit(f.n, f.clauses, true); }
MonotoneCircuit to_circuit(const FlatDNF& f) { return flat_to_circuit(f.n, f.monomials, false); }

FlatDNF build_dnf(const std::vector<Bitset>& family, int n, bool prune_subsumed) {
  FlatDNF out(n);
  if (!prune_subsumed) {
    out.monomials = family;
    return out;
  }
  std::vector<Bitset> sorted = family;
  std::sort(sorted.begin(), sorted.end(), [](const Bitset& a, const Bitset& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return Bitset::lex_less(a, b);
  });
  for (const auto& s : sorted) {
    bool subsumed = false;
    for (const auto& kept : out.monomials)
      if (kept.subset_of(s)) {
        subsumed = true;
        break;
      }
    if (!subsumed) out.monomials.push_back(s);
  }
  std::sort(out.monomials.begin(), out.monomials.end(), Bitset::lex_less);
  return out;
}

FlatCNF simplify_under(const FlatCNF& f, const Restriction& rho) {
  if (rho.universe.capacity() != edge_count(f.n))
    throw std::invalid_argument("simplify_under: restriction capacity mismatch");
  FlatCNF out(f.n);
  for (const auto& c : f.clauses) {
    if (!c.subset_of(rho.universe))
      throw std::invalid_argument("simplify_under: clause leaves the restriction universe");
    if (!c.intersects(rho.ones)) out.clauses.push_back(c);
  }
  return out;
}

bool is_simplified_under(const FlatCNF& f, const Restriction& rho) {
  if (rho.universe.capacity() != edge_count(f.n)) return false;
  for (const auto& c : f.clauses)
    if (!c.subset_of(rho.universe) || c.intersects(rho.ones)) return false;
  return true;
}

FlatDNF simplify_under(const FlatDNF& g, const Restriction& rho) {
  if (rho.universe.capacity() != edge_count(g.n))
    throw std::invalid_argument("simplify_under: restriction capacity mismatch");
  FlatDNF out(g.n);
  for (const auto& m : g.monomials) {
    if (!m.subset_of(rho.universe))
      throw std::invalid_argument("simplify_under: monomial leaves the restriction universe");
    Bitset rest = m - rho.ones;
    if (rest.none()) {
      out.monomials.clear();
      out.monomials.push_back(Bitset(edge_count(g.n)));
      return out;
    }
    out.monomials.push_back(std::move(rest));
  }
  return out;
}

}  // namespace cliquelab
