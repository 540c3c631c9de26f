#include "cliquelab/restriction.hpp"

#include <stdexcept>

namespace cliquelab {

Restriction::Restriction(Bitset universe_, Bitset ones_)
    : universe(std::move(universe_)), ones(std::move(ones_)) {
  if (universe.capacity() != ones.capacity())
    throw std::invalid_argument("Restriction: capacity mismatch");
  if (!ones.subset_of(universe)) throw std::invalid_argument("Restriction: ones not within universe");
}

Restriction all_star_restriction(Bitset universe) {
  Bitset none(universe.capacity());
  return Restriction(std::move(universe), std::move(none));
}

Restriction all_star_restriction_full(int n) {
  Bitset u(edge_count(n));
  u.set_all();
  return all_star_restriction(std::move(u));
}

Restriction sample_restriction(const Bitset& universe, double star_rate, RngStream& rng) {
  if (star_rate < 0.0 || star_rate > 1.0)
    throw std::invalid_argument("sample_restriction: star rate outside [0,1]");
  Bitset ones(universe.capacity());
  for (std::size_t e = universe.first(); e != Bitset::npos; e = universe.next(e))
    if (!rng.bernoulli(star_rate)) ones.set(e);
  return Restriction(universe, std::move(ones));
}

Restriction compose(const Restriction& rho, const Restriction& sigma) {
  if (sigma.universe != rho.stars())
    throw std::invalid_argument("compose: sigma universe must equal rho stars");
  return Restriction(rho.universe, rho.ones | sigma.ones);
}

Graph restriction_to_graph(const Restriction& rho, int n) {
  Bitset full(edge_count(n));
  full.set_all();
  if (rho.universe != full)
    throw std::invalid_argument("restriction_to_graph: universe must be all of K([n])");
  return Graph(n, rho.ones);
}

}  // namespace cliquelab
