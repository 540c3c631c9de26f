#pragma once

#include "cliquelab/bitset.hpp"
#include "cliquelab/graph.hpp"
#include "cliquelab/rng.hpp"

namespace cliquelab {

// A monotone restriction on a set of live edges: each universe edge is either
// fixed to 1 or left free (★). There are no 0-assignments.
struct Restriction {
  Bitset universe;  // the live inputs U
  Bitset ones;      // ρ⁻¹(1) ⊆ universe

  Restriction() = default;
  Restriction(Bitset universe_, Bitset ones_);

  Bitset stars() const { return universe - ones; }
  bool is_star(std::size_t e) const { return universe.test(e) && !ones.test(e); }

  bool operator==(const Restriction&) const = default;
};

// The identity restriction: every edge of `universe` is ★.
Restriction all_star_restriction(Bitset universe);
Restriction all_star_restriction_full(int n);

// R_U^p: each universe edge is ★ with probability star_rate, else 1.
Restriction sample_restriction(const Bitset& universe, double star_rate, RngStream& rng);

// σ∘ρ: requires σ.universe == ρ.stars(). Stars can only shrink.
Restriction compose(const Restriction& rho, const Restriction& sigma);

// ρ⁻¹(1) as a graph; requires a full universe K([n]).
Graph restriction_to_graph(const Restriction& rho, int n);

}  // namespace cliquelab
