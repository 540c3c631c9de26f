#pragma once

#include "cliquelab/circuit.hpp"
#include "cliquelab/flat.hpp"
#include "cliquelab/rng.hpp"

namespace cliquelab {

// Random flat forms: between 1 and max_groups groups, each of 1..max_width
// distinct edges.
FlatCNF random_cnf(int n, int max_clauses, int max_width, RngStream& rng);
FlatDNF random_dnf(int n, int max_monomials, int max_width, RngStream& rng);

// Random monotone circuit built level by level: random AND/OR gates over
// earlier gates and inputs.
MonotoneCircuit random_circuit(int n, int levels, int gates_per_level, int max_fanin,
                               RngStream& rng);

Bitset random_edge_subset(int n, double density, RngStream& rng);

}  // namespace cliquelab
