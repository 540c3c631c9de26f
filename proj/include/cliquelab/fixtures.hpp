#pragma once

#include <vector>

#include "cliquelab/circuit.hpp"
#include "cliquelab/flat.hpp"

namespace cliquelab {
namespace fixtures {

// The worked 3-clause example on 5 vertices (1-based in the docs, 0-based
// here): (01 ∨ 02) ∧ (01 ∨ 23) ∧ (03 ∨ 14 ∨ 34). Regression anchor for the
// tree builders and the Z oracles.
FlatCNF figure_formula();

// Frozen expectations for the figure formula under the all-★ restriction.
std::vector<Bitset> figure_a2();        // T-leaf vertex labels up to depth 2
std::vector<Bitset> figure_b3();        // all T-node vertex labels at depth 3
std::vector<Bitset> figure_z_members(); // clique implication set at k=3

// Deterministic small layered circuits (depth <= 4, n <= 6) for pipeline
// exercises. index 0 is the AND of two 2-monomial DNFs on 6 vertices.
MonotoneCircuit toy_circuit(int index);
int toy_circuit_count();

}  // namespace fixtures
}  // namespace cliquelab
