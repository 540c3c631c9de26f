#pragma once

#include <vector>

#include "cliquelab/circuit.hpp"

namespace cliquelab {

// Strictly alternating AND/OR layers with wires only between adjacent layers.
// layers[0] is the bottom gate layer and always has fan-in 1 over the input
// layer; the top layer holds the single output gate. Gate children index into
// the layer below (the input list for layers[0]).
struct LayeredCircuit {
  int n = 0;
  std::vector<EdgeId> inputs;  // layer 0, ascending and unique

  struct Layer {
    GateKind kind = GateKind::Or;  // And or Or
    std::vector<std::vector<std::uint32_t>> gates;
  };
  std::vector<Layer> layers;

  int depth() const { return static_cast<int>(layers.size()); }
  std::size_t size() const;
};

// Rewrite f into alternating layered form. Same-kind gates collapse into
// their parents, then every gate lands on a layer of its own kind with
// fan-in-1 pass-through gates filling the gaps. Throws std::invalid_argument
// for constant circuits.
LayeredCircuit normalize_alternating(const MonotoneCircuit& f);

bool evaluate(const LayeredCircuit& f, const Bitset& edges);
bool evaluate(const LayeredCircuit& f, const Graph& g);

MonotoneCircuit to_circuit(const LayeredCircuit& f);

}  // namespace cliquelab
