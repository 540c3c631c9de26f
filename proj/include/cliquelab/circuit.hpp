#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cliquelab/bitset.hpp"
#include "cliquelab/graph.hpp"
#include "cliquelab/restriction.hpp"

namespace cliquelab {

enum class GateKind : std::uint8_t { Input, And, Or, ConstTrue, ConstFalse };

struct Gate {
  GateKind kind = GateKind::Input;
  EdgeId edge = 0;                  // Input only
  std::vector<std::uint32_t> children;  // And/Or only, indices of earlier gates
};

// Monotone circuit over the edge variables of K([n]): a DAG of AND/OR gates
// whose children always precede them in the gate list. Constant gates appear
// only as the single gate of a constant circuit.
struct MonotoneCircuit {
  int n = 0;
  std::vector<Gate> gates;
  std::uint32_t output = 0;

  MonotoneCircuit() = default;
  explicit MonotoneCircuit(int n_) : n(n_) {}

  std::uint32_t add_input(EdgeId e);
  std::uint32_t add_input(int u, int v) { return add_input(edge_id(u, v, n)); }
  std::uint32_t add_and(std::vector<std::uint32_t> children);
  std::uint32_t add_or(std::vector<std::uint32_t> children);
  std::uint32_t add_const(bool value);
  void set_output(std::uint32_t g);

  std::size_t size() const { return gates.size(); }
};

void validate(const MonotoneCircuit& f);

bool evaluate(const MonotoneCircuit& f, const Bitset& edges);
bool evaluate(const MonotoneCircuit& f, const Graph& g);

// Some input circuit is constant: returns its value.
std::optional<bool> constant_value(const MonotoneCircuit& f);

struct CircuitMeasure {
  int depth = 0;        // longest output-to-input path; inputs have depth 0
  std::size_t size = 0;  // node count
};
CircuitMeasure measure(const MonotoneCircuit& f);

// Drop gates unreachable from the output.
MonotoneCircuit trim_reachable(const MonotoneCircuit& f);

// Fold constants and collapse single-child gates. A constant result becomes a
// one-gate Const circuit.
MonotoneCircuit constant_propagate(const MonotoneCircuit& f);

// f_ρ: hard-wire ρ⁻¹(1) inputs to true and propagate. The result reads only
// ★ inputs and satisfies result(u) = f(u ∪ ρ⁻¹(1)) for all u ⊆ ρ⁻¹(★).
// Requires a full universe K([n]).
MonotoneCircuit apply_restriction(const MonotoneCircuit& f, const Restriction& rho);

}  // namespace cliquelab
