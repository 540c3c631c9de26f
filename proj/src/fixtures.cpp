#include "cliquelab/fixtures.hpp"

#include <stdexcept>

#include "cliquelab/generators.hpp"
#include "cliquelab/graph.hpp"
#include "cliquelab/rng.hpp"

namespace cliquelab {
namespace fixtures {

namespace {

Bitset edges_of(int n, std::initializer_list<std::pair<int, int>> pairs) {
  Bitset out(edge_count(n));
  for (auto [u, v] : pairs) out.set(edge_id(u, v, n));
  return out;
}

}  // namespace

FlatCNF figure_formula() {
  FlatCNF f(5);
  f.clauses.push_back(edges_of(5, {{0, 1}, {0, 2}}));
  f.clauses.push_back(edges_of(5, {{0, 1}, {2, 3}}));
  f.clauses.push_back(edges_of(5, {{0, 3}, {1, 4}, {3, 4}}));
  return f;
}

std::vector<Bitset> figure_a2() {
  return {vertex_set(5, {0, 1, 3}), vertex_set(5, {0, 1, 3, 4}), vertex_set(5, {0, 1, 4}),
          vertex_set(5, {0, 2, 3})};
}

std::vector<Bitset> figure_b3() {
  return {vertex_set(5, {0, 1, 2, 3}), vertex_set(5, {0, 1, 2, 3, 4}), vertex_set(5, {0, 1, 2, 4})};
}

std::vector<Bitset> figure_z_members() {
  return {vertex_set(5, {0, 1, 3}), vertex_set(5, {0, 1, 4}), vertex_set(5, {0, 2, 3})};
}

namespace {

// AND of two 2-monomial DNFs on 6 vertices
MonotoneCircuit and_of_dnfs() {
  MonotoneCircuit f(6);
  auto m1 = f.add_and({f.add_input(0, 1), f.add_input(2, 3)});
  auto m2 = f.add_and({f.add_input(1, 2), f.add_input(4, 5)});
  auto m3 = f.add_and({f.add_input(0, 4), f.add_input(3, 5)});
  auto m4 = f.add_and({f.add_input(0, 1), f.add_input(1, 5)});
  auto d1 = f.add_or({m1, m2});
  auto d2 = f.add_or({m3, m4});
  f.output = f.add_and({d1, d2});
  return f;
}

// OR of two 2-clause CNFs on 5 vertices
MonotoneCircuit or_of_cnfs() {
  MonotoneCircuit f(5);
  auto c1 = f.add_or({f.add_input(0, 1), f.add_input(1, 2)});
  auto c2 = f.add_or({f.add_input(2, 3), f.add_input(3, 4)});
  auto c3 = f.add_or({f.add_input(0, 4), f.add_input(0, 2)});
  auto a1 = f.add_and({c1, c2});
  auto a2 = f.add_and({c3, c1});
  f.output = f.add_or({a1, a2});
  return f;
}

// depth-4 mixed shape on 5 vertices
MonotoneCircuit mixed_depth4() {
  MonotoneCircuit f(5);
  auto a = f.add_and({f.add_input(0, 1), f.add_input(0, 2)});
  auto b = f.add_or({a, f.add_input(1, 2)});
  auto c = f.add_and({b, f.add_input(2, 3)});
  auto d = f.add_or({c, f.add_input(3, 4)});
  f.output = d;
  return f;
}

}  // namespace

MonotoneCircuit toy_circuit(int index) {
  switch (index) {
    case 0:
      return and_of_dnfs();
    case 1:
      return or_of_cnfs();
    case 2:
      return mixed_depth4();
    default: {
      if (index < 0 || index >= toy_circuit_count())
        throw std::invalid_argument("toy_circuit: index out of range");
      // the remaining circuits are seeded random shapes, frozen by the seed
      RngStream gen(0x70c1, static_cast<std::uint64_t>(index));
      const int n = 4 + static_cast<int>(gen.below(3));          // 4..6
      const int levels = 2 + static_cast<int>(gen.below(3));     // 2..4
      const int per_level = 2 + static_cast<int>(gen.below(2));  // 2..3
      return random_circuit(n, levels, per_level, 3, gen);
    }
  }
}

int toy_circuit_count() { return 20; }

}  // namespace fixtures
}  // namespace cliquelab
