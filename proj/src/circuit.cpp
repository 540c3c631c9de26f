#include "cliquelab/circuit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace cliquelab {

std::uint32_t MonotoneCircuit::add_input(EdgeId e) {
  if (e >= edge_count(n)) throw std::invalid_argument("add_input: edge id out of range");
  gates.push_back(Gate{GateKind::Input, e, {}});
  return static_cast<std::uint32_t>(gates.size() - 1);
}

std::uint32_t MonotoneCircuit::add_and(std::vector<std::uint32_t> children) {
  if (children.empty()) throw std::invalid_argument("add_and: needs at least one child");
  for (auto c : children)
    if (c >= gates.size()) throw std::invalid_argument("add_and: child index out of range");
  gates.push_back(Gate{GateKind::And, 0, std::move(children)});
  return static_cast<std::uint32_t>(gates.size() - 1);
}

std::uint32_t MonotoneCircuit::add_or(std::vector<std::uint32_t> children) {
  if (children.empty()) throw std::invalid_argument("add_or: needs at least one child");
  for (auto c : children)
    if (c >= gates.size()) throw std::invalid_argument("add_or: child index out of range");
  gates.push_back(Gate{GateKind::Or, 0, std::move(children)});
  return static_cast<std::uint32_t>(gates.size() - 1);
}

std::uint32_t MonotoneCircuit::add_const(bool value) {
  gates.push_back(Gate{value ? GateKind::ConstTrue : GateKind::ConstFalse, 0, {}});
  return static_cast<std::uint32_t>(gates.size() - 1);
}

void MonotoneCircuit::set_output(std::uint32_t g) {
  if (g >= gates.size()) throw std::invalid_argument("set_output: index out of range");
  output = g;
}

void validate(const MonotoneCircuit& f) {
  if (f.gates.empty()) throw std::invalid_argument("circuit: no gates");
  if (f.output >= f.gates.size()) throw std::invalid_argument("circuit: bad output index");
  for (std::size_t i = 0; i < f.gates.size(); ++i) {
    const Gate& g = f.gates[i];
    switch (g.kind) {
      case GateKind::Input:
        if (g.edge >= edge_count(f.n)) throw std::invalid_argument("circuit: input edge out of range");
        if (!g.children.empty()) throw std::invalid_argument("circuit: input with children");
        break;
      case GateKind::ConstTrue:
      case GateKind::ConstFalse:
        if (!g.children.empty()) throw std::invalid_argument("circuit: const with children");
        break;
      case GateKind::And:
      case GateKind::Or:
        if (g.children.empty()) throw std::invalid_argument("circuit: gate without children");
        for (auto c : g.children)
          if (c >= i) throw std::invalid_argument("circuit: child does not precede gate");
        break;
    }
  }
}

bool evaluate(const MonotoneCircuit& f, const Bitset& edges) {
  if (edges.capacity() != edge_count(f.n))
    throw std::invalid_argument("evaluate: edge set capacity mismatch");
  std::vector<char> val(f.gates.size());
  for (std::size_t i = 0; i < f.gates.size(); ++i) {
    const Gate& g = f.gates[i];
    switch (g.kind) {
      case GateKind::Input:
        val[i] = edges.test(g.edge);
        break;
      case GateKind::ConstTrue:
        val[i] = 1;
        break;
      case GateKind::ConstFalse:
        val[i] = 0;
        break;
      case GateKind::And: {
        char v = 1;
        for (auto c : g.children) v = static_cast<char>(v && val[c]);
        val[i] = v;
        break;
      }
      case GateKind::Or: {
        char v = 0;
        for (auto c : g.children) v = static_cast<char>(v || val[c]);
        val[i] = v;
        break;
      }
    }
  }
  return val[f.output];
}

bool evaluate(const MonotoneCircuit& f, const Graph& g) {
  if (f.n != g.n) throw std::invalid_argument("evaluate: vertex count mismatch");
  return evaluate(f, g.edges);
}

std::optional<bool> constant_value(const MonotoneCircuit& f) {
  const Gate& out = f.gates.at(f.output);
  if (out.kind == GateKind::ConstTrue) return true;
  if (out.kind == GateKind::ConstFalse) return false;
  return std::nullopt;
}

CircuitMeasure measure(const MonotoneCircuit& f) {
  std::vector<int> depth(f.gates.size(), 0);
  for (std::size_t i = 0; i < f.gates.size(); ++i) {
    const Gate& g = f.gates[i];
    if (g.kind == GateKind::And || g.kind == GateKind::Or) {
      int d = 0;
      for (auto c : g.children) d = std::max(d, depth[c]);
      depth[i] = d + 1;
    }
  }
  return CircuitMeasure{depth[f.output], f.gates.size()};
}

MonotoneCircuit trim_reachable(const MonotoneCircuit& f) {
  std::vector<char> keep(f.gates.size(), 0);
  std::vector<std::uint32_t> stack{f.output};
  keep[f.output] = 1;
  while (!stack.empty()) {
    const Gate& g = f.gates[stack.back()];
    stack.pop_back();
    for (auto c : g.children)
      if (!keep[c]) {
        keep[c] = 1;
        stack.push_back(c);
      }
  }
  MonotoneCircuit out(f.n);
  std::vector<std::uint32_t> remap(f.gates.size(), 0);
  for (std::size_t i = 0; i < f.gates.size(); ++i) {
    if (!keep[i]) continue;
    Gate g = f.gates[i];
    for (auto& c : g.children) c = remap[c];
    remap[i] = static_cast<std::uint32_t>(out.gates.size());
    out.gates.push_back(std::move(g));
  }
  out.output = remap[f.output];
  return out;
}

namespace {

// Rebuild value: either a constant or a gate index in the new circuit.
struct Rebuilt {
  signed char constant = -1;  // 0/1 when constant, -1 otherwise
  std::uint32_t index = 0;
};

MonotoneCircuit finish_rebuild(int n, std::vector<Gate>&& gates, const Rebuilt& out) {
  MonotoneCircuit res(n);
  if (out.constant >= 0) {
    res.add_const(out.constant == 1);
    res.output = 0;
    return res;
  }
  res.gates = std::move(gates);
  res.output = out.index;
  return trim_reachable(res);
}

}  // namespace

MonotoneCircuit constant_propagate(const MonotoneCircuit& f) {
  validate(f);
  MonotoneCircuit scratch(f.n);
  std::unordered_map<EdgeId, std::uint32_t> input_of;
  std::vector<Rebuilt> val(f.gates.size());
  for (std::size_t i = 0; i < f.gates.size(); ++i) {
    const Gate& g = f.gates[i];
    switch (g.kind) {
      case GateKind::ConstTrue:
        val[i] = Rebuilt{1, 0};
        break;
      case GateKind::ConstFalse:
        val[i] = Rebuilt{0, 0};
        break;
      case GateKind::Input: {
        auto it = input_of.find(g.edge);
        if (it == input_of.end()) it = input_of.emplace(g.edge, scratch.add_input(g.edge)).first;
        val[i] = Rebuilt{-1, it->second};
        break;
      }
      case GateKind::And:
      case GateKind::Or: {
        const bool is_and = g.kind == GateKind::And;
        const signed char absorbing = is_and ? 0 : 1;  // false kills AND, true kills OR
        bool dead = false;
        std::vector<std::uint32_t> kept;
        for (auto c : g.children) {
          if (val[c].constant == absorbing) {
            dead = true;
            break;
          }
          if (val[c].constant >= 0) continue;  // neutral constant drops out
          if (std::find(kept.begin(), kept.end(), val[c].index) == kept.end())
            kept.push_back(val[c].index);
        }
        if (dead)
          val[i] = Rebuilt{absorbing, 0};
        else if (kept.empty())
          val[i] = Rebuilt{static_cast<signed char>(is_and ? 1 : 0), 0};
        else if (kept.size() == 1)
          val[i] = Rebuilt{-1, kept[0]};
        else
          val[i] = Rebuilt{-1, is_and ? scratch.add_and(std::move(kept)) : scratch.add_or(std::move(kept))};
        break;
      }
    }
  }
  return finish_rebuild(f.n, std::move(scratch.gates), val[f.output]);
}

MonotoneCircuit apply_restriction(const MonotoneCircuit& f, const Restriction& rho) {
  validate(f);
  Bitset full(edge_count(f.n));
  full.set_all();
  if (rho.universe != full)
    throw std::invalid_argument("apply_restriction: universe must be all of K([n])");
  MonotoneCircuit wired(f.n);
  wired.gates = f.gates;
  for (auto& g : wired.gates)
    if (g.kind == GateKind::Input && rho.ones.test(g.edge)) g.kind = GateKind::ConstTrue;
  wired.output = f.output;
  return constant_propagate(wired);
}

}  // namespace cliquelab
