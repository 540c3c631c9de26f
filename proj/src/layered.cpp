#include "cliquelab/layered.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cliquelab {

std::size_t LayeredCircuit::size() const {
  std::size_t s = inputs.size();
  for (const auto& l : layers) s += l.gates.size();
  return s;
}

namespace {

struct Ref {
  bool is_input;
  std::uint32_t id;  // gate index, or position in the input list
  auto operator<=>(const Ref&) const = default;
};

GateKind flip(GateKind k) { return k == GateKind::And ? GateKind::Or : GateKind::And; }

}  // namespace

LayeredCircuit normalize_alternating(const MonotoneCircuit& input) {
  MonotoneCircuit f = constant_propagate(input);
  if (constant_value(f)) throw std::invalid_argument("normalize_alternating: constant circuit");

  // input list, ascending
  std::vector<EdgeId> edges;
  for (const auto& g : f.gates)
    if (g.kind == GateKind::Input) edges.push_back(g.edge);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::map<EdgeId, std::uint32_t> input_pos;
  for (std::size_t i = 0; i < edges.size(); ++i) input_pos[edges[i]] = static_cast<std::uint32_t>(i);

  // collapse same-kind children, in gate order so children are ready first
  std::vector<std::vector<Ref>> flat(f.gates.size());
  for (std::size_t i = 0; i < f.gates.size(); ++i) {
    const Gate& g = f.gates[i];
    if (g.kind == GateKind::Input) continue;
    std::vector<Ref> refs;
    for (auto c : g.children) {
      const Gate& ch = f.gates[c];
      if (ch.kind == GateKind::Input)
        refs.push_back(Ref{true, input_pos.at(ch.edge)});
      else if (ch.kind == g.kind)
        refs.insert(refs.end(), flat[c].begin(), flat[c].end());
      else
        refs.push_back(Ref{false, c});
    }
    // stable dedupe
    std::vector<Ref> seen;
    for (const Ref& r : refs)
      if (std::find(seen.begin(), seen.end(), r) == seen.end()) seen.push_back(r);
    flat[i] = std::move(seen);
  }

  // minimal layer per gate: at least 2 (the bottom layer is pass-through)
  std::vector<int> level(f.gates.size(), 0);
  for (std::size_t i = 0; i < f.gates.size(); ++i) {
    if (f.gates[i].kind == GateKind::Input) continue;
    int l = 2;
    for (const Ref& r : flat[i])
      if (!r.is_input) l = std::max(l, level[r.id] + 1);
    level[i] = l;
  }

  LayeredCircuit out;
  out.n = f.n;
  out.inputs = edges;

  const bool output_is_input = f.gates[f.output].kind == GateKind::Input;
  const int total = output_is_input ? 1 : level[f.output];
  out.layers.resize(total);
  const GateKind top_kind = output_is_input ? GateKind::Or : f.gates[f.output].kind;
  for (int l = total; l >= 1; --l)
    out.layers[l - 1].kind = ((total - l) % 2 == 0) ? top_kind : flip(top_kind);

  // place each reference at each layer at most once
  std::map<std::pair<Ref, int>, std::uint32_t> placed;
  auto emit = [&](auto&& self, Ref r, int layer) -> std::uint32_t {
    if (layer == 0) {
      if (!r.is_input) throw std::logic_error("normalize_alternating: gate fell through to inputs");
      return r.id;
    }
    auto key = std::make_pair(r, layer);
    if (auto it = placed.find(key); it != placed.end()) return it->second;
    std::vector<std::uint32_t> kids;
    if (r.is_input || f.gates[r.id].kind != out.layers[layer - 1].kind) {
      kids.push_back(self(self, r, layer - 1));  // pass-through
    } else {
      for (const Ref& c : flat[r.id]) kids.push_back(self(self, c, layer - 1));
    }
    out.layers[layer - 1].gates.push_back(std::move(kids));
    const auto idx = static_cast<std::uint32_t>(out.layers[layer - 1].gates.size() - 1);
    placed[key] = idx;
    return idx;
  };
  emit(emit, Ref{output_is_input, output_is_input ? input_pos.at(f.gates[f.output].edge) : f.output},
       total);

  if (out.layers.back().gates.size() != 1)
    throw std::logic_error("normalize_alternating: top layer must hold the single output");
  return out;
}

bool evaluate(const LayeredCircuit& f, const Bitset& edges) {
  if (edges.capacity() != edge_count(f.n))
    throw std::invalid_argument("evaluate: edge set capacity mismatch");
  std::vector<char> below(f.inputs.size());
  for (std::size_t i = 0; i < f.inputs.size(); ++i) below[i] = edges.test(f.inputs[i]);
  for (const auto& layer : f.layers) {
    std::vector<char> cur(layer.gates.size());
    const bool is_and = layer.kind == GateKind::And;
    for (std::size_t i = 0; i < layer.gates.size(); ++i) {
      char v = is_and ? 1 : 0;
      for (auto c : layer.gates[i]) v = static_cast<char>(is_and ? (v && below[c]) : (v || below[c]));
      cur[i] = v;
    }
    below = std::move(cur);
  }
  return below.at(0);
}

bool evaluate(const LayeredCircuit& f, const Graph& g) {
  if (f.n != g.n) throw std::invalid_argument("evaluate: vertex count mismatch");
  return evaluate(f, g.edges);
}

MonotoneCircuit to_circuit(const LayeredCircuit& f) {
  MonotoneCircuit out(f.n);
  std::vector<std::uint32_t> below;
  for (EdgeId e : f.inputs) below.push_back(out.add_input(e));
  for (const auto& layer : f.layers) {
    std::vector<std::uint32_t> cur;
    for (const auto& kids : layer.gates) {
      std::vector<std::uint32_t> mapped;
      mapped.reserve(kids.size());
      for (auto c : kids) mapped.push_back(below.at(c));
      cur.push_back(layer.kind == GateKind::And ? out.add_and(std::move(mapped))
                                                : out.add_or(std::move(mapped)));
    }
    below = std::move(cur);
  }
  out.output = below.at(0);
  return out;
}

}  // namespace cliquelab
