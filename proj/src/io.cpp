#include "cliquelab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cliquelab {

namespace {

struct LineReader {
  std::istringstream in;
  int base = 0;
  int n = 0;

  explicit LineReader(const std::string& text) : in(text) {}

  // next non-empty, non-comment line
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      const auto pos = line.find('#');
      if (pos != std::string::npos) line.erase(pos);
      while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t'))
        line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }

  void expect_header(const std::string& line, const std::string& kind) {
    if (line != kind + " v1")
      throw std::invalid_argument("expected '" + kind + " v1' header, got: " + line);
  }

  // parses "n=<N>" and optional "base=<0|1>" lines; returns false when the
  // line is something else
  bool header_field(const std::string& line) {
    if (line.rfind("n=", 0) == 0) {
      n = std::stoi(line.substr(2));
      return true;
    }
    if (line.rfind("base=", 0) == 0) {
      base = std::stoi(line.substr(5));
      if (base != 0 && base != 1) throw std::invalid_argument("base must be 0 or 1");
      return true;
    }
    return false;
  }

  int vertex(int raw) const {
    const int v = raw - base;
    if (v < 0 || v >= n) throw std::invalid_argument("vertex out of range: " + std::to_string(raw));
    return v;
  }
};

}  // namespace

std::string format_vertex_set(const Bitset& vs) {
  std::string out = "{";
  bool first = true;
  for (int v : vs.to_vector()) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

std::string format_edge_set(const Bitset& edges, int n) {
  std::string out = "{";
  bool first = true;
  for (std::size_t e = edges.first(); e != Bitset::npos; e = edges.next(e)) {
    auto [u, v] = edge_endpoints(static_cast<EdgeId>(e), n);
    if (!first) out += ",";
    out += std::to_string(u) + "-" + std::to_string(v);
    first = false;
  }
  return out + "}";
}

std::string write_graph(const Graph& g) {
  std::ostringstream out;
  out << "graph v1\n" << "n=" << g.n << "\n";
  for (std::size_t e = g.edges.first(); e != Bitset::npos; e = g.edges.next(e)) {
    auto [u, v] = edge_endpoints(static_cast<EdgeId>(e), g.n);
    out << u << " " << v << "\n";
  }
  return out.str();
}

Graph read_graph(const std::string& text) {
  LineReader r(text);
  std::string line;
  if (!r.next(line)) throw std::invalid_argument("read_graph: empty input");
  r.expect_header(line, "graph");
  Graph g;
  bool have_n = false;
  while (r.next(line)) {
    if (r.header_field(line)) {
      if (!have_n && r.n > 0) {
        g = Graph(r.n);
        have_n = true;
      }
      continue;
    }
    if (!have_n) throw std::invalid_argument("read_graph: edge before n= header");
    std::istringstream ls(line);
    int u, v;
    if (!(ls >> u >> v)) throw std::invalid_argument("read_graph: bad edge line: " + line);
    g.add_edge(r.vertex(u), r.vertex(v));
  }
  if (!have_n) throw std::invalid_argument("read_graph: missing n= header");
  return g;
}

std::string write_restriction(const Restriction& rho, int n) {
  std::ostringstream out;
  out << "restriction v1\n" << "n=" << n << "\n";
  for (std::size_t e = rho.universe.first(); e != Bitset::npos; e = rho.universe.next(e)) {
    auto [u, v] = edge_endpoints(static_cast<EdgeId>(e), n);
    out << u << " " << v << " " << (rho.ones.test(e) ? "1" : "*") << "\n";
  }
  return out.str();
}

Restriction read_restriction(const std::string& text, int* n_out) {
  LineReader r(text);
  std::string line;
  if (!r.next(line)) throw std::invalid_argument("read_restriction: empty input");
  r.expect_header(line, "restriction");
  Bitset universe, ones;
  bool have_n = false;
  while (r.next(line)) {
    if (r.header_field(line)) {
      if (!have_n && r.n > 0) {
        universe = Bitset(edge_count(r.n));
        ones = Bitset(edge_count(r.n));
        have_n = true;
      }
      continue;
    }
    if (!have_n) throw std::invalid_argument("read_restriction: entry before n= header");
    std::istringstream ls(line);
    int u, v;
    std::string mark;
    if (!(ls >> u >> v >> mark) || (mark != "1" && mark != "*"))
      throw std::invalid_argument("read_restriction: bad line: " + line);
    const EdgeId e = edge_id(r.vertex(u), r.vertex(v), r.n);
    universe.set(e);
    if (mark == "1") ones.set(e);
  }
  if (!have_n) throw std::invalid_argument("read_restriction: missing n= header");
  if (n_out) *n_out = r.n;
  return Restriction(std::move(universe), std::move(ones));
}

std::string write_circuit(const MonotoneCircuit& f) {
  std::ostringstream out;
  out << "circuit v1\n" << "n=" << f.n << "\n";
  for (std::size_t i = 0; i < f.gates.size(); ++i) {
    const Gate& g = f.gates[i];
    out << "gate " << i << " ";
    switch (g.kind) {
      case GateKind::Input: {
        auto [u, v] = edge_endpoints(g.edge, f.n);
        out << "input " << u << " " << v;
        break;
      }
      case GateKind::ConstTrue:
        out << "true";
        break;
      case GateKind::ConstFalse:
        out << "false";
        break;
      case GateKind::And:
      case GateKind::Or:
        out << (g.kind == GateKind::And ? "and" : "or");
        for (auto c : g.children) out << " " << c;
        break;
    }
    out << "\n";
  }
  out << "output " << f.output << "\n";
  return out.str();
}

MonotoneCircuit read_circuit(const std::string& text) {
  LineReader r(text);
  std::string line;
  if (!r.next(line)) throw std::invalid_argument("read_circuit: empty input");
  r.expect_header(line, "circuit");
  MonotoneCircuit f;
  bool have_n = false, have_output = false;
  while (r.next(line)) {
    if (r.header_field(line)) {
      if (!have_n && r.n > 0) {
        f = MonotoneCircuit(r.n);
        have_n = true;
      }
      continue;
    }
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "output") {
      std::uint32_t idx;
      if (!(ls >> idx)) throw std::invalid_argument("read_circuit: bad output line");
      f.set_output(idx);
      have_output = true;
      continue;
    }
    if (word != "gate") throw std::invalid_argument("read_circuit: unexpected line: " + line);
    if (!have_n) throw std::invalid_argument("read_circuit: gate before n= header");
    std::size_t idx;
    std::string kind;
    if (!(ls >> idx >> kind)) throw std::invalid_argument("read_circuit: bad gate line: " + line);
    if (idx != f.gates.size())
      throw std::invalid_argument("read_circuit: gate ids must be sequential");
    if (kind == "input") {
      int u, v;
      if (!(ls >> u >> v)) throw std::invalid_argument("read_circuit: bad input gate: " + line);
      f.add_input(r.vertex(u), r.vertex(v));
    } else if (kind == "true") {
      f.add_const(true);
    } else if (kind == "false") {
      f.add_const(false);
    } else if (kind == "and" || kind == "or") {
      std::vector<std::uint32_t> kids;
      std::uint32_t c;
      while (ls >> c) kids.push_back(c);
      if (kind == "and")
        f.add_and(std::move(kids));
      else
        f.add_or(std::move(kids));
    } else {
      throw std::invalid_argument("read_circuit: unknown gate kind: " + kind);
    }
  }
  if (!have_output) throw std::invalid_argument("read_circuit: missing output line");
  validate(f);
  return f;
}

namespace {

std::string write_flat(const std::vector<Bitset>& groups, int n, const char* kind,
                       const char* word) {
  std::ostringstream out;
  out << kind << " v1\n" << "n=" << n << "\n";
  for (const auto& g : groups) {
    out << word;
    for (std::size_t e = g.first(); e != Bitset::npos; e = g.next(e)) {
      auto [u, v] = edge_endpoints(static_cast<EdgeId>(e), n);
      out << " " << u << " " << v;
    }
    out << "\n";
  }
  return out.str();
}

std::vector<Bitset> read_flat(const std::string& text, const char* kind, const char* word,
                              int* n_out) {
  LineReader r(text);
  std::string line;
  if (!r.next(line)) throw std::invalid_argument("read_flat: empty input");
  r.expect_header(line, kind);
  std::vector<Bitset> groups;
  bool have_n = false;
  while (r.next(line)) {
    if (r.header_field(line)) {
      have_n = have_n || r.n > 0;
      continue;
    }
    if (!have_n) throw std::invalid_argument("read_flat: entry before n= header");
    std::istringstream ls(line);
    std::string w;
    ls >> w;
    if (w != word) throw std::invalid_argument("read_flat: unexpected line: " + line);
    Bitset g(edge_count(r.n));
    int u, v;
    while (ls >> u >> v) g.set(edge_id(r.vertex(u), r.vertex(v), r.n));
    groups.push_back(std::move(g));
  }
  if (!have_n) throw std::invalid_argument("read_flat: missing n= header");
  if (n_out) *n_out = r.n;
  return groups;
}

}  // namespace

std::string write_cnf(const FlatCNF& f) { return write_flat(f.clauses, f.n, "cnf", "clause"); }

FlatCNF read_cnf(const std::string& text) {
  int n = 0;
  auto groups = read_flat(text, "cnf", "clause", &n);
  return FlatCNF(n, std::move(groups));
}

std::string write_dnf(const FlatDNF& f) { return write_flat(f.monomials, f.n, "dnf", "monomial"); }

FlatDNF read_dnf(const std::string& text) {
  int n = 0;
  auto groups = read_flat(text, "dnf", "monomial", &n);
  return FlatDNF(n, std::move(groups));
}

std::string write_clique_family(const CliqueFamily& fam) {
  std::ostringstream out;
  out << "cliquefamily v1\n" << "n=" << fam.n << " k=" << fam.k << "\n";
  for (const auto& a : fam.members) {
    bool first = true;
    for (int v : a.to_vector()) {
      if (!first) out << " ";
      out << v;
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

CliqueFamily read_clique_family(const std::string& text) {
  LineReader r(text);
  std::string line;
  if (!r.next(line)) throw std::invalid_argument("read_clique_family: empty input");
  r.expect_header(line, "cliquefamily");
  if (!r.next(line)) throw std::invalid_argument("read_clique_family: missing n/k header");
  int n = 0, k = 0;
  if (std::sscanf(line.c_str(), "n=%d k=%d", &n, &k) != 2)
    throw std::invalid_argument("read_clique_family: bad n/k header: " + line);
  r.n = n;
  CliqueFamily fam(n, k);
  while (r.next(line)) {
    std::istringstream ls(line);
    Bitset a(static_cast<std::size_t>(n));
    int v;
    while (ls >> v) a.set(static_cast<std::size_t>(r.vertex(v)));
    fam.insert(a);
  }
  return fam;
}

std::string write_graph_family(const MaximalFreeFamily& fam) {
  std::ostringstream out;
  out << "graphfamily v1\n" << "n=" << fam.n << " k=" << fam.k << "\n";
  std::vector<Bitset> edge_sets;
  edge_sets.reserve(fam.graphs.size());
  for (const auto& g : fam.graphs) edge_sets.push_back(g.edges);
  std::sort(edge_sets.begin(), edge_sets.end(), Bitset::lex_less);
  for (const auto& edges : edge_sets) {
    if (edges.none()) {
      out << ".\n";
      continue;
    }
    bool first = true;
    for (std::size_t e = edges.first(); e != Bitset::npos; e = edges.next(e)) {
      auto [u, v] = edge_endpoints(static_cast<EdgeId>(e), fam.n);
      if (!first) out << " ";
      out << u << "-" << v;
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

std::string write_tree(const CliqueEdgeTree& tree) {
  std::ostringstream out;
  out << "tree v1\n" << "n=" << tree.n << "\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& v = tree.nodes[i];
    out << "node " << i << " depth=" << v.depth << " A=" << format_vertex_set(v.vertices)
        << " G=" << format_edge_set(v.edges, tree.n) << " clause=";
    if (v.clause >= 0)
      out << v.clause;
    else
      out << "-";
    out << " children=";
    for (std::size_t j = 0; j < v.children.size(); ++j) {
      if (j) out << ",";
      out << v.children[j];
    }
    out << " flags=";
    std::string flags;
    if (v.in_t) flags += "T,";
    if (v.t_leaf) flags += "Tleaf,";
    if (v.tp_leaf) flags += "TPleaf,";
    if (!v.expanded) flags += "cut,";
    if (flags.empty()) flags = "-";
    else flags.pop_back();
    out << flags << "\n";
  }
  return out.str();
}

std::string write_tree_dot(const CliqueEdgeTree& tree) {
  std::ostringstream out;
  out << "digraph tree {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& v = tree.nodes[i];
    out << "  v" << i << " [label=\"A=" << format_vertex_set(v.vertices)
        << "\\nG=" << format_edge_set(v.edges, tree.n);
    if (v.clause >= 0) out << "\\nq" << v.clause;
    out << "\"";
    if (v.t_leaf || v.tp_leaf) out << " style=filled fillcolor=lightgrey";
    out << "];\n";
    for (auto c : v.children) out << "  v" << i << " -> v" << c << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

}  // namespace cliquelab
