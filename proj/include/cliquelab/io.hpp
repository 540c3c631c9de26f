#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cliquelab/circuit.hpp"
#include "cliquelab/clique_sets.hpp"
#include "cliquelab/flat.hpp"
#include "cliquelab/graph.hpp"
#include "cliquelab/maximal_free.hpp"
#include "cliquelab/restriction.hpp"
#include "cliquelab/switching.hpp"

namespace cliquelab {

// Plain-text formats, exact grammars in docs/FORMATS.md. Vertices are written
// 0-based; readers accept an optional "base=1" header line and normalize.

std::string write_graph(const Graph& g);
Graph read_graph(const std::string& text);

std::string write_restriction(const Restriction& rho, int n);
Restriction read_restriction(const std::string& text, int* n_out = nullptr);

std::string write_circuit(const MonotoneCircuit& f);
MonotoneCircuit read_circuit(const std::string& text);

std::string write_cnf(const FlatCNF& f);
FlatCNF read_cnf(const std::string& text);
std::string write_dnf(const FlatDNF& f);
FlatDNF read_dnf(const std::string& text);

// families: sorted, one subset/graph per line
std::string write_clique_family(const CliqueFamily& fam);
CliqueFamily read_clique_family(const std::string& text);
std::string write_graph_family(const MaximalFreeFamily& fam);

// tree dumps: one node per line, plus a DOT export for visualization
std::string write_tree(const CliqueEdgeTree& tree);
std::string write_tree_dot(const CliqueEdgeTree& tree);

// small formatting helpers shared by reports
std::string format_vertex_set(const Bitset& vs);
std::string format_edge_set(const Bitset& edges, int n);

std::string slurp_file(const std::string& path);
void spit_file(const std::string& path, const std::string& content);

}  // namespace cliquelab
