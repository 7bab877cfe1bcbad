#pragma once

#include "cochromatic/graph.hpp"

#include <iosfwd>
#include <string>

namespace cochromatic {

/// DIMACS edge format: `c` comments, `p edge n m`, `e u v` with 1-based labels.
Graph read_dimacs(std::istream & in);
void write_dimacs(std::ostream & out, const Graph & g);

/// JSON {"n": int, "edges": [[u, v], ...]} with 0-based labels.
Graph read_graph_json(std::istream & in);
void write_graph_json(std::ostream & out, const Graph & g);

/// Reads either format, detected from the first non-blank character.
Graph load_graph(const std::string & path);

} // namespace cochromatic
