#include "cochromatic/graph_io.hpp"

#include "cochromatic/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cochromatic {

Graph read_dimacs(std::istream & in)
{
    std::string line;
    int n = -1;
    std::int64_t declared_edges = -1;
    std::vector<std::pair<int, int>> edges;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (! (ls >> tag) || tag == "c")
            continue;
        if (tag == "p") {
            std::string kind;
            require(static_cast<bool>(ls >> kind >> n >> declared_edges), "DIMACS: malformed problem line " + std::to_string(line_no));
            require(kind == "edge" || kind == "col", "DIMACS: expected 'p edge n m'");
            require(n >= 0 && declared_edges >= 0, "DIMACS: negative size in problem line");
        }
        else if (tag == "e") {
            require(n >= 0, "DIMACS: edge before problem line");
            int u = 0, v = 0;
            require(static_cast<bool>(ls >> u >> v), "DIMACS: malformed edge line " + std::to_string(line_no));
            require(u >= 1 && v >= 1 && u <= n && v <= n, "DIMACS: vertex label out of range on line " + std::to_string(line_no));
            edges.emplace_back(u - 1, v - 1);
        }
        else
            throw PreconditionError("DIMACS: unknown line tag '" + tag + "'");
    }
    require(n >= 0, "DIMACS: missing problem line");
    Graph g = Graph::from_edges(n, edges);
    require(g.edge_count() == declared_edges, "DIMACS: edge count does not match problem line");
    return g;
}

void write_dimacs(std::ostream & out, const Graph & g)
{
    auto edges = g.edges();
    out << "p edge " << g.size() << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges)
        out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

Graph read_graph_json(std::istream & in)
{
    nlohmann::json j;
    try {
        in >> j;
    }
    catch (const nlohmann::json::exception & e) {
        throw PreconditionError(std::string("graph JSON: ") + e.what());
    }
    require(j.is_object() && j.contains("n") && j["n"].is_number_integer(), "graph JSON: missing integer field 'n'");
    int n = j["n"].get<int>();
    require(n >= 0, "graph JSON: n must be non-negative");
    std::vector<std::pair<int, int>> edges;
    if (j.contains("edges")) {
        require(j["edges"].is_array(), "graph JSON: 'edges' must be an array");
        for (const auto & e : j["edges"]) {
            require(e.is_array() && e.size() == 2 && e[0].is_number_integer() && e[1].is_number_integer(),
                    "graph JSON: each edge must be [u, v]");
            int u = e[0].get<int>(), v = e[1].get<int>();
            require(u >= 0 && v >= 0 && u < n && v < n, "graph JSON: vertex label out of range");
            edges.emplace_back(u, v);
        }
    }
    return Graph::from_edges(n, edges);
}

void write_graph_json(std::ostream & out, const Graph & g)
{
    nlohmann::json j;
    j["n"] = g.size();
    j["edges"] = nlohmann::json::array();
    for (auto [u, v] : g.edges())
        j["edges"].push_back({u, v});
    out << j.dump() << '\n';
}

Graph load_graph(const std::string & path)
{
    std::ifstream in(path);
    if (! in)
        throw std::runtime_error("cannot open graph file: " + path);
    char c = 0;
    while (in.get(c) && std::isspace(static_cast<unsigned char>(c)))
        ;
    in.unget();
    if (c == '{')
        return read_graph_json(in);
    return read_dimacs(in);
}

} // namespace cochromatic
