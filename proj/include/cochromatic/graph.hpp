#pragma once

#include "cochromatic/vertex_set.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cochromatic {

/// Simple undirected graph on vertices 0..n-1 with bitset adjacency.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);

    int size() const noexcept { return n_; }
    bool adjacent(int u, int v) const noexcept { return adj_[u].test(v); }
    const VertexSet & neighbours(int v) const noexcept { return adj_[v]; }
    int degree(int v) const noexcept { return adj_[v].count(); }
    std::int64_t edge_count() const noexcept;

    /// Edges (u, v) with u < v, in lexicographic order.
    std::vector<std::pair<int, int>> edges() const;

    void add_edge(int u, int v);
    void remove_edge(int u, int v);

    bool is_independent(const VertexSet & s) const noexcept;
    bool is_clique(const VertexSet & s) const noexcept;

    /// Checks symmetry and absence of self-loops.
    bool well_formed() const noexcept;

    friend bool operator==(const Graph &, const Graph &) = default;

private:
    int n_ = 0;
    std::vector<VertexSet> adj_;
};

Graph complement(const Graph & g);

Graph empty_graph(int n);
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph petersen_graph();
/// Perfect matching on n (even) vertices: edges {0,1}, {2,3}, ...
Graph perfect_matching(int n);

/// Parameters of G(n, m): N = n(n-1)/2 pairs, m edges (default floor(N/2)).
struct GnmParams {
    int n = 0;
    std::int64_t pairs = 0;
    std::int64_t m = 0;

    static GnmParams make(int n);
    static GnmParams make(int n, std::int64_t m);
};

/// G(n, 1/2): every pair is an edge independently with probability 1/2.
Graph sample_gnp_half(int n, std::uint64_t seed);

/// Uniform graph with exactly m edges (partial Fisher-Yates over pair indices).
Graph sample_gnm(const GnmParams & params, std::uint64_t seed);

/// Pair index i in [0, N) <-> (u, v), u < v, row-major over u.
std::pair<int, int> pair_from_index(int n, std::int64_t index);
std::int64_t pair_index(int n, int u, int v);

// Clique and independent-set search.

/// A maximum clique among the vertices of `within` (all vertices if omitted).
/// Branch and bound with greedy-colouring bounds; vertices ordered by degree.
VertexSet maximum_clique(const Graph & g, const std::optional<VertexSet> & within = std::nullopt);
VertexSet maximum_independent_set(const Graph & g, const std::optional<VertexSet> & within = std::nullopt);

int clique_number(const Graph & g);
int independence_number(const Graph & g);

/// Number of independent vertex sets of exactly `size` vertices.
std::uint64_t count_independent_sets(const Graph & g, int size);
std::uint64_t count_cliques(const Graph & g, int size);

/// Visits every independent set S with min_size <= |S| <= max_size.
void for_each_independent_set(const Graph & g, int min_size, int max_size,
                              const std::function<void(const VertexSet &)> & visit);

/// Stable 64-bit FNV-1a hash of (n, sorted edge list), rendered as 16 hex digits.
std::string graph_hash(const Graph & g);

} // namespace cochromatic
