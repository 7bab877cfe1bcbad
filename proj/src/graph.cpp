#include "cochromatic/graph.hpp"

#include "cochromatic/errors.hpp"
#include "cochromatic/rng.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace cochromatic {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), VertexSet(n))
{
    require(n >= 0, "graph size must be non-negative");
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges)
{
    Graph g(n);
    for (auto [u, v] : edges)
        g.add_edge(u, v);
    return g;
}

std::int64_t Graph::edge_count() const noexcept
{
    std::int64_t degree_sum = 0;
    for (const auto & a : adj_)
        degree_sum += a.count();
    return degree_sum / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int u = 0 ; u < n_ ; ++u)
        for (int v = adj_[u].next(u) ; v != -1 ; v = adj_[u].next(v))
            out.emplace_back(u, v);
    return out;
}

void Graph::add_edge(int u, int v)
{
    require(u >= 0 && v >= 0 && u < n_ && v < n_, "edge endpoint out of range");
    require(u != v, "self-loops are not allowed");
    adj_[u].set(v);
    adj_[v].set(u);
}

void Graph::remove_edge(int u, int v)
{
    require(u >= 0 && v >= 0 && u < n_ && v < n_, "edge endpoint out of range");
    adj_[u].reset(v);
    adj_[v].reset(u);
}

bool Graph::is_independent(const VertexSet & s) const noexcept
{
    bool ok = true;
    s.for_each([&](int v) { ok = ok && ! adj_[v].intersects(s); });
    return ok;
}

bool Graph::is_clique(const VertexSet & s) const noexcept
{
    bool ok = true;
    s.for_each([&](int v) {
        if (! ok)
            return;
        VertexSet others = s;
        others.reset(v);
        ok = others.subset_of(adj_[v]);
    });
    return ok;
}

bool Graph::well_formed() const noexcept
{
    for (int u = 0 ; u < n_ ; ++u) {
        if (adj_[u].test(u))
            return false;
        for (int v = adj_[u].first() ; v != -1 ; v = adj_[u].next(v))
            if (! adj_[v].test(u))
                return false;
    }
    return true;
}

Graph complement(const Graph & g)
{
    Graph c(g.size());
    for (int u = 0 ; u < g.size() ; ++u)
        for (int v = u + 1 ; v < g.size() ; ++v)
            if (! g.adjacent(u, v))
                c.add_edge(u, v);
    return c;
}

Graph empty_graph(int n)
{
    return Graph(n);
}

Graph complete_graph(int n)
{
    return complement(Graph(n));
}

Graph cycle_graph(int n)
{
    require(n >= 3, "cycle needs at least 3 vertices");
    Graph g(n);
    for (int i = 0 ; i < n ; ++i)
        g.add_edge(i, (i + 1) % n);
    return g;
}

Graph petersen_graph()
{
    Graph g(10);
    for (int i = 0 ; i < 5 ; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

Graph perfect_matching(int n)
{
    require(n % 2 == 0, "perfect matching needs an even number of vertices");
    Graph g(n);
    for (int i = 0 ; i < n ; i += 2)
        g.add_edge(i, i + 1);
    return g;
}

GnmParams GnmParams::make(int n)
{
    require(n >= 1, "G(n,m) needs n >= 1");
    std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
    return {n, pairs, pairs / 2};
}

GnmParams GnmParams::make(int n, std::int64_t m)
{
    GnmParams p = make(n);
    require(m >= 0 && m <= p.pairs, "G(n,m) needs 0 <= m <= N = n(n-1)/2");
    p.m = m;
    return p;
}

std::int64_t pair_index(int n, int u, int v)
{
    if (u > v)
        std::swap(u, v);
    return static_cast<std::int64_t>(u) * (2 * static_cast<std::int64_t>(n) - u - 1) / 2 + (v - u - 1);
}

std::pair<int, int> pair_from_index(int n, std::int64_t index)
{
    // Row u starts at u(2n-u-1)/2; solve the quadratic then correct rounding.
    double nn = n;
    double disc = (2 * nn - 1) * (2 * nn - 1) - 8.0 * static_cast<double>(index);
    int u = static_cast<int>(std::floor(((2 * nn - 1) - std::sqrt(std::max(0.0, disc))) / 2));
    u = std::clamp(u, 0, n - 2);
    auto row_start = [n](std::int64_t r) { return r * (2 * static_cast<std::int64_t>(n) - r - 1) / 2; };
    while (u > 0 && row_start(u) > index)
        --u;
    while (u + 1 < n - 1 && row_start(u + 1) <= index)
        ++u;
    int v = static_cast<int>(index - row_start(u)) + u + 1;
    return {u, v};
}

Graph sample_gnp_half(int n, std::uint64_t seed)
{
    require(n >= 1, "sample_gnp_half requires n >= 1");
    CounterRng rng(seed);
    Graph g(n);
    std::uint64_t bits = 0;
    int available = 0;
    for (int u = 0 ; u < n ; ++u)
        for (int v = u + 1 ; v < n ; ++v) {
            if (available == 0) {
                bits = rng();
                available = 64;
            }
            if (bits & 1)
                g.add_edge(u, v);
            bits >>= 1;
            --available;
        }
    return g;
}

Graph sample_gnm(const GnmParams & params, std::uint64_t seed)
{
    require(params.n >= 1, "sample_gnm requires n >= 1");
    require(params.pairs == static_cast<std::int64_t>(params.n) * (params.n - 1) / 2, "GnmParams: N must equal n(n-1)/2");
    require(params.m >= 0 && params.m <= params.pairs, "sample_gnm: m must satisfy 0 <= m <= N");

    // Choose the smaller of the edge set and its complement.
    const bool choose_edges = params.m <= params.pairs - params.m;
    const std::int64_t picks = choose_edges ? params.m : params.pairs - params.m;

    CounterRng rng(seed);
    std::unordered_map<std::int64_t, std::int64_t> swapped;
    swapped.reserve(static_cast<std::size_t>(picks) * 2);
    auto slot = [&](std::int64_t i) {
        auto it = swapped.find(i);
        return it == swapped.end() ? i : it->second;
    };

    std::vector<std::int64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(picks));
    for (std::int64_t i = 0 ; i < picks ; ++i) {
        std::int64_t j = i + static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(params.pairs - i)));
        std::int64_t vi = slot(i), vj = slot(j);
        swapped[j] = vi;
        swapped[i] = vj;
        chosen.push_back(vj);
    }

    Graph g(params.n);
    if (choose_edges) {
        for (auto idx : chosen) {
            auto [u, v] = pair_from_index(params.n, idx);
            g.add_edge(u, v);
        }
    }
    else {
        g = complete_graph(params.n);
        for (auto idx : chosen) {
            auto [u, v] = pair_from_index(params.n, idx);
            g.remove_edge(u, v);
        }
    }
    return g;
}

std::string graph_hash(const Graph & g)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t x) {
        for (int i = 0 ; i < 8 ; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    feed(static_cast<std::uint64_t>(g.size()));
    for (auto [u, v] : g.edges()) {
        feed(static_cast<std::uint64_t>(u));
        feed(static_cast<std::uint64_t>(v));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace cochromatic
