#include "cochromatic/errors.hpp"
#include "cochromatic/graph.hpp"
#include "cochromatic/graph_io.hpp"
#include "cochromatic/moments.hpp"
#include "cochromatic/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace cochromatic;

TEST_SUITE("graph")
{
    TEST_CASE("sampler edge cases and determinism")
    {
        CHECK(sample_gnp_half(1, 99).edge_count() == 0);
        CHECK(sample_gnp_half(5, 42) == sample_gnp_half(5, 42));
        CHECK_THROWS_AS(sample_gnp_half(0, 1), PreconditionError);
        CHECK(sample_gnm(GnmParams::make(4, 6), 3) == complete_graph(4));
        CHECK(sample_gnm(GnmParams::make(4, 0), 3) == empty_graph(4));
        CHECK(GnmParams::make(7).pairs == 21);
        CHECK(GnmParams::make(7).m == 10);
        CHECK_THROWS_AS(GnmParams::make(4, 7), PreconditionError);
    }

    TEST_CASE("G(n,1/2) edge count is binomial")
    {
        const int n = 100;
        const double pairs = n * (n - 1) / 2.0, sigma = std::sqrt(pairs / 4);
        double total = 0;
        const int samples = 10000;
        for (int i = 0; i < samples; ++i) {
            Graph g = sample_gnp_half(n, derive_seed(5, n, static_cast<std::uint64_t>(i)));
            CHECK(g.well_formed());
            total += static_cast<double>(g.edge_count());
        }
        // Mean of 10^4 samples: standard error sigma / 100.
        CHECK(std::abs(total / samples - pairs / 2) <= 3 * sigma / 100);
    }

    TEST_CASE("G(n,m) pairs are exchangeable")
    {
        const GnmParams p = GnmParams::make(6, 7);
        std::vector<int> hits(15, 0);
        const int samples = 10000;
        for (int i = 0; i < samples; ++i) {
            Graph g = sample_gnm(p, derive_seed(9, 6, static_cast<std::uint64_t>(i)));
            CHECK(g.edge_count() == 7);
            for (auto [u, v] : g.edges())
                ++hits[static_cast<std::size_t>(pair_index(6, u, v))];
        }
        for (int h : hits)
            CHECK(std::abs(h / double(samples) - 7.0 / 15.0) <= 0.02);
    }

    TEST_CASE("pair indexing is a bijection")
    {
        for (int n : {2, 5, 13}) {
            std::int64_t i = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v, ++i) {
                    CHECK(pair_index(n, u, v) == i);
                    CHECK(pair_from_index(n, i) == std::pair{u, v});
                }
        }
    }

    TEST_CASE("independence number worked values")
    {
        CHECK(independence_number(complete_graph(5)) == 1);
        CHECK(independence_number(cycle_graph(5)) == 2);
        CHECK(independence_number(petersen_graph()) == 4);
        CHECK(oracle::independence_by_subsets(petersen_graph()) == 4);
        CHECK(count_independent_sets(empty_graph(4), 2) == 6);
        CHECK(count_independent_sets(complete_graph(4), 2) == 0);
        CHECK(count_independent_sets(cycle_graph(5), 2) == 5);
    }

    TEST_CASE("complement")
    {
        CHECK(complement(complete_graph(6)) == empty_graph(6));
        Graph g = sample_gnp_half(12, 4);
        CHECK(complement(complement(g)) == g);
        Graph c = complement(cycle_graph(5));
        for (int v = 0; v < 5; ++v)
            CHECK(c.degree(v) == 2);
    }

    TEST_CASE("independence number is the largest size with a set, for every graph on up to 6 vertices")
    {
        for (int n = 1; n <= 6; ++n)
            oracle::for_each_graph(n, [&](const Graph & g) {
                const int a = independence_number(g);
                CHECK(count_independent_sets(g, a) > 0);
                CHECK(count_independent_sets(g, a + 1) == 0);
                CHECK(a == oracle::independence_by_subsets(g));
                for (int t = 1; t <= n; ++t)
                    CHECK(count_independent_sets(complement(g), t) == count_cliques(g, t));
            });
    }

    TEST_CASE("independence number on random graphs up to 20 vertices")
    {
        for (std::uint64_t i = 0; i < 100; ++i) {
            const int n = 8 + static_cast<int>(i % 13);
            Graph g = sample_gnp_half(n, derive_seed(77, static_cast<std::uint64_t>(n), i));
            CHECK(independence_number(g) == oracle::independence_by_subsets(g));
            CHECK(g.is_independent(maximum_independent_set(g)));
            CHECK(g.is_clique(maximum_clique(g)));
        }
    }

    TEST_CASE("independence number of G(200,1/2) sits next to alpha0")
    {
        const double a0 = alpha0(200).convert_to<double>();
        int inside = 0;
        for (std::uint64_t i = 0; i < 200; ++i) {
            const int a = independence_number(sample_gnp_half(200, derive_seed(3, 200, i)));
            inside += a >= std::floor(a0 - 1) && a <= std::ceil(a0 + 1);
        }
        CHECK(inside >= 190);
    }

    TEST_CASE("DIMACS and JSON round trips")
    {
        for (std::uint64_t s = 0; s < 20; ++s) {
            Graph g = sample_gnp_half(1 + static_cast<int>(s), s);
            std::stringstream d, j;
            write_dimacs(d, g);
            write_graph_json(j, g);
            CHECK(read_dimacs(d) == g);
            CHECK(read_graph_json(j) == g);
        }
        std::istringstream bad("p edge 3 1\ne 1 4\n");
        CHECK_THROWS_AS(read_dimacs(bad), PreconditionError);
    }

    TEST_CASE("graph hash is stable under edge insertion order")
    {
        std::vector<std::pair<int, int>> e{{0, 1}, {2, 3}, {1, 3}};
        Graph a = Graph::from_edges(4, e);
        std::reverse(e.begin(), e.end());
        Graph b = Graph::from_edges(4, e);
        CHECK(graph_hash(a) == graph_hash(b));
        CHECK(graph_hash(a).size() == 16);
        CHECK(graph_hash(a) != graph_hash(empty_graph(4)));
    }
}
