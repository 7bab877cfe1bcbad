#include "cochromatic/errors.hpp"
#include "cochromatic/rng.hpp"
#include "cochromatic/structure_events.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

using namespace cochromatic;

namespace {
OrderedPartition lists(int n, std::vector<std::vector<int>> parts)
{
    return OrderedPartition::from_lists(n, parts);
}

VertexSet set_of(int n, std::initializer_list<int> vs)
{
    VertexSet s(n);
    for (int v : vs)
        s.set(v);
    return s;
}

// Relevance restated on label vectors: label[v] = index of the part holding v.
std::vector<int> labels(const OrderedPartition & pi)
{
    std::vector<int> out(static_cast<std::size_t>(pi.vertex_count()), -1);
    for (std::size_t i = 0; i < pi.size(); ++i)
        for (int v : pi.parts()[i].members())
            out[static_cast<std::size_t>(v)] = static_cast<int>(i);
    return out;
}

bool relevant_against(const OrderedPartition & base, const OrderedPartition & other, int alpha, int u_star)
{
    const std::vector<int> lab = labels(base);
    std::vector<int> part_size(base.size(), 0);
    for (int l : lab)
        ++part_size[static_cast<std::size_t>(l)];
    const double cap = std::pow(std::log(double(base.vertex_count())), 3);
    int heavy = 0;
    for (const auto & part : other.parts()) {
        const int u = part.count();
        if (u < u_star || u >= alpha)
            continue;
        std::map<int, int> hit;
        for (int v : part.members())
            ++hit[lab[static_cast<std::size_t>(v)]];
        const int z = static_cast<int>(hit.size());
        if (z > 2 && z < u - 2 * (alpha - u) - 1)
            return false;
        if (z == 2) {
            if (hit.begin()->second != 1 && std::next(hit.begin())->second != 1)
                return false;
            bool whole = false;
            for (auto [l, c] : hit)
                whole = whole || c + 1 >= part_size[static_cast<std::size_t>(l)];
            heavy += whole;
        }
    }
    return heavy <= cap;
}

bool relevant_by_labels(const OrderedPartition & a, const OrderedPartition & b, int alpha, int u_star)
{
    return relevant_against(a, b, alpha, u_star) && relevant_against(b, a, alpha, u_star);
}
}

TEST_SUITE("structure_events")
{
    TEST_CASE("z worked values")
    {
        OrderedPartition pi = lists(6, {{0, 1}, {2, 3}, {4, 5}});
        CHECK(z_composed(set_of(6, {2, 3}), pi) == 1);
        CHECK(z_composed(set_of(6, {0, 2}), pi) == 2);
        CHECK(z_composed(pi.covered(), pi) == 3);
        OrderedPartition partial = lists(6, {{0, 1}, {2, 3}});
        CHECK_THROWS_AS(z_composed(set_of(6, {0, 5}), partial), PreconditionError);
    }

    TEST_CASE("z stays between 1 and min(|s|, parts)")
    {
        CounterRng rng(5);
        for (std::uint64_t i = 0; i < 300; ++i) {
            OrderedPartition pi = random_partition(12, Profile::parse("3:2,2:3"), derive_seed(8, 12, i));
            VertexSet s(12);
            for (int v = 0; v < 12; ++v)
                if (rng.uniform() < 0.4)
                    s.set(v);
            if (s.none())
                continue;
            const int z = z_composed(s, pi);
            CHECK(z >= 1);
            CHECK(z <= std::min(s.count(), static_cast<int>(pi.size())));
        }
    }

    TEST_CASE("random partitions realise the profile")
    {
        Profile p = Profile::parse("1:2,3:3");
        std::set<std::vector<std::vector<int>>> seen;
        for (std::uint64_t i = 0; i < 50; ++i) {
            OrderedPartition pi = random_partition(11, p, i);
            CHECK(pi.complete());
            CHECK(pi.profile() == p);
            std::vector<std::vector<int>> key;
            for (const auto & part : pi.parts())
                key.push_back(part.members());
            seen.insert(key);
        }
        CHECK(seen.size() > 40);
        CHECK(random_partition(11, p, 3) == random_partition(11, p, 3));
    }

    TEST_CASE("events on the empty graph with singleton parts")
    {
        const int n = 6;
        std::vector<std::vector<int>> singles;
        for (int v = 0; v < n; ++v)
            singles.push_back({v});
        EventFlags f = evaluate_events(empty_graph(n), lists(n, singles), 2, 3);
        CHECK(f.A);
        CHECK(f.B);
        CHECK(f.C);
        CHECK(f.d_count == 15);
        CHECK(f.d_threshold == 3);
        CHECK_FALSE(f.D);
    }

    TEST_CASE("events on the complete graph are vacuous for independent sets")
    {
        const int n = 6;
        std::vector<std::vector<int>> singles;
        for (int v = 0; v < n; ++v)
            singles.push_back({v});
        EventFlags f = evaluate_events(complete_graph(n), lists(n, singles), 2, 3);
        CHECK(f.B);
        CHECK(f.C);
        CHECK(f.D);
        CHECK(f.d_count == 0);
        CHECK(f.C_clique);
        CHECK(f.d_count_clique == 15);
        CHECK_FALSE(f.D_clique);
        CHECK_FALSE(f.D_co);
    }

    TEST_CASE("clique flags are the independent flags of the complement")
    {
        for (std::uint64_t i = 0; i < 60; ++i) {
            const int n = 10;
            Graph g = sample_gnp_half(n, derive_seed(12, 10, i));
            OrderedPartition pi = random_partition(n, Profile::parse("2:2,3:2"), derive_seed(13, 10, i));
            EventFlags f = evaluate_events(g, pi, 2, 4);
            EventFlags h = evaluate_events(complement(g), pi, 2, 4);
            CHECK(f.B_clique == h.B);
            CHECK(f.C_clique == h.C);
            CHECK(f.D_clique == h.D);
            CHECK(f.d_count_clique == h.d_count);
            CHECK(f.B_co == (f.B && f.B_clique));
            CHECK(f.C_co == (f.C && f.C_clique));
            CHECK(f.D_co == (f.D && f.D_clique));
        }
    }

    TEST_CASE("adding edges preserves B, C, D and removing edges preserves the clique variants")
    {
        for (std::uint64_t i = 0; i < 25; ++i) {
            const int n = 9;
            Graph g = sample_gnp_half(n, derive_seed(14, 9, i));
            OrderedPartition pi = random_partition(n, Profile::parse("3:3"), derive_seed(15, 9, i));
            const EventFlags base = evaluate_events(g, pi, 2, 5);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    Graph h = g;
                    if (g.adjacent(u, v))
                        h.remove_edge(u, v);
                    else
                        h.add_edge(u, v);
                    const EventFlags f = evaluate_events(h, pi, 2, 5);
                    const EventFlags & more = g.adjacent(u, v) ? base : f;  // graph with the edge
                    const EventFlags & less = g.adjacent(u, v) ? f : base;
                    CHECK((! less.B || more.B));
                    CHECK((! less.C || more.C));
                    CHECK(more.d_count <= less.d_count);
                    CHECK((! more.B_clique || less.B_clique));
                    CHECK((! more.C_clique || less.C_clique));
                    CHECK(less.d_count_clique <= more.d_count_clique);
                }
        }
    }

    TEST_CASE("relevance worked values at n = 12")
    {
        OrderedPartition pi = lists(12, {{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11}});
        CHECK(is_relevant_pair(pi, pi, 5));
        // One vertex exchanged: each moved part meets two parts, one of them in a single vertex.
        OrderedPartition one = lists(12, {{0, 1, 2, 4}, {3, 5, 6, 7}, {8, 9, 10, 11}});
        CHECK(is_relevant_pair(pi, one, 5));
        // Two vertices exchanged: intersections 2 and 2.
        OrderedPartition two = lists(12, {{0, 1, 4, 5}, {2, 3, 6, 7}, {8, 9, 10, 11}});
        CHECK_FALSE(is_relevant_pair(pi, two, 5));
        // Parts above alpha - 1 are unconstrained.
        CHECK(is_relevant_pair(pi, two, 4));
        CHECK(relevant_by_labels(pi, one, 5, 1));
        CHECK_FALSE(relevant_by_labels(pi, two, 5, 1));
        CHECK_THROWS_AS(is_relevant_pair(pi, lists(12, {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}}), 5), PreconditionError);
    }

    TEST_CASE("relevance agrees with an independent restatement at n = 15")
    {
        // Parts of size 3 with alpha = 5 cannot break any rule, so every pair is relevant;
        // parts of size 5 with alpha = 6 make the single-vertex rule bind.
        for (auto [text, alpha, all_relevant] : {std::tuple{"3:5", 5, true}, std::tuple{"5:3", 6, false}}) {
            Profile p = Profile::parse(text);
            int relevant = 0;
            for (std::uint64_t i = 0; i < 2000; ++i) {
                OrderedPartition a = random_partition(15, p, derive_seed(16, 15, i));
                OrderedPartition b = random_partition(15, p, derive_seed(17, 15, i));
                if (i % 2 == 0) {
                    // Nearby pair: exchange one vertex between two parts of a.
                    std::vector<std::vector<int>> parts;
                    for (const auto & part : a.parts())
                        parts.push_back(part.members());
                    const std::size_t other = 1 + i % (parts.size() - 1);
                    std::swap(parts[0][i % parts[0].size()], parts[other][(i / 3) % parts[other].size()]);
                    b = lists(15, parts);
                }
                const bool got = is_relevant_pair(a, b, alpha);
                CHECK(got == relevant_by_labels(a, b, alpha, 1));
                CHECK(got == is_relevant_pair(b, a, alpha));
                relevant += got;
            }
            if (all_relevant)
                CHECK(relevant == 2000);
            else {
                CHECK(relevant >= 1000);
                CHECK(relevant < 2000);
            }
        }
    }

    TEST_CASE("overlap bands")
    {
        OrderedPartition pi = lists(12, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}});
        PairClassification same = classify_pair(pi, pi, 12, 0.5);
        CHECK(same.lambda == 1.0);
        CHECK(same.ell == 4);
        CHECK(same.band == OverlapBand::similar);

        OrderedPartition none = lists(12, {{0, 3, 6}, {1, 4, 9}, {2, 7, 10}, {5, 8, 11}});
        PairClassification apart = classify_pair(pi, none, 12, 0.5);
        CHECK(apart.lambda == 0.0);
        CHECK(apart.band == OverlapBand::scrambled);

        OrderedPartition half = lists(12, {{0, 1, 2}, {3, 4, 5}, {6, 9, 10}, {7, 8, 11}});
        for (double c0 : {0.5, 0.2}) {
            PairClassification h = classify_pair(pi, half, 12, c0);
            CHECK(h.lambda == 0.5);
            CHECK(h.ell_u == std::vector<std::uint64_t>{0, 0, 2});
            const double low = std::pow(std::log(12.0), -3), high = 1 - std::pow(12.0, -c0);
            const bool middle = low <= 0.5 && 0.5 <= high;
            CHECK((h.band == OverlapBand::middle) == middle);
        }
        CHECK(classify_pair(pi, half, 12, 0.2).band == OverlapBand::similar);
        CHECK(to_string(OverlapBand::middle) == "middle");
    }

    TEST_CASE("every lambda lands in exactly one band")
    {
        for (std::uint64_t i = 0; i < 500; ++i) {
            OrderedPartition a = random_partition(9, Profile::parse("1:1,2:2,4:1"), derive_seed(18, 9, i));
            OrderedPartition b = random_partition(9, Profile::parse("1:1,2:2,4:1"), derive_seed(19, 9, i % 7));
            PairClassification c = classify_pair(a, b, 9, 0.3);
            CHECK(c.lambda >= 0);
            CHECK(c.lambda <= 1);
            CHECK((c.lambda == 1.0) == (a == b || shared_parts(a, b) == a.size()));
            const double low = std::pow(std::log(9.0), -3), high = 1 - std::pow(9.0, -0.3);
            const OverlapBand expect = c.lambda < low ? OverlapBand::scrambled
                                     : c.lambda > high ? OverlapBand::similar
                                                       : OverlapBand::middle;
            CHECK(c.band == expect);
        }
    }

    TEST_CASE("cocolouring count identity and joint bound by exhaustion")
    {
        Prop42Report r = prop42_oracle(4, Profile::parse("2:2"));
        CHECK(r.colouring_graphs == 16);
        CHECK(r.cocolouring_graphs == 64);
        CHECK(r.equality_holds);
        CHECK(r.inequality_holds);
        // ell = k reads P(A^co) <= 2^k P(A) and is met with equality.
        REQUIRE(r.by_ell.count(2));
        CHECK(r.by_ell.at(2).tight == r.by_ell.at(2).pairs);

        Prop42Report s = prop42_oracle(6, Profile::parse("2:3"));
        CHECK(s.equality_holds);
        CHECK(s.inequality_holds);
        CHECK(s.by_ell.at(1).pairs > 0);
        CHECK(s.by_ell.at(1).violations == 0);
        CHECK_THROWS_AS(prop42_oracle(5, Profile::parse("1:1,2:2")), PreconditionError);
    }

    TEST_CASE("second-moment quantities at tiny n")
    {
        SecondMomentReport r = second_moment_ratio_tiny(4, Profile::parse("2:2"), 1, 3);
        CHECK(r.graphs == 64);
        CHECK(r.partitions == 6);
        CHECK(r.pz_below_empirical);
        CHECK(r.relevant_sum_below_all);
        CHECK(r.mean_X == "3/2");
        CHECK(r.mean_Xco == "6/1");
    }

    TEST_CASE("positive joint probability implies relevance up to n = 6")
    {
        for (auto [n, text, alpha] : {std::tuple{4, "2:2", 3}, std::tuple{5, "2:1,3:1", 4}, std::tuple{5, "1:1,2:2", 3},
                                      std::tuple{6, "3:2", 4}, std::tuple{6, "2:3", 3}, std::tuple{6, "2:1,4:1", 5}}) {
            for (int u_star = 1; u_star < alpha; ++u_star) {
                SecondMomentReport r = second_moment_ratio_tiny(n, Profile::parse(text), u_star, alpha);
                CHECK(r.irrelevant_positive_pairs == 0);
                CHECK(r.pz_below_empirical);
                CHECK(r.relevant_sum_below_all);
                CHECK(r.second_moment_below_relevant_sum);
                CHECK(oracle::Rational(r.mean_Zco) <= oracle::Rational(r.mean_Xco));
                CHECK(oracle::Rational(r.mean_Z) <= oracle::Rational(r.mean_X));
            }
        }
    }

    TEST_CASE("conditioned cocolouring mean can exceed 2^k times the conditioned colouring mean")
    {
        // Only E[Z^co] <= E[X^co] = 2^k E[X] is guaranteed; at n = 6 the clique conditions bite less.
        SecondMomentReport r = second_moment_ratio_tiny(6, Profile::parse("3:2"), 1, 4);
        CHECK(r.mean_Z == "1055/8192");
        CHECK(r.mean_Zco == "2405/4096");
        CHECK_FALSE(r.cocolouring_mean_within_2k);
        CHECK(second_moment_ratio_tiny(4, Profile::parse("2:2"), 1, 3).cocolouring_mean_within_2k);
    }
}
