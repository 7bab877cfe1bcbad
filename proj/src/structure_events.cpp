#include "cochromatic/structure_events.hpp"

#include "cochromatic/errors.hpp"
#include "cochromatic/rng.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <cmath>

namespace cochromatic {

namespace {
    using Rational = boost::multiprecision::cpp_rational;

    std::string render(const Rational & q)
    {
        return numerator(q).str() + "/" + denominator(q).str();
    }

    // Intersection sizes of s with the parts of pi, zeros dropped.
    std::vector<int> intersections(const VertexSet & s, const OrderedPartition & pi)
    {
        std::vector<int> out;
        for (const auto & part : pi.parts()) {
            int c = part.intersection_count(s);
            if (c > 0)
                out.push_back(c);
        }
        return out;
    }

    double ln_cubed(std::uint64_t n)
    {
        double l = std::log(static_cast<double>(n));
        return l * l * l;
    }

    std::uint64_t d_threshold(std::uint64_t n)
    {
        return static_cast<std::uint64_t>(std::ceil(ln_cubed(n) / 2.0));
    }

    struct StraddleCheck {
        bool b = true;
        bool c = true;
        std::uint64_t d = 0;
    };

    // B, C and the D count for one family of sets against pi.
    StraddleCheck straddle(const std::vector<VertexSet> & sets, const OrderedPartition & pi, int alpha)
    {
        StraddleCheck out;
        for (const auto & s : sets) {
            const int size = s.count();
            std::vector<int> meet = intersections(s, pi);
            const int z = static_cast<int>(meet.size());
            if (! (z <= 2 || z >= size - 2 * (alpha - size) - 1))
                out.b = false;
            if (z == 2) {
                if (std::min(meet[0], meet[1]) != 1)
                    out.c = false;
                bool near_whole = false;
                for (const auto & part : pi.parts())
                    if (part.intersection_count(s) >= part.count() - 1) {
                        near_whole = true;
                        break;
                    }
                if (near_whole)
                    ++out.d;
            }
        }
        return out;
    }

    std::vector<VertexSet> collect_sets(const Graph & g, int lo, int hi)
    {
        std::vector<VertexSet> out;
        if (lo <= hi)
            for_each_independent_set(g, lo, hi, [&](const VertexSet & s) { out.push_back(s); });
        return out;
    }

    struct SetFamilies {
        std::vector<VertexSet> independent;
        std::vector<VertexSet> cliques;
    };

    SetFamilies families(const Graph & g, int u_star, int alpha)
    {
        return {collect_sets(g, u_star, alpha - 1), collect_sets(complement(g), u_star, alpha - 1)};
    }

    EventFlags events_from(const Graph & g, const OrderedPartition & pi, const SetFamilies & fam, int alpha)
    {
        EventFlags f;
        f.A = pi.is_colouring(g);
        f.A_co = pi.is_cocolouring(g);
        f.d_threshold = d_threshold(static_cast<std::uint64_t>(g.size()));
        StraddleCheck ind = straddle(fam.independent, pi, alpha);
        StraddleCheck cl = straddle(fam.cliques, pi, alpha);
        f.B = ind.b;
        f.C = ind.c;
        f.d_count = ind.d;
        f.D = ind.d <= f.d_threshold;
        f.B_clique = cl.b;
        f.C_clique = cl.c;
        f.d_count_clique = cl.d;
        f.D_clique = cl.d <= f.d_threshold;
        f.B_co = f.B && f.B_clique;
        f.C_co = f.C && f.C_clique;
        f.D_co = f.D && f.D_clique;
        return f;
    }

    void require_same_frame(const OrderedPartition & a, const OrderedPartition & b)
    {
        require(a.vertex_count() == b.vertex_count() && a.covered() == b.covered(),
                "partition pair must cover the same vertex set");
        require(a.profile() == b.profile(), "partition pair must share one profile");
    }

    // Conditions a.1 to a.3 for the parts of `other` measured against `base`.
    bool relevant_one_way(const OrderedPartition & base, const OrderedPartition & other, int alpha, int u_star)
    {
        const double cap = ln_cubed(static_cast<std::uint64_t>(base.vertex_count()));
        std::uint64_t near_whole_parts = 0;
        for (const auto & part : other.parts()) {
            const int u = part.count();
            if (u < u_star || u > alpha - 1)
                continue;
            std::vector<int> meet = intersections(part, base);
            const int z = static_cast<int>(meet.size());
            if (! (z <= 2 || z >= u - 2 * (alpha - u) - 1))
                return false;
            if (z != 2)
                continue;
            if (std::min(meet[0], meet[1]) != 1)
                return false;
            for (const auto & b : base.parts())
                if (part.intersection_count(b) >= b.count() - 1) {
                    ++near_whole_parts;
                    break;
                }
        }
        return static_cast<double>(near_whole_parts) <= cap;
    }
}

OrderedPartition random_partition(int n, const Profile & profile, std::uint64_t seed)
{
    require(profile.complete_for(static_cast<std::uint64_t>(n)), "random_partition needs a complete profile");
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        order[v] = v;
    CounterRng rng(seed);
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng.bounded(static_cast<std::uint64_t>(i) + 1)]);
    std::vector<std::vector<int>> parts;
    std::size_t at = 0;
    for (int size : profile.part_sizes()) {
        parts.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(at), order.begin() + static_cast<std::ptrdiff_t>(at + size));
        at += static_cast<std::size_t>(size);
    }
    return OrderedPartition::from_lists(n, parts);
}

int z_composed(const VertexSet & s, const OrderedPartition & pi)
{
    require(s.capacity() == pi.vertex_count(), "z_composed: set and partition disagree on n");
    require(s.subset_of(pi.covered()), "z_composed: set leaves the covered vertices");
    return static_cast<int>(intersections(s, pi).size());
}

EventFlags evaluate_events(const Graph & g, const OrderedPartition & pi, int u_star, int alpha)
{
    require(pi.vertex_count() == g.size() && pi.complete(), "evaluate_events needs a complete partition of g");
    require(u_star >= 1 && u_star <= alpha - 1, "evaluate_events requires 1 <= u_star <= alpha - 1");
    return events_from(g, pi, families(g, u_star, alpha), alpha);
}

bool is_relevant_pair(const OrderedPartition & pi, const OrderedPartition & pi_prime, int alpha, int u_star)
{
    require_same_frame(pi, pi_prime);
    require(alpha >= 2, "is_relevant_pair requires alpha >= 2");
    return relevant_one_way(pi, pi_prime, alpha, u_star) && relevant_one_way(pi_prime, pi, alpha, u_star);
}

std::string to_string(OverlapBand band)
{
    switch (band) {
    case OverlapBand::scrambled: return "scrambled";
    case OverlapBand::middle: return "middle";
    case OverlapBand::similar: return "similar";
    }
    return "unknown";
}

std::uint64_t shared_parts(const OrderedPartition & pi, const OrderedPartition & pi_prime)
{
    std::uint64_t shared = 0;
    for (const auto & a : pi.parts())
        for (const auto & b : pi_prime.parts())
            if (a == b) {
                ++shared;
                break;
            }
    return shared;
}

PairClassification classify_pair(const OrderedPartition & pi, const OrderedPartition & pi_prime, std::uint64_t n, double c0)
{
    require_same_frame(pi, pi_prime);
    require(n == static_cast<std::uint64_t>(pi.vertex_count()), "classify_pair: n disagrees with the partitions");
    require(n >= 2, "classify_pair requires n >= 2");
    require(c0 > 0.0, "classify_pair requires c0 > 0");
    PairClassification out;
    out.c0 = c0;
    out.ell_u.assign(static_cast<std::size_t>(pi.profile().bound()), 0);
    std::uint64_t shared_mass = 0;
    for (const auto & a : pi.parts())
        for (const auto & b : pi_prime.parts())
            if (a == b) {
                const int u = a.count();
                ++out.ell_u[static_cast<std::size_t>(u - 1)];
                ++out.ell;
                shared_mass += static_cast<std::uint64_t>(u);
                break;
            }
    out.lambda = static_cast<double>(shared_mass) / static_cast<double>(n);
    const double low = 1.0 / ln_cubed(n);
    const double high = 1.0 - std::pow(static_cast<double>(n), -c0);
    if (out.lambda < low)
        out.band = OverlapBand::scrambled;
    else if (out.lambda > high)
        out.band = OverlapBand::similar;
    else
        out.band = OverlapBand::middle;
    return out;
}

namespace {
    // Partitions as pair masks over the row-major pair index (n <= 7, so 21 bits).
    struct MaskedPartition {
        std::vector<std::uint32_t> part_masks;
        std::uint32_t union_mask = 0;
    };

    MaskedPartition mask_of(const OrderedPartition & pi)
    {
        MaskedPartition m;
        const int n = pi.vertex_count();
        for (const auto & part : pi.parts()) {
            std::uint32_t mask = 0;
            auto vs = part.members();
            for (std::size_t i = 0; i < vs.size(); ++i)
                for (std::size_t j = i + 1; j < vs.size(); ++j)
                    mask |= std::uint32_t{1} << pair_index(n, vs[i], vs[j]);
            m.part_masks.push_back(mask);
            m.union_mask |= mask;
        }
        return m;
    }

    bool colours(std::uint32_t g, const MaskedPartition & m) { return (g & m.union_mask) == 0; }

    bool cocolours(std::uint32_t g, const MaskedPartition & m)
    {
        for (auto mask : m.part_masks) {
            const std::uint32_t hit = g & mask;
            if (hit != 0 && hit != mask)
                return false;
        }
        return true;
    }

    Graph graph_from_mask(int n, std::uint32_t mask)
    {
        Graph g(n);
        for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
            auto [u, v] = pair_from_index(n, std::countr_zero(bits));
            g.add_edge(u, v);
        }
        return g;
    }
}

Prop42Report prop42_oracle(int n, const Profile & profile)
{
    require(n >= 2 && n <= 7, "prop42_oracle requires 2 <= n <= 7");
    require(profile.count(1) == 0, "prop42_oracle requires k_1 = 0");
    require(profile.complete_for(static_cast<std::uint64_t>(n)), "prop42_oracle requires a complete profile");

    Prop42Report r;
    r.n = n;
    r.profile = profile;
    r.k = profile.classes();
    const int pairs = n * (n - 1) / 2;
    const std::uint32_t graph_count = std::uint32_t{1} << pairs;
    r.graphs = graph_count;

    const auto partitions = ordered_partitions(n, profile);
    std::vector<MaskedPartition> masks;
    masks.reserve(partitions.size());
    for (const auto & p : partitions)
        masks.push_back(mask_of(p));

    const MaskedPartition & canon = masks.front();
    std::uint64_t col = 0, co = 0;
    for (std::uint32_t g = 0; g < graph_count; ++g) {
        col += colours(g, canon);
        co += cocolours(g, canon);
    }
    r.colouring_graphs = col;
    r.cocolouring_graphs = co;
    r.equality_holds = r.cocolouring_graphs == (BigInt(1) << r.k) * r.colouring_graphs;

    const bool all_pairs = n <= 6;
    r.pair_scope = all_pairs ? "all" : "canonical";
    const std::size_t first_count = all_pairs ? partitions.size() : 1;
    r.inequality_holds = true;
    for (std::size_t i = 0; i < first_count; ++i) {
        for (std::size_t j = 0; j < partitions.size(); ++j) {
            const std::uint64_t ell = shared_parts(partitions[i], partitions[j]);
            std::uint64_t joint_col = 0, joint_co = 0;
            for (std::uint32_t g = 0; g < graph_count; ++g) {
                joint_col += colours(g, masks[i]) && colours(g, masks[j]);
                joint_co += cocolours(g, masks[i]) && cocolours(g, masks[j]);
            }
            const BigInt rhs = (BigInt(1) << (2 * r.k - ell)) * joint_col;
            auto & tally = r.by_ell[ell];
            ++tally.pairs;
            if (BigInt(joint_co) > rhs) {
                ++tally.violations;
                r.inequality_holds = false;
            } else if (BigInt(joint_co) == rhs) {
                ++tally.tight;
            }
        }
    }
    return r;
}

SecondMomentReport second_moment_ratio_tiny(int n, const Profile & profile, int u_star, int alpha)
{
    require(n >= 2 && n <= 6, "second_moment_ratio_tiny requires 2 <= n <= 6");
    require(profile.complete_for(static_cast<std::uint64_t>(n)), "second_moment_ratio_tiny requires a complete profile");
    require(u_star >= 1 && u_star <= alpha - 1, "second_moment_ratio_tiny requires 1 <= u_star <= alpha - 1");

    SecondMomentReport r;
    r.n = n;
    r.profile = profile;
    r.u_star = u_star;
    r.alpha = alpha;
    const int pair_bits = n * (n - 1) / 2;
    const std::uint32_t graph_count = std::uint32_t{1} << pair_bits;
    r.graphs = graph_count;

    const auto partitions = ordered_partitions(n, profile);
    const std::size_t P = partitions.size();
    r.partitions = P;
    std::vector<MaskedPartition> masks;
    for (const auto & p : partitions)
        masks.push_back(mask_of(p));
    std::vector<char> relevant(P * P);
    for (std::size_t i = 0; i < P; ++i)
        for (std::size_t j = 0; j < P; ++j)
            relevant[i * P + j] = is_relevant_pair(partitions[i], partitions[j], alpha, u_star);

    BigInt sum_x = 0, sum_xco = 0, sum_z = 0, sum_z2 = 0, sum_zco = 0, sum_zco2 = 0;
    BigInt positive = 0, all_pairs = 0, relevant_pairs = 0;
    std::vector<char> joint_positive(P * P, 0);
    std::vector<std::size_t> co_list, full_list;
    for (std::uint32_t mask = 0; mask < graph_count; ++mask) {
        const Graph g = graph_from_mask(n, mask);
        const SetFamilies fam = families(g, u_star, alpha);
        std::uint64_t z = 0, zco = 0;
        co_list.clear();
        full_list.clear();
        for (std::size_t i = 0; i < P; ++i) {
            const bool col = colours(mask, masks[i]);
            const bool co = cocolours(mask, masks[i]);
            sum_x += col;
            sum_xco += co;
            if (co)
                co_list.push_back(i);
            if (! col && ! co)
                continue;
            EventFlags f = events_from(g, partitions[i], fam, alpha);
            if (f.colouring_event())
                ++z;
            if (f.cocolouring_event()) {
                ++zco;
                full_list.push_back(i);
            }
        }
        sum_z += z;
        sum_z2 += z * z;
        sum_zco += zco;
        sum_zco2 += zco * zco;
        if (zco > 0)
            ++positive;
        all_pairs += co_list.size() * co_list.size();
        for (auto i : co_list)
            for (auto j : co_list)
                relevant_pairs += relevant[i * P + j];
        for (auto i : full_list)
            for (auto j : full_list)
                joint_positive[i * P + j] = 1;
    }
    for (std::size_t i = 0; i < P * P; ++i)
        if (joint_positive[i] && ! relevant[i])
            ++r.irrelevant_positive_pairs;

    const Rational total{BigInt(graph_count)};
    auto mean = [&](const BigInt & s) { return Rational(s) / total; };
    const Rational ez = mean(sum_z), ez2 = mean(sum_z2), ezco = mean(sum_zco), ezco2 = mean(sum_zco2);
    const Rational empirical = mean(positive);
    const Rational sum_all = mean(all_pairs), sum_rel = mean(relevant_pairs);
    r.mean_X = render(mean(sum_x));
    r.mean_Xco = render(mean(sum_xco));
    r.mean_Z = render(ez);
    r.second_Z = render(ez2);
    r.mean_Zco = render(ezco);
    r.second_Zco = render(ezco2);
    if (ez != 0)
        r.ratio_Z = render(ez2 / (ez * ez));
    if (ezco != 0)
        r.ratio_Zco = render(ezco2 / (ezco * ezco));
    const Rational pz = ezco == 0 ? Rational(0) : (ezco * ezco) / ezco2;
    r.pz_bound = render(pz);
    r.empirical_P = render(empirical);
    r.sum_all_pairs = render(sum_all);
    r.sum_relevant_pairs = render(sum_rel);
    r.pz_below_empirical = pz <= empirical;
    r.relevant_sum_below_all = sum_rel <= sum_all;
    r.second_moment_below_relevant_sum = ezco2 <= sum_rel;
    r.cocolouring_mean_within_2k = ezco <= Rational(BigInt(1) << profile.classes()) * ez;
    return r;
}

} // namespace cochromatic
