#pragma once

#include "cochromatic/graph.hpp"
#include "cochromatic/profile.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <vector>

namespace cochromatic {

using BigInt = boost::multiprecision::cpp_int;

/// Sequence of disjoint vertex sets, non-increasing in size.
/// The union may be a proper subset of the vertices (partial partition).
class OrderedPartition {
public:
    OrderedPartition() = default;
    OrderedPartition(int n, std::vector<VertexSet> parts);
    static OrderedPartition from_lists(int n, const std::vector<std::vector<int>> & parts);

    int vertex_count() const noexcept { return n_; }
    const std::vector<VertexSet> & parts() const noexcept { return parts_; }
    const VertexSet & covered() const noexcept { return covered_; }
    std::size_t size() const noexcept { return parts_.size(); }
    bool complete() const noexcept { return covered_.count() == n_; }

    Profile profile() const;

    bool is_colouring(const Graph & g) const;
    bool is_cocolouring(const Graph & g) const;

    friend bool operator==(const OrderedPartition &, const OrderedPartition &) = default;

private:
    int n_ = 0;
    std::vector<VertexSet> parts_;
    VertexSet covered_;
};

/// Calls `visit` for every ordered partition of [n] with the given complete profile.
/// Parts of equal size appear in every relative order, so the number of calls is
/// n! / prod_u u!^{k_u}.
void for_each_ordered_partition(int n, const Profile & profile,
                                const std::function<void(const OrderedPartition &)> & visit);

std::vector<OrderedPartition> ordered_partitions(int n, const Profile & profile);

/// Ordered and unordered counts of (co)colourings with one profile.
struct ColouringCounts {
    BigInt ordered;
    BigInt unordered;
};

int chromatic_number(const Graph & g);

/// Least k admitting a proper k-colouring with every class of size <= t.
int t_bounded_chromatic(const Graph & g, int t);

/// Least number of classes, each an independent set or a clique, covering g.
int cochromatic_number(const Graph & g);

/// Counts proper colourings realising a complete profile (n <= 20).
ColouringCounts count_colourings_with_profile(const Graph & g, const Profile & profile);

/// Counts cocolourings realising a complete profile (n <= 20).
ColouringCounts count_cocolourings_with_profile(const Graph & g, const Profile & profile);

struct GreedyCocolouring {
    std::vector<VertexSet> classes;
    std::vector<bool> is_clique;

    int count() const noexcept { return static_cast<int>(classes.size()); }
};

/// Repeatedly removes a maximum independent set or maximum clique, whichever
/// is larger (independent set on ties). Upper bound on the cochromatic number.
GreedyCocolouring greedy_cocolouring(const Graph & g);

} // namespace cochromatic
