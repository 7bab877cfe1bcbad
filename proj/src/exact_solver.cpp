#include "cochromatic/exact_solver.hpp"

#include "cochromatic/errors.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace cochromatic {

OrderedPartition::OrderedPartition(int n, std::vector<VertexSet> parts) :
    n_(n), parts_(std::move(parts)), covered_(n)
{
    for (std::size_t i = 0 ; i < parts_.size() ; ++i) {
        require(parts_[i].capacity() == n, "partition part has the wrong capacity");
        require(parts_[i].any(), "partition parts must be non-empty");
        require(! parts_[i].intersects(covered_), "partition parts must be pairwise disjoint");
        if (i > 0)
            require(parts_[i].count() <= parts_[i - 1].count(), "partition parts must be non-increasing in size");
        covered_ |= parts_[i];
    }
}

OrderedPartition OrderedPartition::from_lists(int n, const std::vector<std::vector<int>> & parts)
{
    std::vector<VertexSet> sets;
    for (const auto & p : parts) {
        VertexSet s(n);
        for (int v : p) {
            require(v >= 0 && v < n, "partition vertex out of range");
            require(! s.test(v), "partition part lists a vertex twice");
            s.set(v);
        }
        sets.push_back(std::move(s));
    }
    return OrderedPartition(n, std::move(sets));
}

Profile OrderedPartition::profile() const
{
    std::vector<int> sizes;
    for (const auto & p : parts_)
        sizes.push_back(p.count());
    return profile_from_sizes(sizes);
}

bool OrderedPartition::is_colouring(const Graph & g) const
{
    return std::all_of(parts_.begin(), parts_.end(), [&](const VertexSet & p) { return g.is_independent(p); });
}

bool OrderedPartition::is_cocolouring(const Graph & g) const
{
    return std::all_of(parts_.begin(), parts_.end(),
                       [&](const VertexSet & p) { return g.is_independent(p) || g.is_clique(p); });
}

namespace {
    void choose_part(int n, const std::vector<int> & sizes, std::size_t index, VertexSet & remaining,
                     std::vector<VertexSet> & parts, const std::function<void(const OrderedPartition &)> & visit)
    {
        if (index == sizes.size()) {
            visit(OrderedPartition(n, parts));
            return;
        }
        VertexSet part(n);
        // Enumerate sizes[index]-subsets of `remaining` in lexicographic order.
        std::function<void(int, int)> pick = [&](int from, int left) {
            if (left == 0) {
                VertexSet rest = remaining - part;
                std::swap(rest, remaining);
                parts.push_back(part);
                choose_part(n, sizes, index + 1, remaining, parts, visit);
                parts.pop_back();
                std::swap(rest, remaining);
                return;
            }
            for (int v = remaining.next(from - 1) ; v != -1 ; v = remaining.next(v)) {
                part.set(v);
                pick(v + 1, left - 1);
                part.reset(v);
            }
        };
        pick(0, sizes[index]);
    }
}

void for_each_ordered_partition(int n, const Profile & profile,
                                const std::function<void(const OrderedPartition &)> & visit)
{
    require(profile.complete_for(static_cast<std::uint64_t>(n)), "ordered partitions need a complete profile");
    auto sizes = profile.part_sizes();
    VertexSet remaining = VertexSet::full(n);
    std::vector<VertexSet> parts;
    choose_part(n, sizes, 0, remaining, parts, visit);
}

std::vector<OrderedPartition> ordered_partitions(int n, const Profile & profile)
{
    std::vector<OrderedPartition> out;
    for_each_ordered_partition(n, profile, [&](const OrderedPartition & p) { out.push_back(p); });
    return out;
}

namespace {
    // DSATUR branch and bound, optionally with a cap on class sizes.
    class ColouringSearch {
    public:
        ColouringSearch(const Graph & g, int cap) :
            g_(g), n_(g.size()), cap_(cap),
            colour_(static_cast<std::size_t>(n_), -1),
            neighbour_colours_(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_) + 1, 0)),
            saturation_(static_cast<std::size_t>(n_), 0),
            degree_(static_cast<std::size_t>(n_), 0)
        {
            for (int v = 0 ; v < n_ ; ++v)
                degree_[v] = g.degree(v);
        }

        int solve()
        {
            if (n_ == 0)
                return 0;
            int lower = std::max(clique_number(g_), (n_ + cap_ - 1) / cap_);
            best_ = greedy_upper_bound();
            if (best_ > lower) {
                class_size_.assign(static_cast<std::size_t>(n_) + 1, 0);
                lower_ = lower;
                search(0, 0);
            }
            return best_;
        }

    private:
        int pick_vertex() const
        {
            int best = -1;
            for (int v = 0 ; v < n_ ; ++v) {
                if (colour_[v] != -1)
                    continue;
                if (best == -1 || saturation_[v] > saturation_[best]
                        || (saturation_[v] == saturation_[best] && degree_[v] > degree_[best]))
                    best = v;
            }
            return best;
        }

        void assign(int v, int c)
        {
            colour_[v] = c;
            ++class_size_[c];
            g_.neighbours(v).for_each([&](int w) {
                if (neighbour_colours_[w][c]++ == 0)
                    ++saturation_[w];
            });
        }

        void unassign(int v)
        {
            int c = colour_[v];
            colour_[v] = -1;
            --class_size_[c];
            g_.neighbours(v).for_each([&](int w) {
                if (--neighbour_colours_[w][c] == 0)
                    --saturation_[w];
            });
        }

        int greedy_upper_bound()
        {
            class_size_.assign(static_cast<std::size_t>(n_) + 1, 0);
            int used = 0;
            for (int step = 0 ; step < n_ ; ++step) {
                int v = pick_vertex();
                int c = 0;
                while (c < used && (neighbour_colours_[v][c] > 0 || class_size_[c] >= cap_))
                    ++c;
                assign(v, c);
                used = std::max(used, c + 1);
            }
            for (int v = 0 ; v < n_ ; ++v)
                unassign(v);
            return used;
        }

        void search(int coloured, int used)
        {
            if (done_ || used >= best_)
                return;
            if (coloured == n_) {
                best_ = used;
                done_ = best_ <= lower_;
                return;
            }
            if (cap_ < n_) {
                int remaining = n_ - coloured;
                int free = 0;
                for (int c = 0 ; c < used ; ++c)
                    free += cap_ - class_size_[c];
                int extra = remaining > free ? (remaining - free + cap_ - 1) / cap_ : 0;
                if (used + extra >= best_)
                    return;
            }
            int v = pick_vertex();
            for (int c = 0 ; c <= used ; ++c) {
                if (c == used && used + 1 >= best_)
                    break;
                if (neighbour_colours_[v][c] > 0 || class_size_[c] >= cap_)
                    continue;
                assign(v, c);
                search(coloured + 1, std::max(used, c + 1));
                unassign(v);
                if (done_)
                    return;
            }
        }

        const Graph & g_;
        int n_;
        int cap_;
        std::vector<int> colour_;
        std::vector<std::vector<int>> neighbour_colours_;
        std::vector<int> saturation_;
        std::vector<int> degree_;
        std::vector<int> class_size_;
        int best_ = 0;
        int lower_ = 0;
        bool done_ = false;
    };

    enum class ClassType { single, independent, clique };

    // Classes are typed lazily: a singleton becomes independent or a clique
    // when its second vertex arrives.
    class CocolouringSearch {
    public:
        explicit CocolouringSearch(const Graph & g) : g_(g), n_(g.size()), assigned_(g.size()) {}

        int solve(int upper)
        {
            best_ = upper;
            if (best_ > 1)
                search(0);
            return best_;
        }

    private:
        struct Class {
            VertexSet members;
            ClassType type;
        };

        bool fits(int v, const Class & c) const
        {
            switch (c.type) {
                case ClassType::single:      return true;
                case ClassType::independent: return ! g_.neighbours(v).intersects(c.members);
                case ClassType::clique:      return c.members.subset_of(g_.neighbours(v));
            }
            return false;
        }

        void search(int placed)
        {
            int used = static_cast<int>(classes_.size());
            if (used >= best_)
                return;
            if (placed == n_) {
                best_ = used;
                return;
            }

            // Most constrained vertex: fewest classes it can join.
            int chosen = -1, chosen_options = 0;
            for (int v = 0 ; v < n_ ; ++v) {
                if (assigned_.test(v))
                    continue;
                int options = 0;
                for (const auto & c : classes_)
                    options += fits(v, c);
                if (chosen == -1 || options < chosen_options) {
                    chosen = v;
                    chosen_options = options;
                }
            }
            if (chosen_options == 0 && used + 1 >= best_)
                return;

            int v = chosen;
            assigned_.set(v);
            for (std::size_t i = 0 ; i < classes_.size() && best_ > 1 ; ++i) {
                if (! fits(v, classes_[i]))
                    continue;
                Class saved = classes_[i];
                if (saved.type == ClassType::single) {
                    int w = saved.members.first();
                    classes_[i].type = g_.adjacent(v, w) ? ClassType::clique : ClassType::independent;
                }
                classes_[i].members.set(v);
                search(placed + 1);
                classes_[i] = std::move(saved);
            }
            if (used + 1 < best_) {
                VertexSet s(n_);
                s.set(v);
                classes_.push_back({std::move(s), ClassType::single});
                search(placed + 1);
                classes_.pop_back();
            }
            assigned_.reset(v);
        }

        const Graph & g_;
        int n_;
        VertexSet assigned_;
        std::vector<Class> classes_;
        int best_ = 0;
    };

    // Counts unordered partitions with a fixed multiset of part sizes whose
    // parts are all independent (or, for cocolourings, independent or cliques).
    class ProfileCounter {
    public:
        ProfileCounter(const Graph & g, const Profile & profile, bool allow_cliques) :
            n_(g.size()), allow_cliques_(allow_cliques), remaining_(profile.counts())
        {
            for (int v = 0 ; v < n_ ; ++v) {
                std::uint32_t nb = 0;
                for (int w = 0 ; w < n_ ; ++w)
                    if (g.adjacent(v, w))
                        nb |= 1u << w;
                neighbours_.push_back(nb);
            }
        }

        BigInt count()
        {
            std::uint32_t all = n_ == 32 ? ~0u : (1u << n_) - 1;
            return count(all);
        }

    private:
        std::string key(std::uint32_t unassigned) const
        {
            std::string k(reinterpret_cast<const char *>(&unassigned), sizeof unassigned);
            for (auto c : remaining_)
                k.push_back(static_cast<char>(c));
            return k;
        }

        BigInt count(std::uint32_t unassigned)
        {
            if (unassigned == 0)
                return 1;
            auto k = key(unassigned);
            if (auto it = memo_.find(k) ; it != memo_.end())
                return it->second;

            int v = std::countr_zero(unassigned);
            std::uint32_t others = unassigned & ~(1u << v);
            BigInt total = 0;
            for (std::size_t i = 0 ; i < remaining_.size() ; ++i) {
                if (remaining_[i] == 0)
                    continue;
                int u = static_cast<int>(i) + 1;
                --remaining_[i];
                std::uint32_t independent_pool = others & ~neighbours_[v];
                extend(1u << v, independent_pool, u - 1, false, unassigned, total);
                if (allow_cliques_ && u >= 2)
                    extend(1u << v, others & neighbours_[v], u - 1, true, unassigned, total);
                ++remaining_[i];
            }
            memo_.emplace(std::move(k), total);
            return total;
        }

        void extend(std::uint32_t part, std::uint32_t pool, int left, bool clique, std::uint32_t unassigned, BigInt & total)
        {
            if (left == 0) {
                total += count(unassigned & ~part);
                return;
            }
            while (pool && std::popcount(pool) >= left) {
                int w = std::countr_zero(pool);
                pool &= pool - 1;
                std::uint32_t next_pool = clique ? (pool & neighbours_[w]) : (pool & ~neighbours_[w]);
                extend(part | (1u << w), next_pool, left - 1, clique, unassigned, total);
            }
        }

        int n_;
        bool allow_cliques_;
        std::vector<std::uint64_t> remaining_;
        std::vector<std::uint32_t> neighbours_;
        std::unordered_map<std::string, BigInt> memo_;
    };

    BigInt factorial(std::uint64_t k)
    {
        BigInt f = 1;
        for (std::uint64_t i = 2 ; i <= k ; ++i)
            f *= i;
        return f;
    }

    ColouringCounts count_with_profile(const Graph & g, const Profile & profile, bool cocolouring)
    {
        require(g.size() >= 1, "profile counting needs n >= 1");
        require(g.size() <= 20, "profile counting is limited to n <= 20");
        require(profile.complete_for(static_cast<std::uint64_t>(g.size())),
                "profile must be complete: sum of u*k_u must equal n");
        ProfileCounter counter(g, profile, cocolouring);
        ColouringCounts out;
        out.unordered = counter.count();
        BigInt orderings = 1;
        for (auto c : profile.counts())
            orderings *= factorial(c);
        out.ordered = out.unordered * orderings;
        return out;
    }
}

int chromatic_number(const Graph & g)
{
    require(g.size() >= 1, "chromatic_number requires n >= 1");
    return ColouringSearch(g, g.size()).solve();
}

int t_bounded_chromatic(const Graph & g, int t)
{
    require(t >= 1 && t <= g.size(), "t_bounded_chromatic requires 1 <= t <= n");
    return ColouringSearch(g, t).solve();
}

int cochromatic_number(const Graph & g)
{
    require(g.size() >= 1, "cochromatic_number requires n >= 1");
    int upper = greedy_cocolouring(g).count();
    return CocolouringSearch(g).solve(upper);
}

ColouringCounts count_colourings_with_profile(const Graph & g, const Profile & profile)
{
    return count_with_profile(g, profile, false);
}

ColouringCounts count_cocolourings_with_profile(const Graph & g, const Profile & profile)
{
    return count_with_profile(g, profile, true);
}

GreedyCocolouring greedy_cocolouring(const Graph & g)
{
    GreedyCocolouring out;
    VertexSet remaining = VertexSet::full(g.size());
    while (remaining.any()) {
        VertexSet independent = maximum_independent_set(g, remaining);
        VertexSet clique = maximum_clique(g, remaining);
        bool take_clique = clique.count() > independent.count();
        VertexSet & chosen = take_clique ? clique : independent;
        remaining -= chosen;
        out.classes.push_back(std::move(chosen));
        out.is_clique.push_back(take_clique);
    }
    return out;
}

} // namespace cochromatic
