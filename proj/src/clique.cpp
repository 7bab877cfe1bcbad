#include "cochromatic/graph.hpp"

#include "cochromatic/errors.hpp"

#include <algorithm>
#include <numeric>

namespace cochromatic {

namespace {
    // Branch and bound over a relabelled copy of the candidate subgraph.
    // Candidates are greedily coloured each node; colour number bounds the
    // clique that can still be added.
    class CliqueSearch {
    public:
        CliqueSearch(const Graph & g, const VertexSet & within)
        {
            for (int v = within.first() ; v != -1 ; v = within.next(v))
                label_.push_back(v);
            std::stable_sort(label_.begin(), label_.end(), [&](int a, int b) {
                return g.neighbours(a).intersection_count(within) > g.neighbours(b).intersection_count(within);
            });
            size_ = static_cast<int>(label_.size());
            adj_.assign(static_cast<std::size_t>(size_), VertexSet(size_));
            for (int i = 0 ; i < size_ ; ++i)
                for (int j = i + 1 ; j < size_ ; ++j)
                    if (g.adjacent(label_[i], label_[j])) {
                        adj_[i].set(j);
                        adj_[j].set(i);
                    }
        }

        VertexSet run(int capacity)
        {
            if (size_ > 0) {
                std::vector<int> current;
                expand(VertexSet::full(size_), current);
            }
            VertexSet out(capacity);
            for (int i : best_)
                out.set(label_[i]);
            return out;
        }

    private:
        void colour_sort(const VertexSet & p, std::vector<int> & order, std::vector<int> & bound) const
        {
            VertexSet uncoloured = p;
            int colour = 0;
            while (uncoloured.any()) {
                ++colour;
                VertexSet q = uncoloured;
                for (int v = q.first() ; v != -1 ; v = q.first()) {
                    q.reset(v);
                    q -= adj_[v];
                    uncoloured.reset(v);
                    order.push_back(v);
                    bound.push_back(colour);
                }
            }
        }

        void expand(VertexSet p, std::vector<int> & current)
        {
            std::vector<int> order, bound;
            order.reserve(static_cast<std::size_t>(p.count()));
            bound.reserve(order.capacity());
            colour_sort(p, order, bound);

            for (int i = static_cast<int>(order.size()) - 1 ; i >= 0 ; --i) {
                if (static_cast<int>(current.size()) + bound[i] <= static_cast<int>(best_.size()))
                    return;
                int v = order[i];
                current.push_back(v);
                VertexSet next = p & adj_[v];
                if (next.none()) {
                    if (current.size() > best_.size())
                        best_ = current;
                }
                else
                    expand(std::move(next), current);
                current.pop_back();
                p.reset(v);
            }
        }

        std::vector<int> label_;
        int size_ = 0;
        std::vector<VertexSet> adj_;
        std::vector<int> best_;
    };

    // Whether a greedy partition of `candidates` into pairwise-incompatible classes
    // uses at least `target` classes; fewer classes rule out a compatible set of that size.
    bool colour_bound_reaches(const std::vector<VertexSet> & compatible, const VertexSet & candidates, int target)
    {
        VertexSet uncoloured = candidates;
        int colours = 0;
        while (uncoloured.any()) {
            if (++colours >= target)
                return true;
            VertexSet q = uncoloured;
            for (int v = q.first() ; v != -1 ; v = q.first()) {
                q.reset(v);
                q -= compatible[v];
                uncoloured.reset(v);
            }
        }
        return false;
    }

    std::uint64_t count_sets(const std::vector<VertexSet> & compatible, const VertexSet & candidates, int remaining)
    {
        if (remaining == 0)
            return 1;
        int available = candidates.count();
        if (available < remaining)
            return 0;
        if (remaining == 1)
            return static_cast<std::uint64_t>(available);
        if (remaining >= 3 && ! colour_bound_reaches(compatible, candidates, remaining))
            return 0;
        std::uint64_t total = 0;
        VertexSet rest = candidates;
        for (int v = rest.first() ; v != -1 ; v = rest.first()) {
            rest.reset(v);
            if (rest.count() < remaining - 1)
                break;
            total += count_sets(compatible, rest & compatible[v], remaining - 1);
        }
        return total;
    }

    std::vector<VertexSet> non_neighbourhoods(const Graph & g)
    {
        std::vector<VertexSet> out;
        out.reserve(static_cast<std::size_t>(g.size()));
        VertexSet all = VertexSet::full(g.size());
        for (int v = 0 ; v < g.size() ; ++v) {
            VertexSet s = all - g.neighbours(v);
            s.reset(v);
            out.push_back(std::move(s));
        }
        return out;
    }

    void visit_sets(const std::vector<VertexSet> & compatible, VertexSet & current, int size, const VertexSet & candidates,
                    int min_size, int max_size, const std::function<void(const VertexSet &)> & visit)
    {
        if (size >= min_size)
            visit(current);
        if (size == max_size)
            return;
        VertexSet rest = candidates;
        for (int v = rest.first() ; v != -1 ; v = rest.first()) {
            rest.reset(v);
            // Not enough candidates left to reach min_size.
            if (size + 1 + rest.count() < min_size)
                break;
            current.set(v);
            visit_sets(compatible, current, size + 1, rest & compatible[v], min_size, max_size, visit);
            current.reset(v);
        }
    }
}

VertexSet maximum_clique(const Graph & g, const std::optional<VertexSet> & within)
{
    VertexSet pool = within ? *within : VertexSet::full(g.size());
    require(pool.capacity() == g.size(), "maximum_clique: candidate set size mismatch");
    CliqueSearch search(g, pool);
    return search.run(g.size());
}

VertexSet maximum_independent_set(const Graph & g, const std::optional<VertexSet> & within)
{
    return maximum_clique(complement(g), within);
}

int clique_number(const Graph & g)
{
    return maximum_clique(g).count();
}

int independence_number(const Graph & g)
{
    return maximum_independent_set(g).count();
}

std::uint64_t count_independent_sets(const Graph & g, int size)
{
    require(size >= 0, "count_independent_sets: size must be non-negative");
    if (size > g.size())
        return 0;
    return count_sets(non_neighbourhoods(g), VertexSet::full(g.size()), size);
}

std::uint64_t count_cliques(const Graph & g, int size)
{
    return count_independent_sets(complement(g), size);
}

void for_each_independent_set(const Graph & g, int min_size, int max_size,
                              const std::function<void(const VertexSet &)> & visit)
{
    if (max_size < min_size || max_size < 0)
        return;
    auto compatible = non_neighbourhoods(g);
    VertexSet current(g.size());
    visit_sets(compatible, current, 0, VertexSet::full(g.size()), std::max(min_size, 0), max_size, visit);
}

} // namespace cochromatic
