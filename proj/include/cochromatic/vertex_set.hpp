#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace cochromatic {

/// Fixed-capacity bitset over vertices [0, capacity).
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int capacity) : capacity_(capacity), words_((capacity + 63) / 64, 0) {}

    static VertexSet full(int capacity)
    {
        VertexSet s(capacity);
        for (auto & w : s.words_)
            w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    int capacity() const noexcept { return capacity_; }

    bool test(int v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1; }
    void set(int v) noexcept { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void reset(int v) noexcept { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

    int count() const noexcept
    {
        int c = 0;
        for (auto w : words_)
            c += std::popcount(w);
        return c;
    }

    bool none() const noexcept
    {
        for (auto w : words_)
            if (w)
                return false;
        return true;
    }
    bool any() const noexcept { return ! none(); }

    /// Lowest member, or -1.
    int first() const noexcept
    {
        for (std::size_t i = 0 ; i < words_.size() ; ++i)
            if (words_[i])
                return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
        return -1;
    }

    /// Lowest member greater than v, or -1.
    int next(int v) const noexcept
    {
        ++v;
        if (v >= capacity_)
            return -1;
        std::size_t i = static_cast<std::size_t>(v >> 6);
        std::uint64_t w = words_[i] & (~std::uint64_t{0} << (v & 63));
        while (true) {
            if (w)
                return static_cast<int>(i * 64) + std::countr_zero(w);
            if (++i == words_.size())
                return -1;
            w = words_[i];
        }
    }

    VertexSet & operator&=(const VertexSet & o) noexcept
    {
        for (std::size_t i = 0 ; i < words_.size() ; ++i)
            words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet & operator|=(const VertexSet & o) noexcept
    {
        for (std::size_t i = 0 ; i < words_.size() ; ++i)
            words_[i] |= o.words_[i];
        return *this;
    }
    /// Set difference.
    VertexSet & operator-=(const VertexSet & o) noexcept
    {
        for (std::size_t i = 0 ; i < words_.size() ; ++i)
            words_[i] &= ~o.words_[i];
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet & b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet & b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet & b) { return a -= b; }

    int intersection_count(const VertexSet & o) const noexcept
    {
        int c = 0;
        for (std::size_t i = 0 ; i < words_.size() ; ++i)
            c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }
    bool intersects(const VertexSet & o) const noexcept
    {
        for (std::size_t i = 0 ; i < words_.size() ; ++i)
            if (words_[i] & o.words_[i])
                return true;
        return false;
    }
    bool subset_of(const VertexSet & o) const noexcept
    {
        for (std::size_t i = 0 ; i < words_.size() ; ++i)
            if (words_[i] & ~o.words_[i])
                return false;
        return true;
    }

    std::vector<int> members() const
    {
        std::vector<int> out;
        for (int v = first() ; v != -1 ; v = next(v))
            out.push_back(v);
        return out;
    }

    template <typename F>
    void for_each(F && f) const
    {
        for (std::size_t i = 0 ; i < words_.size() ; ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                f(static_cast<int>(i * 64) + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    friend bool operator==(const VertexSet &, const VertexSet &) = default;
    friend auto operator<=>(const VertexSet & a, const VertexSet & b) { return a.members() <=> b.members(); }

    const std::vector<std::uint64_t> & words() const noexcept { return words_; }

private:
    void trim() noexcept
    {
        if (capacity_ & 63)
            words_.back() &= (std::uint64_t{1} << (capacity_ & 63)) - 1;
    }

    int capacity_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace cochromatic
