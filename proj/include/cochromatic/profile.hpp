#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cochromatic {

/// A t-bounded colouring profile: k_u classes of size u for 1 <= u <= t.
class Profile {
public:
    Profile() = default;
    /// counts[u-1] = k_u; t = counts.size().
    explicit Profile(std::vector<std::uint64_t> counts);

    /// Parses "u:count,u:count,..." (e.g. "3:2" or "2:1,3:4").
    static Profile parse(const std::string & text);
    std::string to_string() const;

    int bound() const noexcept { return static_cast<int>(counts_.size()); }
    /// k_u, zero outside [1, t].
    std::uint64_t count(int u) const noexcept;
    const std::vector<std::uint64_t> & counts() const noexcept { return counts_; }

    /// k = sum of k_u.
    std::uint64_t classes() const noexcept;
    /// sum of u * k_u.
    std::uint64_t mass() const noexcept;
    /// f_k = sum of C(u,2) k_u, the within-class vertex pairs.
    std::uint64_t forbidden_pairs() const noexcept;

    bool complete_for(std::uint64_t n) const noexcept { return mass() == n; }
    bool valid_for(std::uint64_t n) const noexcept { return mass() <= n; }

    /// Class sizes in non-increasing order.
    std::vector<int> part_sizes() const;

    friend bool operator==(const Profile &, const Profile &) = default;

private:
    std::vector<std::uint64_t> counts_;
};

/// Profile realised by the given class sizes.
Profile profile_from_sizes(const std::vector<int> & sizes);

} // namespace cochromatic
