#include "cochromatic/profile.hpp"

#include "cochromatic/errors.hpp"

#include <algorithm>
#include <sstream>

namespace cochromatic {

Profile::Profile(std::vector<std::uint64_t> counts) : counts_(std::move(counts))
{
    while (! counts_.empty() && counts_.back() == 0)
        counts_.pop_back();
}

Profile Profile::parse(const std::string & text)
{
    std::vector<std::uint64_t> counts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        auto colon = item.find(':');
        require(colon != std::string::npos, "profile entries must look like u:count, got '" + item + "'");
        long long u = 0, c = 0;
        try {
            u = std::stoll(item.substr(0, colon));
            c = std::stoll(item.substr(colon + 1));
        }
        catch (const std::exception &) {
            throw PreconditionError("profile entry is not numeric: '" + item + "'");
        }
        require(u >= 1 && c >= 0, "profile entry needs u >= 1 and count >= 0: '" + item + "'");
        if (counts.size() < static_cast<std::size_t>(u))
            counts.resize(static_cast<std::size_t>(u), 0);
        counts[static_cast<std::size_t>(u - 1)] += static_cast<std::uint64_t>(c);
    }
    return Profile(std::move(counts));
}

std::string Profile::to_string() const
{
    std::string out;
    for (std::size_t i = 0 ; i < counts_.size() ; ++i)
        if (counts_[i]) {
            if (! out.empty())
                out += ',';
            out += std::to_string(i + 1) + ':' + std::to_string(counts_[i]);
        }
    return out;
}

std::uint64_t Profile::count(int u) const noexcept
{
    if (u < 1 || u > bound())
        return 0;
    return counts_[static_cast<std::size_t>(u - 1)];
}

std::uint64_t Profile::classes() const noexcept
{
    std::uint64_t k = 0;
    for (auto c : counts_)
        k += c;
    return k;
}

std::uint64_t Profile::mass() const noexcept
{
    std::uint64_t m = 0;
    for (std::size_t i = 0 ; i < counts_.size() ; ++i)
        m += (i + 1) * counts_[i];
    return m;
}

std::uint64_t Profile::forbidden_pairs() const noexcept
{
    std::uint64_t f = 0;
    for (std::size_t i = 0 ; i < counts_.size() ; ++i)
        f += (i + 1) * i / 2 * counts_[i];
    return f;
}

std::vector<int> Profile::part_sizes() const
{
    std::vector<int> sizes;
    for (int u = bound() ; u >= 1 ; --u)
        for (std::uint64_t i = 0 ; i < count(u) ; ++i)
            sizes.push_back(u);
    return sizes;
}

Profile profile_from_sizes(const std::vector<int> & sizes)
{
    std::vector<std::uint64_t> counts;
    for (int s : sizes) {
        require(s >= 1, "class sizes must be positive");
        if (counts.size() < static_cast<std::size_t>(s))
            counts.resize(static_cast<std::size_t>(s), 0);
        ++counts[static_cast<std::size_t>(s - 1)];
    }
    return Profile(std::move(counts));
}

} // namespace cochromatic
