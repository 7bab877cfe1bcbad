#include "cochromatic/rng.hpp"

namespace cochromatic {

namespace {
    constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept
{
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed) noexcept : key_(mix64(seed ^ 0x5851F42D4C957F2DULL)), counter_(0) {}

CounterRng::result_type CounterRng::operator()() noexcept
{
    return at(counter_++);
}

CounterRng::result_type CounterRng::at(std::uint64_t counter) const noexcept
{
    return mix64(key_ + (counter + 1) * golden);
}

CounterRng CounterRng::split(std::uint64_t stream_id) const noexcept
{
    return CounterRng(mix64(key_ ^ mix64(stream_id + golden)), 0, true);
}

std::uint64_t CounterRng::bounded(std::uint64_t bound) noexcept
{
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>((*this)()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double CounterRng::uniform() noexcept
{
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t sample_index) noexcept
{
    std::uint64_t h = mix64(seed + golden);
    h = mix64(h ^ (n * 0xD6E8FEB86659FD93ULL));
    h = mix64(h ^ (sample_index * 0xA0761D6478BD642FULL + 1));
    return h;
}

} // namespace cochromatic
