#include "cochromatic/numeric.hpp"

#include "cochromatic/errors.hpp"

#include <atomic>
#include <cmath>

namespace cochromatic {

namespace {
    std::atomic<unsigned> current_bits{0};

    unsigned bits_to_digits10(unsigned bits)
    {
        return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
    }

    const bool precision_initialised = [] {
        set_precision_bits(256);
        return true;
    }();
}

void set_precision_bits(unsigned bits)
{
    require(bits >= 64, "precision must be at least 64 bits");
    current_bits = bits;
    BigFloat::default_precision(bits_to_digits10(bits));
}

unsigned precision_bits()
{
    (void) precision_initialised;
    return current_bits;
}

BigFloat ln2()
{
    return log(BigFloat(2));
}

BigFloat big(double v)
{
    return BigFloat(v);
}

BigFloat big(std::uint64_t v)
{
    return BigFloat(v);
}

BigFloat log_factorial(std::uint64_t n)
{
    if (n < 21) {
        std::uint64_t f = 1;
        for (std::uint64_t i = 2 ; i <= n ; ++i)
            f *= i;
        return log(BigFloat(f));
    }
    return boost::multiprecision::lgamma(BigFloat(n) + 1);
}

BigFloat log_binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return -std::numeric_limits<BigFloat>::infinity();
    if (k == 0 || k == n)
        return BigFloat(0);
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

BigFloat log_gamma(const BigFloat & x)
{
    require(x > 0, "log_gamma requires a positive argument");
    return boost::multiprecision::lgamma(x);
}

} // namespace cochromatic
