#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>

namespace cochromatic {

using BigFloat = boost::multiprecision::mpfr_float;

/// Working precision (mantissa bits) for every BigFloat created afterwards.
/// Default is 256 bits.
void set_precision_bits(unsigned bits);
unsigned precision_bits();

BigFloat ln2();
BigFloat big(double v);
BigFloat big(std::uint64_t v);

/// ln(n!) for n >= 0.
BigFloat log_factorial(std::uint64_t n);
/// ln C(n, k); -inf when k > n.
BigFloat log_binomial(std::uint64_t n, std::uint64_t k);
/// ln Gamma(x) for real x > 0.
BigFloat log_gamma(const BigFloat & x);

inline std::uint64_t choose2(std::uint64_t u) { return u * (u - (u > 0 ? 1 : 0)) / 2; }

} // namespace cochromatic
