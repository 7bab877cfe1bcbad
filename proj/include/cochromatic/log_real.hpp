#pragma once

#include "cochromatic/numeric.hpp"

#include <compare>
#include <span>
#include <string>

namespace cochromatic {

/// A real number stored as sign and natural log of its magnitude.
///
/// Zero is sign 0 with log magnitude -inf. Products add logs; sums use a
/// stable log-sum-exp, so values like n! or 2^{-n^2} never overflow.
class LogReal {
public:
    LogReal();

    static LogReal zero() { return LogReal(); }
    static LogReal one();
    static LogReal from_log(BigFloat log_magnitude, int sign = 1);
    static LogReal from_value(const BigFloat & value);
    static LogReal from_double(double value);

    int sign() const noexcept { return sign_; }
    bool is_zero() const noexcept { return sign_ == 0; }
    const BigFloat & log_magnitude() const noexcept { return log_; }

    /// ln of the value; requires a positive value.
    BigFloat log() const;
    BigFloat value() const;
    double to_double() const;
    /// log10 of the magnitude (-inf for zero).
    double log10_magnitude() const;
    /// e.g. "-1.2346e+1234"; handles exponents far outside double range.
    std::string to_scientific(int significant_digits = 6) const;

    LogReal operator-() const;
    LogReal & operator*=(const LogReal & other);
    LogReal & operator/=(const LogReal & other);
    LogReal & operator+=(const LogReal & other);
    LogReal & operator-=(const LogReal & other);

    friend LogReal operator*(LogReal a, const LogReal & b) { return a *= b; }
    friend LogReal operator/(LogReal a, const LogReal & b) { return a /= b; }
    friend LogReal operator+(LogReal a, const LogReal & b) { return a += b; }
    friend LogReal operator-(LogReal a, const LogReal & b) { return a -= b; }

    LogReal pow(long exponent) const;

    friend bool operator==(const LogReal & a, const LogReal & b);
    friend std::partial_ordering operator<=>(const LogReal & a, const LogReal & b);

    /// Sum of all terms; result is independent of term order up to rounding.
    static LogReal sum(std::span<const LogReal> terms);

private:
    int sign_;
    BigFloat log_;
};

} // namespace cochromatic
