#include "cochromatic/log_real.hpp"

#include "cochromatic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace cochromatic {

namespace {
    BigFloat minus_infinity()
    {
        return -std::numeric_limits<BigFloat>::infinity();
    }

    // ln(e^a + s e^b) for a >= b, s = +1 or -1.
    BigFloat log_add(const BigFloat & a, const BigFloat & b, int s)
    {
        BigFloat d = exp(b - a);
        if (s > 0)
            return a + log1p(d);
        return a + log1p(-d);
    }
}

LogReal::LogReal() : sign_(0), log_(minus_infinity()) {}

LogReal LogReal::one()
{
    return from_log(BigFloat(0), 1);
}

LogReal LogReal::from_log(BigFloat log_magnitude, int sign)
{
    LogReal r;
    if (sign == 0 || (isinf(log_magnitude) && log_magnitude < 0))
        return r;
    require(! isnan(log_magnitude), "LogReal: log magnitude is NaN");
    r.sign_ = sign > 0 ? 1 : -1;
    r.log_ = std::move(log_magnitude);
    return r;
}

LogReal LogReal::from_value(const BigFloat & value)
{
    if (value == 0)
        return LogReal();
    return from_log(boost::multiprecision::log(abs(value)), value > 0 ? 1 : -1);
}

LogReal LogReal::from_double(double value)
{
    return from_value(BigFloat(value));
}

BigFloat LogReal::log() const
{
    require(sign_ > 0, "LogReal::log requires a positive value");
    return log_;
}

BigFloat LogReal::value() const
{
    if (sign_ == 0)
        return BigFloat(0);
    BigFloat v = exp(log_);
    return sign_ > 0 ? v : BigFloat(-v);
}

double LogReal::to_double() const
{
    if (sign_ == 0)
        return 0.0;
    double l = log_.convert_to<double>();
    return sign_ * std::exp(l);
}

double LogReal::log10_magnitude() const
{
    if (sign_ == 0)
        return -std::numeric_limits<double>::infinity();
    BigFloat l = log_ / boost::multiprecision::log(BigFloat(10));
    return l.convert_to<double>();
}

std::string LogReal::to_scientific(int significant_digits) const
{
    if (sign_ == 0)
        return "0";
    BigFloat l10 = log_ / boost::multiprecision::log(BigFloat(10));
    BigFloat e = floor(l10);
    BigFloat mantissa = boost::multiprecision::pow(BigFloat(10), BigFloat(l10 - e));
    double m = mantissa.convert_to<double>();
    long long ex = e.convert_to<long long>();
    // rounding can push the mantissa to 10.0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", std::max(0, significant_digits - 1), m);
    if (std::string(buf).rfind("10", 0) == 0) {
        m /= 10.0;
        ++ex;
        std::snprintf(buf, sizeof buf, "%.*f", std::max(0, significant_digits - 1), m);
    }
    std::string out = sign_ < 0 ? "-" : "";
    out += buf;
    out += ex < 0 ? "e-" : "e+";
    out += std::to_string(ex < 0 ? -ex : ex);
    return out;
}

LogReal LogReal::operator-() const
{
    LogReal r = *this;
    r.sign_ = -r.sign_;
    return r;
}

LogReal & LogReal::operator*=(const LogReal & other)
{
    if (sign_ == 0 || other.sign_ == 0)
        return *this = LogReal();
    sign_ *= other.sign_;
    log_ += other.log_;
    return *this;
}

LogReal & LogReal::operator/=(const LogReal & other)
{
    require(other.sign_ != 0, "LogReal: division by zero");
    if (sign_ == 0)
        return *this;
    sign_ *= other.sign_;
    log_ -= other.log_;
    return *this;
}

LogReal & LogReal::operator+=(const LogReal & other)
{
    if (other.sign_ == 0)
        return *this;
    if (sign_ == 0)
        return *this = other;

    const bool this_larger = log_ >= other.log_;
    const LogReal & hi = this_larger ? *this : other;
    const LogReal & lo = this_larger ? other : *this;

    if (hi.sign_ == lo.sign_) {
        BigFloat l = log_add(hi.log_, lo.log_, 1);
        int s = hi.sign_;
        log_ = std::move(l);
        sign_ = s;
        return *this;
    }
    if (hi.log_ == lo.log_)
        return *this = LogReal();
    BigFloat l = log_add(hi.log_, lo.log_, -1);
    int s = hi.sign_;
    log_ = std::move(l);
    sign_ = s;
    return *this;
}

LogReal & LogReal::operator-=(const LogReal & other)
{
    return *this += -other;
}

LogReal LogReal::pow(long exponent) const
{
    if (exponent == 0)
        return one();
    require(sign_ != 0 || exponent > 0, "LogReal: zero to a non-positive power");
    if (sign_ == 0)
        return LogReal();
    LogReal r;
    r.sign_ = (sign_ < 0 && (exponent % 2 != 0)) ? -1 : 1;
    r.log_ = log_ * exponent;
    return r;
}

bool operator==(const LogReal & a, const LogReal & b)
{
    if (a.sign_ != b.sign_)
        return false;
    return a.sign_ == 0 || a.log_ == b.log_;
}

std::partial_ordering operator<=>(const LogReal & a, const LogReal & b)
{
    if (a.sign_ != b.sign_)
        return a.sign_ <=> b.sign_;
    if (a.sign_ == 0)
        return std::partial_ordering::equivalent;
    if (a.log_ == b.log_)
        return std::partial_ordering::equivalent;
    bool a_bigger_mag = a.log_ > b.log_;
    if (a.sign_ > 0)
        return a_bigger_mag ? std::partial_ordering::greater : std::partial_ordering::less;
    return a_bigger_mag ? std::partial_ordering::less : std::partial_ordering::greater;
}

LogReal LogReal::sum(std::span<const LogReal> terms)
{
    // Sum positives and negatives separately around their maxima.
    BigFloat max_log = minus_infinity();
    for (const auto & t : terms)
        if (t.sign_ != 0 && t.log_ > max_log)
            max_log = t.log_;
    if (isinf(max_log))
        return LogReal();

    BigFloat pos = 0, neg = 0;
    for (const auto & t : terms) {
        if (t.sign_ > 0)
            pos += exp(t.log_ - max_log);
        else if (t.sign_ < 0)
            neg += exp(t.log_ - max_log);
    }
    BigFloat total = pos - neg;
    if (total == 0)
        return LogReal();
    return from_log(max_log + boost::multiprecision::log(abs(total)), total > 0 ? 1 : -1);
}

} // namespace cochromatic
