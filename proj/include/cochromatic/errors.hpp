#pragma once

#include <stdexcept>
#include <string>

namespace cochromatic {

/// Raised when an operation is called outside its contract. Maps to CLI exit code 2.
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string & what) : std::invalid_argument(what) {}
};

/// Raised when an iterative numerical method fails. Maps to CLI exit code 3.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string & what, double bracket_lo, double bracket_hi)
        : std::runtime_error(what), lo_(bracket_lo), hi_(bracket_hi) {}

    double bracket_lo() const noexcept { return lo_; }
    double bracket_hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

inline void require(bool condition, const std::string & contract)
{
    if (! condition)
        throw PreconditionError(contract);
}

} // namespace cochromatic
