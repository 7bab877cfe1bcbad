#include "cochromatic/moments.hpp"

#include "cochromatic/errors.hpp"

#include <cmath>

namespace cochromatic {

BigFloat alpha0(std::uint64_t n)
{
    require(n >= 3, "alpha0 requires n >= 3");
    const BigFloat l2 = ln2();
    BigFloat log2n = log(BigFloat(n)) / l2;
    BigFloat log2log2n = log(log2n) / l2;
    BigFloat log2_e_half = (1 - l2) / l2;  // log2(e/2) = 1/ln 2 - 1
    return 2 * log2n - 2 * log2log2n + 2 * log2_e_half + 1;
}

LogReal mu(std::uint64_t n, std::uint64_t t)
{
    require(t <= n, "mu(n, t) requires 0 <= t <= n");
    BigFloat l = log_binomial(n, t) - BigFloat(choose2(t)) * ln2();
    return LogReal::from_log(std::move(l));
}

AlphaData alpha_data(std::uint64_t n)
{
    AlphaData d;
    d.n = n;
    d.alpha0 = alpha0(n);
    d.alpha = static_cast<int>(floor(d.alpha0).convert_to<long>());
    auto a = static_cast<std::uint64_t>(d.alpha);
    d.mu_alpha = mu(n, std::min<std::uint64_t>(a, n));
    d.mu_alpha_minus_1 = mu(n, a - 1);
    d.exponent = d.mu_alpha.log() / log(BigFloat(n));
    return d;
}

namespace {
    void check_eps(double eps)
    {
        require(eps > 0.0 && eps < 0.45, "eps must satisfy 0 < eps < 0.45");
    }

    bool lower_ok(const BigFloat & log_mu, const BigFloat & log_n, const BigFloat & eps)
    {
        return log_mu >= (BigFloat("0.05") + eps) * log_n;
    }

    bool upper_ok(const BigFloat & log_mu, const BigFloat & log_n, const BigFloat & eps)
    {
        return log_mu <= (1 - eps) * log_n;
    }

    BigFloat log_mu_at(std::uint64_t n, std::uint64_t alpha)
    {
        return log_binomial(n, alpha) - BigFloat(choose2(alpha)) * ln2();
    }

    // Smallest n in [lo, hi] with pred(n) true, for pred monotone false -> true;
    // returns hi + 1 if none.
    template <typename Pred>
    std::uint64_t first_true(std::uint64_t lo, std::uint64_t hi, Pred pred)
    {
        std::uint64_t a = lo, b = hi + 1;
        while (a < b) {
            std::uint64_t mid = a + (b - a) / 2;
            if (pred(mid))
                b = mid;
            else
                a = mid + 1;
        }
        return a;
    }
}

WindowCheck window_condition(std::uint64_t n, double eps)
{
    check_eps(eps);
    WindowCheck w;
    w.data = alpha_data(n);
    BigFloat log_n = log(BigFloat(n));
    BigFloat e(eps);
    BigFloat log_mu = w.data.mu_alpha.log();
    w.lower_holds = lower_ok(log_mu, log_n, e);
    w.upper_holds = upper_ok(log_mu, log_n, e);
    w.holds = w.lower_holds && w.upper_holds;
    return w;
}

FractionResult fraction_applicable(std::uint64_t n_max, double eps)
{
    check_eps(eps);
    require(n_max >= 3, "fraction_applicable requires n_max >= 3");
    FractionResult r;
    r.n_max = n_max;
    r.total = n_max - 2;
    const BigFloat e(eps);

    auto alpha_of = [](std::uint64_t n) { return floor(alpha0(n)).convert_to<long>(); };

    std::uint64_t start = 3;
    while (start <= n_max) {
        long a = alpha_of(start);
        // end of the run with floor(alpha0) == a
        std::uint64_t next = first_true(start, n_max, [&](std::uint64_t n) { return alpha_of(n) > a; });
        std::uint64_t end = next - 1;
        auto alpha = static_cast<std::uint64_t>(a);

        std::uint64_t lo = first_true(start, end, [&](std::uint64_t n) {
            return lower_ok(log_mu_at(n, alpha), log(BigFloat(n)), e);
        });
        std::uint64_t past_hi = first_true(start, end, [&](std::uint64_t n) {
            return ! upper_ok(log_mu_at(n, alpha), log(BigFloat(n)), e);
        });
        if (past_hi > lo)
            r.applicable += past_hi - lo;
        start = next;
    }
    r.fraction = static_cast<double>(r.applicable) / static_cast<double>(r.total);
    return r;
}

std::pair<BigFloat, BigFloat> fraction_limit_constants()
{
    BigFloat two(2);
    BigFloat denom = 1 - pow(two, BigFloat("-0.5"));
    BigFloat low = (pow(two, BigFloat("-0.025")) - pow(two, BigFloat("-0.5"))) / denom;
    BigFloat high = (1 - pow(two, BigFloat("-0.475"))) / denom;
    return {low, high};
}

BigFloat log_partition_count(std::uint64_t n, const Profile & profile)
{
    require(profile.valid_for(n), "profile is infeasible: sum of u*k_u exceeds n");
    BigFloat l = log_factorial(n) - log_factorial(n - profile.mass());
    for (int u = 2 ; u <= profile.bound() ; ++u)
        if (profile.count(u))
            l -= BigFloat(profile.count(u)) * log_factorial(static_cast<std::uint64_t>(u));
    return l;
}

namespace {
    BigFloat log_class_orderings(const Profile & profile)
    {
        BigFloat l = 0;
        for (auto c : profile.counts())
            l += log_factorial(c);
        return l;
    }
}

Expectation expected_colourings(std::uint64_t n, const Profile & profile, RandomGraphModel model,
                                std::optional<std::uint64_t> m)
{
    require(n >= 1, "expected_colourings requires n >= 1");
    BigFloat log_p = log_partition_count(n, profile);
    const std::uint64_t f = profile.forbidden_pairs();
    Expectation e;
    if (model == RandomGraphModel::half) {
        e.ordered = LogReal::from_log(log_p - BigFloat(f) * ln2());
    }
    else {
        const std::uint64_t pairs = n * (n - 1) / 2;
        const std::uint64_t edges = m.value_or(pairs / 2);
        require(edges <= pairs, "G(n,m) needs m <= N");
        require(f <= pairs, "G(n,m) expectation needs f_k <= N");
        if (pairs - f < edges)
            e.ordered = LogReal::zero();
        else
            e.ordered = LogReal::from_log(log_p + log_binomial(pairs - f, edges) - log_binomial(pairs, edges));
    }
    e.unordered = e.ordered / LogReal::from_log(log_class_orderings(profile));
    return e;
}

Expectation expected_cocolourings(std::uint64_t n, const Profile & profile)
{
    require(profile.count(1) == 0, "expected_cocolourings requires k_1 = 0");
    Expectation e = expected_colourings(n, profile, RandomGraphModel::half);
    LogReal factor = LogReal::from_log(BigFloat(profile.classes()) * ln2());
    e.ordered *= factor;
    e.unordered *= factor;
    return e;
}

TransferRatio gnm_transfer_ratio(std::uint64_t n, std::uint64_t x)
{
    require(n >= 2, "gnm_transfer_ratio requires n >= 2");
    const std::uint64_t pairs = n * (n - 1) / 2;
    const std::uint64_t m = pairs / 2;
    TransferRatio r;
    BigFloat xx(x), nn(n);
    r.asymptotic = LogReal::from_log(-xx * ln2() - xx * xx / (nn * nn));
    if (x > pairs - m) {
        r.exact = LogReal::zero();
        r.exact_is_zero = true;
        return r;
    }
    r.exact = LogReal::from_log(log_binomial(pairs - x, m) - log_binomial(pairs, m));
    return r;
}

LogReal azuma_tail(std::uint64_t n, const BigFloat & t)
{
    require(n >= 1, "azuma_tail requires n >= 1");
    require(t >= 0, "azuma_tail requires t >= 0");
    return LogReal::from_log(ln2() - t * t / (2 * BigFloat(n)));
}

LogReal paley_zygmund_bound(const LogReal & mean, const LogReal & second_moment)
{
    require(mean.sign() >= 0 && second_moment.sign() >= 0, "Paley-Zygmund needs non-negative moments");
    if (mean.is_zero())
        return LogReal::zero();
    require(! second_moment.is_zero(), "inconsistent moments: E[Z^2] = 0 but E[Z] > 0");
    BigFloat gap = second_moment.log_magnitude() - 2 * mean.log_magnitude();
    BigFloat slack = pow(BigFloat(2), -static_cast<int>(precision_bits()) + 16) * (1 + abs(second_moment.log_magnitude()));
    require(gap >= -slack, "inconsistent moments: E[Z^2] < E[Z]^2");
    if (gap < 0)
        return LogReal::one();
    return mean * mean / second_moment;
}

} // namespace cochromatic
