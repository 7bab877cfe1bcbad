#include "cochromatic/profile_opt.hpp"

#include "cochromatic/errors.hpp"
#include "cochromatic/moments.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace cochromatic {

BigFloat log_d(int u)
{
    return BigFloat(choose2(static_cast<std::uint64_t>(u))) * ln2() + log_factorial(static_cast<std::uint64_t>(u));
}

ColouringExpectationTable::ColouringExpectationTable(std::uint64_t n, int t)
    : n_(n), t_(static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(t, 0)), n)))
{
    require(n >= 1, "E_{n,k,t} requires n >= 1");
    require(t >= 1, "E_{n,k,t} requires t >= 1");
    log_n_factorial_ = log_factorial(n);
    inverse_d_.resize(static_cast<std::size_t>(t_) + 1);
    for (int u = 1; u <= t_; ++u)
        inverse_d_[u] = exp(-log_d(u));
    row_.assign(n + 1, BigFloat(0));
    row_[0] = 1;
    scratch_.assign(n + 1, BigFloat(0));
}

LogReal ColouringExpectationTable::next()
{
    ++c_;
    const std::uint64_t hi = std::min<std::uint64_t>(n_, c_ * static_cast<std::uint64_t>(t_));
    const BigFloat inv_c = BigFloat(1) / BigFloat(c_);
    BigFloat acc;
    for (std::uint64_t v = 0; v <= n_; ++v) {
        if (v < c_ || v > hi) {
            scratch_[v] = 0;
            continue;
        }
        acc = 0;
        const std::uint64_t umax = std::min<std::uint64_t>(static_cast<std::uint64_t>(t_), v);
        for (std::uint64_t u = 1; u <= umax; ++u) {
            const BigFloat & prev = row_[v - u];
            if (! prev.is_zero())
                acc += prev * inverse_d_[u];
        }
        scratch_[v] = acc * inv_c;
    }
    row_.swap(scratch_);
    if (row_[n_].is_zero())
        return LogReal::zero();
    return LogReal::from_log(log_n_factorial_ + log(row_[n_]));
}

ExpectationValue exact_E_nkt(std::uint64_t n, std::uint64_t k, int t)
{
    require(n >= 1 && k >= 1, "E_{n,k,t} requires n >= 1 and k >= 1");
    require(t >= 1, "E_{n,k,t} requires t >= 1");
    ExpectationValue out;
    if (k > n || n > k * static_cast<std::uint64_t>(t)) {
        out.feasible = false;
        return out;
    }
    ColouringExpectationTable table(n, t);
    LogReal value;
    while (table.classes() < k)
        value = table.next();
    out.value = value;
    return out;
}

namespace {
    struct TiltedMoments {
        BigFloat log_s0;   // ln sum_u e^{b u} / d_u
        BigFloat mean;
        BigFloat variance;
    };

    TiltedMoments tilted(const std::vector<BigFloat> & ld, const BigFloat & b)
    {
        const int t = static_cast<int>(ld.size()) - 1;
        std::vector<BigFloat> lw(static_cast<std::size_t>(t) + 1);
        BigFloat top = -std::numeric_limits<double>::infinity();
        for (int u = 1; u <= t; ++u) {
            lw[u] = b * u - ld[u];
            if (lw[u] > top)
                top = lw[u];
        }
        BigFloat s0 = 0, s1 = 0, s2 = 0;
        for (int u = 1; u <= t; ++u) {
            BigFloat w = exp(lw[u] - top);
            s0 += w;
            s1 += w * u;
            s2 += w * u * u;
        }
        TiltedMoments m;
        m.log_s0 = top + log(s0);
        m.mean = s1 / s0;
        m.variance = s2 / s0 - m.mean * m.mean;
        return m;
    }

    std::vector<BigFloat> log_d_table(int t)
    {
        std::vector<BigFloat> ld(static_cast<std::size_t>(t) + 1);
        for (int u = 1; u <= t; ++u)
            ld[u] = log_d(u);
        return ld;
    }

    constexpr int newton_cap = 2000;
}

RelaxedOptimum solve_relaxed_profile(std::uint64_t n, const BigFloat & k, int t, const BigFloat & b_start)
{
    require(t >= 2, "relaxed L0 requires t >= 2");
    require(k > 0, "relaxed L0 requires k > 0");
    const BigFloat target = BigFloat(n) / k;
    require(target >= 1 && target <= t, "relaxed L0 requires 1 <= n/k <= t");

    const auto ld = log_d_table(t);
    if (target == 1 || target == t) {
        // Only one size fits, so the supremum is attained by that single profile.
        const int u = target == 1 ? 1 : t;
        RelaxedOptimum out;
        out.a = std::numeric_limits<double>::quiet_NaN();
        out.b = std::numeric_limits<double>::quiet_NaN();
        out.k_u.assign(static_cast<std::size_t>(t), BigFloat(0));
        out.k_u[u - 1] = k;
        const BigFloat bn(n);
        out.value = bn * log(bn) - bn + k - k * (log(k) + ld[u]);
        out.variance = 0;
        out.saddle_log_E = log_factorial(n) - log_gamma(k + 1) - k * ld[u];
        return out;
    }
    const BigFloat tol = BigFloat(t) * pow(BigFloat(2), -static_cast<int>(precision_bits()) + 24);

    // The tilted mean is strictly increasing in b, from 1 to t.
    BigFloat lo = b_start - 1, hi = b_start + 1;
    int expansions = 0;
    while (tilted(ld, lo).mean >= target) {
        lo -= (hi - lo);
        if (++expansions > 400)
            throw ConvergenceError("relaxed L0: could not bracket the multiplier from below", lo.convert_to<double>(),
                                   hi.convert_to<double>());
    }
    while (tilted(ld, hi).mean <= target) {
        hi += (hi - lo);
        if (++expansions > 400)
            throw ConvergenceError("relaxed L0: could not bracket the multiplier from above", lo.convert_to<double>(),
                                   hi.convert_to<double>());
    }

    BigFloat b = (b_start > lo && b_start < hi) ? b_start : (lo + hi) / 2;
    TiltedMoments m = tilted(ld, b);
    int it = 0;
    while (abs(m.mean - target) > tol) {
        if (++it > newton_cap)
            throw ConvergenceError("relaxed L0: Newton iteration cap reached", lo.convert_to<double>(),
                                   hi.convert_to<double>());
        if (m.mean < target)
            lo = b;
        else
            hi = b;
        BigFloat step = (target - m.mean) / m.variance;
        BigFloat candidate = b + step;
        if (! (candidate > lo && candidate < hi) || m.variance <= 0)
            candidate = (lo + hi) / 2;
        if (candidate == b)
            break;
        b = candidate;
        m = tilted(ld, b);
    }

    RelaxedOptimum out;
    out.b = b;
    out.a = log(k) - m.log_s0;
    out.iterations = it;
    out.k_u.resize(static_cast<std::size_t>(t));
    for (int u = 1; u <= t; ++u) {
        BigFloat lk = out.a + b * u - ld[u];
        out.k_u[u - 1] = exp(lk);
    }
    const BigFloat bn(n);
    out.value = bn * log(bn) - bn + k - out.a * k - b * bn;
    out.variance = m.variance;
    out.saddle_log_E = log_factorial(n) - log_gamma(k + 1) + k * m.log_s0 - b * bn
                       - log(2 * boost::math::constants::pi<BigFloat>() * k * m.variance) / 2;
    return out;
}

BigFloat profile_objective(std::uint64_t n, const Profile & profile)
{
    const BigFloat bn(n);
    BigFloat value = bn * log(bn) - bn + BigFloat(profile.classes());
    for (int u = 1; u <= profile.bound(); ++u) {
        std::uint64_t c = profile.count(u);
        if (c == 0)
            continue;
        value -= BigFloat(c) * (log(BigFloat(c)) + log_d(u));
    }
    return value;
}

BigFloat L0(std::uint64_t n, const BigFloat & k, int t, L0Mode mode)
{
    if (mode == L0Mode::relaxed)
        return solve_relaxed_profile(n, k, t).value;
    require(k == floor(k), "integer L0 requires an integer k");
    return optimal_profile(n, k.convert_to<std::uint64_t>(), t).objective;
}

BigFloat dL0_dk(std::uint64_t n, const BigFloat & k, int t, const BigFloat & h)
{
    require(h > 0, "finite-difference step must be positive");
    auto lower = solve_relaxed_profile(n, k - h, t);
    auto upper = solve_relaxed_profile(n, k + h, t, isnan(lower.b) ? BigFloat(0) : lower.b);
    return (upper.value - lower.value) / (2 * h);
}

BigFloat dL0_dk_envelope(std::uint64_t n, const BigFloat & k, int t)
{
    return -solve_relaxed_profile(n, k, t).a;
}

std::string to_string(ThresholdMethod method)
{
    switch (method) {
    case ThresholdMethod::automatic: return "auto";
    case ThresholdMethod::exact_dp: return "exact_dp";
    case ThresholdMethod::l0_bisection: return "L0_bisection";
    case ThresholdMethod::l0_raw: return "L0_bisection_raw";
    }
    return "unknown";
}

namespace {
    bool in_l0_regime(std::uint64_t n, std::uint64_t k, int t)
    {
        return k >= 1 && k <= n && n <= k * static_cast<std::uint64_t>(t);
    }

    void attach_l0(ThresholdResult & r)
    {
        if (in_l0_regime(r.n, r.k_threshold, r.t))
            r.L0_at = L0(r.n, BigFloat(r.k_threshold), r.t);
        if (r.k_threshold > 1 && in_l0_regime(r.n, r.k_threshold - 1, r.t))
            r.L0_below = L0(r.n, BigFloat(r.k_threshold - 1), r.t);
        else
            r.L0_below = BigFloat(-std::numeric_limits<double>::infinity());
    }

    ThresholdResult threshold_exact(std::uint64_t n, int t)
    {
        ThresholdResult r;
        r.n = n;
        r.t = t;
        r.method = ThresholdMethod::exact_dp;
        ColouringExpectationTable table(n, t);
        const std::uint64_t first_feasible = (n + static_cast<std::uint64_t>(t) - 1) / static_cast<std::uint64_t>(t);
        LogReal previous;
        bool have_previous = false;
        const LogReal unit = LogReal::one();
        while (table.classes() < n) {
            LogReal e = table.next();
            const std::uint64_t c = table.classes();
            if (c >= first_feasible && have_previous && e < previous)
                r.monotone_in_bracket = false;
            if (! (e < unit)) {
                r.k_threshold = c;
                r.log_E_at = e.log();
                if (! previous.is_zero())
                    r.log_E_below = previous.log();
                else
                    r.log_E_below = BigFloat(-std::numeric_limits<double>::infinity());
                return r;
            }
            if (c >= first_feasible) {
                previous = e;
                have_previous = true;
            }
        }
        throw ConvergenceError("exact threshold: no k <= n with E >= 1", 1.0, static_cast<double>(n));
    }

    ThresholdResult threshold_l0(std::uint64_t n, int t, bool refine)
    {
        ThresholdResult r;
        r.n = n;
        r.t = t;
        r.method = refine ? ThresholdMethod::l0_bisection : ThresholdMethod::l0_raw;
        const std::uint64_t k_min = (n + static_cast<std::uint64_t>(t) - 1) / static_cast<std::uint64_t>(t);
        const std::uint64_t k_max = n;
        auto value = [&](std::uint64_t k) { return L0(n, BigFloat(k), t); };
        std::uint64_t k_raw = k_min;
        if (value(k_min) < 0) {
            // L0 is concave in k and L0(n, n, t) = 0, so {k : L0 >= 0} is an interval
            // ending at n; step up geometrically into it, then bisect.
            std::uint64_t lo = k_min, hi = k_min, step = 1;
            for (;;) {
                hi = std::min(k_max, lo + step);
                if (value(hi) >= 0)
                    break;
                if (hi == k_max)
                    throw ConvergenceError("L0 threshold: L0 < 0 across the regime", static_cast<double>(k_min),
                                           static_cast<double>(k_max));
                lo = hi;
                step *= 2;
            }
            while (hi - lo > 1) {
                std::uint64_t mid = lo + (hi - lo) / 2;
                if (value(mid) >= 0)
                    hi = mid;
                else
                    lo = mid;
            }
            k_raw = hi;
        }
        r.k_raw = k_raw;
        std::uint64_t k = k_raw;
        if (refine) {
            // ln E - L0 = O(log n) while L0 grows by order log^2 n per unit of k,
            // so the refined threshold sits a few steps from k_raw.
            auto saddle = [&](std::uint64_t c) { return solve_relaxed_profile(n, BigFloat(c), t).saddle_log_E; };
            int steps = 0;
            while (k > k_min && saddle(k - 1) >= 0) {
                --k;
                if (++steps > 64)
                    throw ConvergenceError("L0 threshold: refinement drifted", static_cast<double>(k), static_cast<double>(k_raw));
            }
            while (k < k_max && saddle(k) < 0) {
                ++k;
                if (++steps > 64)
                    throw ConvergenceError("L0 threshold: refinement drifted", static_cast<double>(k_raw), static_cast<double>(k));
            }
            r.saddle_log_E_at = saddle(k);
            if (k > k_min)
                r.saddle_log_E_below = saddle(k - 1);
        }
        r.k_threshold = k;
        attach_l0(r);
        return r;
    }
}

ThresholdResult first_moment_threshold(std::uint64_t n, int t, ThresholdMethod method)
{
    require(t >= 2, "first_moment_threshold requires t >= 2");
    require(n >= 1, "first_moment_threshold requires n >= 1");
    if (method == ThresholdMethod::automatic)
        method = n <= 3000 ? ThresholdMethod::exact_dp : ThresholdMethod::l0_bisection;
    if (method == ThresholdMethod::exact_dp) {
        ThresholdResult r = threshold_exact(n, t);
        attach_l0(r);
        return r;
    }
    return threshold_l0(n, t, method == ThresholdMethod::l0_bisection);
}

std::optional<BigFloat> gap_display_crossover_log(double eps)
{
    require(eps > 0.0 && eps < 1.0, "eps must satisfy 0 < eps < 1");
    const BigFloat e(eps);
    const BigFloat decay_main = BigFloat("0.001") - e / 2;
    if (decay_main <= 0)
        return std::nullopt;
    // With x = ln n, dividing the display by n^{1-eps/2} gives
    // g(x) = 1 - 2 e^{-(0.001 - eps/2) x} - e^{-0.4 eps x} - e^{-0.5 eps x} >= 0, increasing in x.
    auto g = [&](const BigFloat & x) {
        return 1 - 2 * exp(-decay_main * x) - exp(-BigFloat("0.4") * e * x) - exp(-e * x / 2);
    };
    BigFloat lo = 0, hi = 1;
    while (g(hi) < 0) {
        lo = hi;
        hi *= 2;
        if (hi > BigFloat(1e300))
            return std::nullopt;
    }
    for (int i = 0; i < 400 && hi - lo > hi * BigFloat(1e-30); ++i) {
        BigFloat mid = (lo + hi) / 2;
        if (g(mid) >= 0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

KStarResult kstar_and_gap(std::uint64_t n, double eps, ThresholdMethod method)
{
    require(eps > 0.0 && eps < 1.0, "kstar_and_gap requires 0 < eps < 1");
    require(n >= 3, "kstar_and_gap requires n >= 3");
    KStarResult r;
    r.n = n;
    r.eps = eps;
    AlphaData data = alpha_data(n);
    r.t = data.alpha - 1;
    require(r.t >= 2, "kstar_and_gap requires alpha >= 3");
    r.window_holds = eps < 0.45 && window_condition(n, eps).holds;
    r.k_threshold = first_moment_threshold(n, r.t, method).k_threshold;

    const BigFloat bn(n), e(eps), kt(r.k_threshold);
    auto power = [&](const BigFloat & exponent) { return pow(bn, exponent); };
    auto floor_i = [](const BigFloat & x) { return floor(x).convert_to<std::int64_t>(); };
    const BigFloat p_star = power(1 - e / 2);
    const BigFloat p_1 = power(1 - BigFloat("0.9") * e);
    const BigFloat p_999 = power(BigFloat("0.999"));
    const BigFloat p_gap = power(1 - e);

    r.k_star = floor_i(kt - p_star);
    r.k_1 = floor_i(kt - p_1);
    r.k_2 = floor_i(BigFloat(r.k_star) + 2 * p_999);
    r.gap = r.k_1 - r.k_2;
    r.k_star_feasible = r.k_star >= 1 && static_cast<std::uint64_t>(r.k_star) * static_cast<std::uint64_t>(r.t) >= n;
    r.display_holds = p_star - 2 * p_999 - p_1 >= p_gap;
    r.gap_bound_holds = BigFloat(r.gap) >= p_gap - 2;
    if (auto x = gap_display_crossover_log(eps))
        r.crossover_log10_n = (*x / log(BigFloat(10))).convert_to<double>();
    return r;
}

namespace {
    // Objective terms that depend on the profile: k - sum_u c_u ln(c_u d_u).
    BigFloat term(std::uint64_t c, const BigFloat & ld)
    {
        if (c == 0)
            return BigFloat(0);
        BigFloat bc(c);
        return bc - bc * (log(bc) + ld);
    }
}

ProfileSolution optimal_profile(std::uint64_t n, std::uint64_t k, int t)
{
    require(t >= 2, "optimal_profile requires t >= 2");
    require(k >= 1 && k <= n && n <= k * static_cast<std::uint64_t>(t), "optimal_profile requires 1 <= n/k <= t");
    ProfileSolution sol;
    sol.relaxed = solve_relaxed_profile(n, BigFloat(k), t);
    const auto ld = log_d_table(t);

    std::vector<std::uint64_t> c(static_cast<std::size_t>(t) + 1, 0);
    for (int u = 1; u <= t; ++u)
        c[u] = round(sol.relaxed.k_u[u - 1]).convert_to<std::uint64_t>();

    auto delta = [&](int u, int change) {
        // change in sum of terms when c_u changes by `change`
        if (change < 0 && c[u] == 0)
            return BigFloat(-std::numeric_limits<double>::infinity());
        std::uint64_t next = change < 0 ? c[u] - 1 : c[u] + 1;
        return term(next, ld[u]) - term(c[u], ld[u]);
    };

    auto classes = [&] {
        std::uint64_t s = 0;
        for (int u = 1; u <= t; ++u)
            s += c[u];
        return s;
    };
    auto mass = [&] {
        std::uint64_t s = 0;
        for (int u = 1; u <= t; ++u)
            s += c[u] * static_cast<std::uint64_t>(u);
        return s;
    };

    const BigFloat ninf = -std::numeric_limits<double>::infinity();
    while (classes() != k) {
        const int change = classes() < k ? +1 : -1;
        int best_u = 0;
        BigFloat best = ninf;
        for (int u = 1; u <= t; ++u) {
            BigFloat d = delta(u, change);
            if (d > best) {
                best = d;
                best_u = u;
            }
        }
        if (best_u == 0)
            throw PreconditionError("optimal_profile: cannot repair the class count");
        c[best_u] = change > 0 ? c[best_u] + 1 : c[best_u] - 1;
        ++sol.repair_moves;
    }
    // Each move keeps the class count and shifts the mass by one.
    while (mass() != n) {
        const bool grow = mass() < n;
        int best_u = 0;
        BigFloat best = ninf;
        for (int u = 1; u <= t; ++u) {
            const int v = grow ? u + 1 : u - 1;
            if (c[u] == 0 || v < 1 || v > t)
                continue;
            BigFloat d = delta(u, -1);
            c[u] -= 1;
            d += delta(v, +1);
            c[u] += 1;
            if (d > best) {
                best = d;
                best_u = u;
            }
        }
        if (best_u == 0)
            throw PreconditionError("optimal_profile: cannot repair the mass");
        const int v = grow ? best_u + 1 : best_u - 1;
        c[best_u] -= 1;
        c[v] += 1;
        ++sol.repair_moves;
    }

    sol.profile = Profile(std::vector<std::uint64_t>(c.begin() + 1, c.end()));
    sol.objective = profile_objective(n, sol.profile);
    sol.displacement = 0;
    for (int u = 1; u <= t; ++u)
        sol.displacement += abs(BigFloat(c[u]) - sol.relaxed.k_u[u - 1]);
    return sol;
}

double default_gamma(double x)
{
    return std::log2(x + 2.0) - 2.0;
}

TameCheck is_tame(const Profile & profile, std::uint64_t n, const TailFunction & gamma, double c)
{
    require(profile.complete_for(n), "is_tame requires a complete profile");
    const AlphaData data = alpha_data(n);
    const int alpha = data.alpha;
    require(profile.bound() <= alpha - 1, "is_tame requires an (alpha-1)-bounded profile");
    TameCheck out;
    out.tail_ok = true;
    double worst = -std::numeric_limits<double>::infinity();
    const BigFloat bn(n);
    for (int u = 1; u <= alpha - 1; ++u) {
        std::uint64_t cu = profile.count(u);
        if (cu == 0)
            continue;
        const double x = alpha - u;
        // compare in log2: log2(u k_u / n) < -x gamma(x)
        BigFloat lhs = log(BigFloat(static_cast<std::uint64_t>(u) * cu) / bn) / ln2();
        BigFloat rhs = BigFloat(-x * gamma(x));
        double slack = (lhs - rhs).convert_to<double>();
        if (slack > worst) {
            worst = slack;
            out.worst_u = u;
        }
        if (! (lhs < rhs))
            out.tail_ok = false;
    }
    Expectation e = expected_colourings(n, profile, RandomGraphModel::gnm);
    out.log_expectation = e.unordered.is_zero() ? BigFloat(-std::numeric_limits<double>::infinity()) : e.unordered.log();
    out.expectation_ok = out.log_expectation >= -pow(bn, BigFloat(1 - c));
    return out;
}

} // namespace cochromatic
