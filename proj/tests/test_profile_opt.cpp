#include "cochromatic/errors.hpp"
#include "cochromatic/moments.hpp"
#include "cochromatic/profile_opt.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace cochromatic;
using oracle::Rational;

namespace {
double dbl(const BigFloat & v) { return v.convert_to<double>(); }

// n ln n - n + k - sum k_u ln(k_u d_u), written out from the definition.
BigFloat objective_by_hand(std::uint64_t n, const std::vector<std::pair<int, std::uint64_t>> & parts)
{
    BigFloat n_b(n), v = n_b * log(n_b) - n_b;
    for (auto [u, c] : parts) {
        if (c == 0)
            continue;
        const BigFloat d = pow(BigFloat(2), BigFloat(u * (u - 1) / 2)) * boost::multiprecision::tgamma(BigFloat(u + 1));
        v += BigFloat(c) - BigFloat(c) * log(BigFloat(c) * d);
    }
    return v;
}
}

TEST_SUITE("profile_opt")
{
    TEST_CASE("E_{n,k,t} worked values")
    {
        CHECK(oracle::close(exact_E_nkt(4, 2, 2).value.value(), Rational(3, 4)));
        CHECK(oracle::close(exact_E_nkt(4, 3, 2).value.value(), Rational(3)));
        // Profiles (1,3) at 0.5 and (2,2) at 0.75.
        CHECK(oracle::close(exact_E_nkt(4, 2, 4).value.value(), Rational(5, 4)));
        CHECK(oracle::close(exact_E_nkt(4, 1, 4).value.value(), Rational(1, 64)));
        CHECK_FALSE(exact_E_nkt(5, 2, 2).feasible);
        CHECK(exact_E_nkt(5, 2, 2).value.is_zero());
        CHECK_FALSE(exact_E_nkt(3, 4, 2).feasible);
        CHECK(oracle::close(exact_E_nkt(8, 4, 2).value.value(), oracle::expected_colourings_by_profiles(8, 4, 2)));
    }

    TEST_CASE("E_{n,k,t} matches profile enumeration for every n <= 12")
    {
        for (int n = 1; n <= 12; ++n)
            for (int k = 1; k <= n; ++k)
                for (int t = 1; t <= n; ++t) {
                    const Rational expect = oracle::expected_colourings_by_profiles(n, k, t);
                    ExpectationValue got = exact_E_nkt(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), t);
                    CHECK(got.feasible == (n <= k * t));
                    CHECK(oracle::close(got.value.value(), expect));
                }
    }

    TEST_CASE("streaming table equals single evaluations")
    {
        ColouringExpectationTable table(40, 6);
        for (std::uint64_t c = 1; c <= 40; ++c) {
            LogReal v = table.next();
            CHECK(table.classes() == c);
            LogReal direct = exact_E_nkt(40, c, 6).value;
            CHECK(v.is_zero() == direct.is_zero());
            if (! v.is_zero())
                CHECK(abs(v.log() - direct.log()) < BigFloat("1e-50"));
        }
    }

    TEST_CASE("thresholds worked values")
    {
        CHECK(first_moment_threshold(4, 2).k_threshold == 3);
        CHECK(first_moment_threshold(4, 4).k_threshold == 2);
        CHECK_THROWS_AS(first_moment_threshold(4, 1), PreconditionError);
    }

    TEST_CASE("exact thresholds bracket E = 1")
    {
        for (std::uint64_t n = 3; n <= 150; n += 7)
            for (int t = 2; t <= 9; ++t) {
                ThresholdResult r = first_moment_threshold(n, t, ThresholdMethod::exact_dp);
                CHECK(exact_E_nkt(n, r.k_threshold, t).value >= LogReal::one());
                if (r.k_threshold > 1)
                    CHECK(exact_E_nkt(n, r.k_threshold - 1, t).value < LogReal::one());
                CHECK(r.monotone_in_bracket);
            }
    }

    TEST_CASE("L0 thresholds bracket zero")
    {
        for (std::uint64_t n : {500u, 5000u, 50000u}) {
            const int t = alpha_data(n).alpha - 1;
            ThresholdResult raw = first_moment_threshold(n, t, ThresholdMethod::l0_raw);
            REQUIRE(raw.L0_at);
            REQUIRE(raw.L0_below);
            CHECK(*raw.L0_at >= 0);
            CHECK(*raw.L0_below < 0);
            ThresholdResult refined = first_moment_threshold(n, t, ThresholdMethod::l0_bisection);
            CHECK(refined.k_raw == raw.k_threshold);
            REQUIRE(refined.saddle_log_E_at);
            CHECK(*refined.saddle_log_E_at >= 0);
        }
    }

    TEST_CASE("k_{alpha-1}(n) follows the alpha0 - 1 - 2/ln 2 law at n = 10^6")
    {
        const std::uint64_t n = 1000000;
        AlphaData a = alpha_data(n);
        ThresholdResult r = first_moment_threshold(n, a.alpha - 1);
        const double ratio = double(n) / double(r.k_threshold);
        CHECK(std::abs(ratio - (dbl(a.alpha0) - 1 - 2 / std::log(2.0))) <= 1.0);
    }

    TEST_CASE("relaxed optimiser satisfies its stationarity equations")
    {
        for (auto [n, k, t] : {std::tuple{200u, 40.0, 9}, std::tuple{10000u, 700.0, 19}, std::tuple{37u, 12.5, 4}}) {
            RelaxedOptimum r = solve_relaxed_profile(n, BigFloat(k), t);
            BigFloat classes = 0, mass = 0;
            for (int u = 1; u <= t; ++u) {
                const BigFloat expect = exp(r.a + r.b * u - log_d(u));
                CHECK(abs(r.k_u[static_cast<std::size_t>(u - 1)] - expect) < BigFloat("1e-20") * (1 + expect));
                classes += r.k_u[static_cast<std::size_t>(u - 1)];
                mass += u * r.k_u[static_cast<std::size_t>(u - 1)];
            }
            CHECK(abs(classes - BigFloat(k)) < BigFloat("1e-20"));
            CHECK(abs(mass - BigFloat(n)) < BigFloat("1e-20"));
        }
    }

    TEST_CASE("relaxed L0 does not depend on the starting multiplier")
    {
        for (double b0 : {-5.0, 0.0, 3.0, 12.0}) {
            RelaxedOptimum r = solve_relaxed_profile(200, BigFloat(40), 9, BigFloat(b0));
            CHECK(abs(r.value - L0(200, BigFloat(40), 9)) < BigFloat("1e-10"));
        }
    }

    TEST_CASE("regime ends carry the single-size value")
    {
        // n/k = t: every class has size t; n/k = 1: all singletons.
        const BigFloat at_top = L0(200, BigFloat(20), 10);
        CHECK(abs(at_top - objective_by_hand(200, {{10, 20}})) < BigFloat("1e-40"));
        const BigFloat at_bottom = L0(50, BigFloat(50), 4);
        CHECK(abs(at_bottom - objective_by_hand(50, {{1, 50}})) < BigFloat("1e-40"));
        RelaxedOptimum edge = solve_relaxed_profile(200, BigFloat(20), 10);
        CHECK(isnan(edge.a));
        CHECK(isnan(edge.b));
        CHECK(abs(edge.saddle_log_E - exact_E_nkt(200, 20, 10).value.log()) < BigFloat("1e-40"));
        CHECK_THROWS_AS(L0(200, BigFloat(19), 10), PreconditionError);
        CHECK_THROWS_AS(L0(200, BigFloat(201), 10), PreconditionError);
    }

    TEST_CASE("empty sizes contribute nothing to the objective")
    {
        Profile p(std::vector<std::uint64_t>{0, 3, 0, 1, 0});
        CHECK(abs(profile_objective(10, p) - objective_by_hand(10, {{2, 3}, {4, 1}})) < BigFloat("1e-60"));
    }

    TEST_CASE("L0 increases with k across the threshold regime")
    {
        for (std::uint64_t n : {200u, 3000u, 100000u}) {
            const int t = alpha_data(n).alpha - 1;
            const auto kt = static_cast<double>(first_moment_threshold(n, t).k_threshold);
            BigFloat prev = -std::numeric_limits<double>::infinity();
            for (double f = 0.8; f <= 1.25; f += 0.05) {
                const BigFloat k = floor(BigFloat(kt * f));
                if ((k - 1) * t < n)
                    continue;
                const BigFloat v = L0(n, k, t);
                CHECK(v > prev);
                CHECK(dL0_dk(n, k, t) > 0);
                prev = v;
            }
        }
    }

    TEST_CASE("relaxed L0 dominates the integer profile value")
    {
        for (std::uint64_t n : {100u, 1000u, 10000u}) {
            const int t = alpha_data(n).alpha - 1;
            const auto kt = first_moment_threshold(n, t).k_threshold;
            for (std::uint64_t k : {kt - 2, kt, kt + 5}) {
                if (k * static_cast<std::uint64_t>(t) < n)
                    continue;
                ProfileSolution s = optimal_profile(n, k, t);
                CHECK(s.profile.classes() == k);
                CHECK(s.profile.mass() == n);
                CHECK(s.profile.bound() <= t);
                CHECK(L0(n, BigFloat(k), t) >= L0(n, BigFloat(k), t, L0Mode::integer));
                CHECK(abs(L0(n, BigFloat(k), t, L0Mode::integer) - s.objective) < BigFloat("1e-40"));
            }
        }
    }

    TEST_CASE("derivative of L0 in k")
    {
        const std::uint64_t n = 100000;
        const int t = alpha_data(n).alpha - 1;
        const BigFloat k(first_moment_threshold(n, t).k_threshold);
        const double d1 = dbl(dL0_dk(n, k, t, BigFloat(1))), d2 = dbl(dL0_dk(n, k, t, BigFloat("0.5")));
        CHECK(std::abs(d1 - d2) <= 1e-3 * std::abs(d1));
        CHECK(std::abs(d1 - dbl(dL0_dk_envelope(n, k, t))) <= 1e-3 * std::abs(d1));
        const double ln = std::log(double(n));
        CHECK(std::abs(d1 - 2 / std::log(2.0) * ln * ln) <= 6 * ln * std::log(ln));
    }

    TEST_CASE("integer profile near the relaxed optimum")
    {
        const std::uint64_t n = 10000;
        const int t = alpha_data(n).alpha - 1;
        const auto kt = first_moment_threshold(n, t).k_threshold;
        ProfileSolution s = optimal_profile(n, kt, t);
        const double ln = std::log(double(n));
        CHECK(dbl(s.relaxed.value - s.objective) >= 0);
        CHECK(dbl(s.relaxed.value - s.objective) <= 0.1 * ln * ln * std::max(1.0, dbl(s.displacement)));
    }

    TEST_CASE("optimal profile mass sits on the top sizes")
    {
        const std::uint64_t n = 100000;
        const int t = alpha_data(n).alpha - 1;
        ProfileSolution s = optimal_profile(n, first_moment_threshold(n, t).k_threshold, t);
        std::uint64_t top = 0;
        for (int u = t - 4; u <= t; ++u)
            top += static_cast<std::uint64_t>(u) * s.profile.count(u);
        CHECK(double(n - top) / double(n) < 0.01);
    }

    TEST_CASE("k* bookkeeping")
    {
        for (std::uint64_t n : {1000u, 100000u, 1000000u})
            for (double eps : {0.01, 0.1, 0.3, 0.9}) {
                KStarResult r = kstar_and_gap(n, eps);
                const double nd = double(n);
                const auto p = std::floor(std::pow(nd, 1 - eps / 2)), q = std::floor(std::pow(nd, 1 - 0.9 * eps));
                const auto two = 2 * std::floor(std::pow(nd, 0.999));
                CHECK(std::abs(double(r.gap) - (p - q - two)) <= 2);
                CHECK(r.gap == r.k_1 - r.k_2);
                CHECK(r.k_star_feasible == (r.k_star >= 1 && double(r.k_star) * r.t >= nd));
            }
        KStarResult r = kstar_and_gap(1000000, 0.01);
        CHECK_FALSE(r.display_holds);
        CHECK_FALSE(r.crossover_log10_n.has_value());
        CHECK_THROWS_AS(kstar_and_gap(1000, 1.0), PreconditionError);
    }

    TEST_CASE("gap display crossover")
    {
        CHECK_FALSE(gap_display_crossover_log(0.002).has_value());
        CHECK_FALSE(gap_display_crossover_log(0.01).has_value());
        for (double eps : {0.001, 0.0005}) {
            auto x = gap_display_crossover_log(eps);
            REQUIRE(x.has_value());
            // Display divided by n^{1-eps}, as a function of x = ln n.
            auto g = [eps](double lx) {
                return std::exp(eps / 2 * lx) - 2 * std::exp((eps - 0.001) * lx) - std::exp(0.1 * eps * lx) - 1;
            };
            const double at = dbl(*x);
            CHECK(g(at * 0.99) < 0);
            CHECK(g(at * 1.01) > 0);
            CHECK(g(at * 2) > 0);
        }
    }

    TEST_CASE("tameness examples")
    {
        // All mass on alpha - 1: n = 19 * 526 with alpha = 20.
        const std::uint64_t n = 9994;
        REQUIRE(alpha_data(n).alpha == 20);
        std::vector<std::uint64_t> top(19, 0);
        top[18] = 526;
        TameCheck all_top = is_tame(Profile(top), n, default_gamma, 0.025);
        CHECK(all_top.tail_ok);
        // Undamped log2(x + 2) bounds the top share by 1/3, which a single-size profile exceeds.
        TameCheck undamped = is_tame(Profile(top), n, [](double x) { return std::log2(x + 2); }, 0.025);
        CHECK_FALSE(undamped.tail_ok);

        // Half the vertices in pairs: 2^{-18 gamma(18)} is far below 1/2.
        std::vector<std::uint64_t> half(19, 0);
        half[1] = 2508;
        half[18] = 262;
        REQUIRE(Profile(half).mass() == n);
        TameCheck low = is_tame(Profile(half), n, default_gamma, 0.025);
        CHECK_FALSE(low.tail_ok);
        CHECK(low.worst_u == 2);

        const std::uint64_t m = 10000;
        const int t = alpha_data(m).alpha - 1;
        ProfileSolution s = optimal_profile(m, first_moment_threshold(m, t).k_threshold, t);
        TameCheck at_threshold = is_tame(s.profile, m, default_gamma, 0.025);
        CHECK(at_threshold.tail_ok);
        CHECK(at_threshold.expectation_ok);
    }
}
