#include "cochromatic/errors.hpp"
#include "cochromatic/exact_solver.hpp"
#include "cochromatic/moments.hpp"
#include "cochromatic/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace cochromatic;
using oracle::Rational;

namespace {
double ln_n(std::uint64_t n) { return std::log(static_cast<double>(n)); }

BigFloat as_big(const Rational & r)
{
    return BigFloat(numerator(r).str()) / BigFloat(denominator(r).str());
}
}

TEST_SUITE("moments")
{
    TEST_CASE("mu worked values")
    {
        CHECK(mu(37, 1).to_double() == doctest::Approx(37.0));
        CHECK(oracle::close(mu(16, 4).value(), Rational(1820, 64)));
        CHECK(mu(16, 4).to_double() == doctest::Approx(28.4375));
        CHECK_THROWS_AS(mu(3, 4), PreconditionError);
    }

    TEST_CASE("alpha data is internally consistent")
    {
        for (std::uint64_t n : {3u, 10u, 100u, 12345u, 1000000u}) {
            AlphaData a = alpha_data(n);
            CHECK(a.alpha == static_cast<int>(floor(a.alpha0).convert_to<double>()));
            CHECK(a.mu_alpha == mu(n, static_cast<std::uint64_t>(a.alpha)));
            CHECK(a.mu_alpha_minus_1 == mu(n, static_cast<std::uint64_t>(a.alpha - 1)));
        }
        const double d = (alpha0(1000000ull * 1000000ull) - alpha0(1000000)).convert_to<double>();
        const double expect = 2 * std::log2(1e6) - 2 * std::log2(2.0);
        CHECK(std::abs(d - expect) < 0.05);
    }

    TEST_CASE("finite-n shape of mu_alpha between 10^2 and 10^7")
    {
        // Measured offset (alpha0 - alpha) - ln mu_alpha / ln n lies in [-0.27, 0.05] here;
        // the leading Stirling correction -ln(2 pi alpha) / (2 ln n) accounts for most of it.
        CounterRng rng(2024);
        double lo = 1, hi = -1;
        for (int i = 0; i < 400; ++i) {
            const auto n = static_cast<std::uint64_t>(std::pow(10.0, 2 + 5 * rng.uniform()));
            AlphaData a = alpha_data(n);
            CHECK(a.mu_alpha >= LogReal::one());
            const double off = (a.alpha0 - a.alpha - a.exponent).convert_to<double>();
            lo = std::min(lo, off);
            hi = std::max(hi, off);
            const double l1 = a.mu_alpha_minus_1.log().convert_to<double>();
            const double rel = ln_n(n) + a.mu_alpha.log().convert_to<double>() - std::log(ln_n(n));
            CHECK(std::abs(l1 - rel) <= 3 + std::log(ln_n(n)));
        }
        CHECK(lo >= -0.3);
        CHECK(hi <= 0.05);
    }

    TEST_CASE("window condition near an alpha jump and mid-window")
    {
        // First n after alpha0 crosses an integer.
        std::uint64_t jump = 0;
        for (std::uint64_t n = 5000; n < 200000 && ! jump; ++n)
            if (alpha_data(n).alpha > alpha_data(n - 1).alpha)
                jump = n;
        REQUIRE(jump != 0);
        AlphaData a = alpha_data(jump);
        CHECK((a.alpha0 - a.alpha) < 0.01);
        // At this n the exponent sits near 0.27 rather than 0, so the lower bound binds only for larger eps.
        CHECK(a.exponent > 0.2);
        CHECK(a.exponent < 0.3);
        CHECK_FALSE(window_condition(jump, 0.25).lower_holds);
        CHECK_FALSE(window_condition(jump, 0.25).holds);
        CHECK(window_condition(jump, 0.1).lower_holds);

        std::uint64_t mid = 0;
        for (std::uint64_t n = jump; n < 2 * jump && ! mid; n += 7)
            if (std::abs(alpha_data(n).exponent.convert_to<double>() - 0.5) < 0.02)
                mid = n;
        REQUIRE(mid != 0);
        CHECK(window_condition(mid, 0.1).holds);
        CHECK_THROWS_AS(window_condition(mid, 0.45), PreconditionError);
        CHECK_THROWS_AS(window_condition(mid, 0.0), PreconditionError);
    }

    TEST_CASE("fraction by bisection equals a brute-force scan")
    {
        for (double eps : {0.001, 0.1, 0.3}) {
            const std::uint64_t n_max = 30000;
            std::uint64_t hits = 0;
            for (std::uint64_t n = 3; n <= n_max; ++n)
                hits += window_condition(n, eps).holds;
            FractionResult r = fraction_applicable(n_max, eps);
            CHECK(r.total == n_max - 2);
            CHECK(r.applicable == hits);
        }
    }

    TEST_CASE("fraction shrinks as eps grows but stays positive below 0.45")
    {
        // The window n^{0.05+eps} <= mu <= n^{1-eps} is only empty for eps > 0.475.
        double prev = 1;
        for (double eps : {0.001, 0.1, 0.2, 0.3, 0.4, 0.449}) {
            const double f = fraction_applicable(1000000, eps).fraction;
            CHECK(f <= prev);
            prev = f;
        }
        CHECK(prev > 0);
        CHECK(prev < 0.1);
    }

    TEST_CASE("limit constants")
    {
        auto [lo, hi] = fraction_limit_constants();
        CHECK(lo.convert_to<double>() == doctest::Approx(0.9413).epsilon(1e-4));
        CHECK(hi.convert_to<double>() == doctest::Approx(0.9578).epsilon(1e-4));
    }

    TEST_CASE("expectation worked values")
    {
        Expectation e = expected_colourings(4, Profile::parse("2:2"));
        CHECK(oracle::close(e.ordered.value(), Rational(3, 2)));
        CHECK(oracle::close(e.unordered.value(), Rational(3, 4)));
        for (std::uint64_t n : {1u, 5u, 30u}) {
            Expectation s = expected_colourings(n, Profile(std::vector<std::uint64_t>{n}));
            CHECK(oracle::close(s.ordered.value(), Rational(oracle::factorial(static_cast<int>(n)))));
        }
        Expectation g = expected_colourings(6, Profile::parse("3:2"), RandomGraphModel::gnm, 7);
        // P_k = 6!/(3! 3!) = 20 ordered partitions; N - f_k = 9.
        CHECK(oracle::close(g.ordered.value(), Rational(20 * 36, 6435)));
        CHECK(oracle::close(expected_cocolourings(4, Profile::parse("2:2")).ordered.value(), Rational(6)));
        CHECK_THROWS_AS(expected_cocolourings(4, Profile::parse("1:2,2:1")), PreconditionError);
        CHECK_THROWS_AS(expected_colourings(4, Profile::parse("3:2")), PreconditionError);
    }

    TEST_CASE("partial profiles count ordered partial partitions")
    {
        // n = 5, one class of size 2: 5!/(3! 2!) = 10 choices, each independent with probability 1/2.
        CHECK(oracle::close(expected_colourings(5, Profile::parse("2:1")).ordered.value(), Rational(5)));
        CHECK(oracle::close(exp(log_partition_count(5, Profile::parse("2:1"))), Rational(10)));
    }

    TEST_CASE("expectations equal exact means over all graphs")
    {
        for (int n = 1; n <= 5; ++n) {
            const int pairs = n * (n - 1) / 2;
            for (const auto & sizes : oracle::integer_partitions(n)) {
                Profile p = profile_from_sizes(sizes);
                BigInt col = 0, co = 0;
                oracle::for_each_graph(n, [&](const Graph & g) {
                    col += count_colourings_with_profile(g, p).ordered;
                    if (p.count(1) == 0)
                        co += count_cocolourings_with_profile(g, p).ordered;
                });
                const Rational graphs(BigInt(1) << pairs);
                CHECK(oracle::close(expected_colourings(static_cast<std::uint64_t>(n), p).ordered.value(), Rational(col) / graphs));
                if (p.count(1) == 0) {
                    Expectation ec = expected_cocolourings(static_cast<std::uint64_t>(n), p);
                    CHECK(oracle::close(ec.ordered.value(), Rational(co) / graphs));
                    const BigFloat diff = ec.ordered.log() - expected_colourings(static_cast<std::uint64_t>(n), p).ordered.log();
                    CHECK(abs(diff - p.classes() * ln2()) < BigFloat("1e-60"));
                }
            }
        }
    }

    TEST_CASE("expectations match sampled means at n = 6 and 7")
    {
        for (auto [n, text] : {std::pair{6, "2:3"}, std::pair{7, "3:1,2:2"}}) {
            Profile p = Profile::parse(text);
            const double expect = expected_colourings(static_cast<std::uint64_t>(n), p).ordered.to_double();
            double s = 0, s2 = 0;
            const int samples = 100000;
            for (int i = 0; i < samples; ++i) {
                Graph g = sample_gnp_half(n, derive_seed(41, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i)));
                const double x = count_colourings_with_profile(g, p).ordered.convert_to<double>();
                s += x;
                s2 += x * x;
            }
            const double mean = s / samples, se = std::sqrt((s2 / samples - mean * mean) / samples);
            CHECK(std::abs(mean - expect) <= 4 * se);
        }
    }

    TEST_CASE("G(n,m) transfer ratio")
    {
        TransferRatio zero = gnm_transfer_ratio(20, 0);
        CHECK(abs(zero.exact.log()) < BigFloat("1e-60"));
        CHECK(abs(zero.asymptotic.log()) < BigFloat("1e-60"));

        const std::uint64_t n = 12, pairs = 66, m = 33;
        TransferRatio last = gnm_transfer_ratio(n, pairs - m);
        CHECK_FALSE(last.exact_is_zero);
        CHECK(abs(last.exact.log() + log_binomial(pairs, m)) < BigFloat("1e-60"));
        CHECK(gnm_transfer_ratio(n, pairs - m + 1).exact_is_zero);

        for (std::uint64_t x = 1; x <= pairs - m; ++x)
            CHECK(gnm_transfer_ratio(n, x).exact < gnm_transfer_ratio(n, x - 1).exact);

        const std::uint64_t big_n = 10000;
        const auto x = static_cast<std::uint64_t>(std::floor(std::pow(1e4, 1.2)));
        TransferRatio r = gnm_transfer_ratio(big_n, x);
        CHECK(abs((r.exact.log() - r.asymptotic.log()) / r.exact.log()) < BigFloat("0.01"));

        // Relative log error vanishes along x = n^{1.2}; at x proportional to N it levels off instead.
        double prev = 1;
        for (std::uint64_t s : {100u, 1000u, 10000u, 100000u}) {
            TransferRatio q = gnm_transfer_ratio(s, static_cast<std::uint64_t>(std::floor(std::pow(double(s), 1.2))));
            const double err = abs((q.exact.log() - q.asymptotic.log()) / q.exact.log()).convert_to<double>();
            CHECK(err < prev / 10);
            prev = err;
        }
        TransferRatio fixed = gnm_transfer_ratio(30000, 30000ull * 29999 / 40);
        CHECK(abs((fixed.exact.log() - fixed.asymptotic.log()) / fixed.exact.log()) > BigFloat("1e-3"));
    }

    TEST_CASE("Azuma tail")
    {
        CHECK(azuma_tail(50, 0).to_double() == doctest::Approx(2.0));
        CHECK(azuma_tail(100, sqrt(200 * log(BigFloat(2)))).to_double() == doctest::Approx(1.0));
        CHECK(azuma_tail(10000, pow(BigFloat(10000), BigFloat("0.999"))).log10_magnitude() < -100);
    }

    TEST_CASE("Paley-Zygmund bound")
    {
        LogReal m = LogReal::from_double(3.5);
        CHECK(paley_zygmund_bound(m, m * m).to_double() == doctest::Approx(1.0));
        CHECK(paley_zygmund_bound(LogReal::one(), LogReal::from_double(4)).to_double() == doctest::Approx(0.25));
        CHECK_THROWS_AS(paley_zygmund_bound(LogReal::from_double(2), LogReal::from_double(3)), PreconditionError);
    }

    TEST_CASE("Paley-Zygmund below the exact probability at n = 4")
    {
        Profile p = Profile::parse("2:2");
        BigInt first = 0, second = 0, positive = 0;
        oracle::for_each_graph(4, [&](const Graph & g) {
            const BigInt z = count_cocolourings_with_profile(g, p).ordered;
            first += z;
            second += z * z;
            positive += z > 0;
        });
        const LogReal mean = LogReal::from_value(as_big(Rational(first, 64)));
        const LogReal sq = LogReal::from_value(as_big(Rational(second, 64)));
        CHECK(paley_zygmund_bound(mean, sq).value() <= as_big(Rational(positive, 64)));
    }
}
