#pragma once

#include "cochromatic/log_real.hpp"
#include "cochromatic/profile.hpp"

#include <cstdint>
#include <optional>

namespace cochromatic {

/// 2 log2 n - 2 log2 log2 n + 2 log2(e/2) + 1, for n >= 3.
BigFloat alpha0(std::uint64_t n);

/// Expected number of independent t-sets in G(n, 1/2): C(n, t) 2^{-C(t,2)}.
LogReal mu(std::uint64_t n, std::uint64_t t);

struct AlphaData {
    std::uint64_t n = 0;
    BigFloat alpha0;
    int alpha = 0;               // floor(alpha0)
    LogReal mu_alpha;
    LogReal mu_alpha_minus_1;
    BigFloat exponent;           // ln mu_alpha / ln n
};

AlphaData alpha_data(std::uint64_t n);

struct WindowCheck {
    bool holds = false;
    bool lower_holds = false;    // mu_alpha >= n^{0.05 + eps}
    bool upper_holds = false;    // mu_alpha <= n^{1 - eps}
    AlphaData data;
};

/// n^{0.05+eps} <= mu_alpha <= n^{1-eps}, decided in log space. Requires 0 < eps < 0.45.
WindowCheck window_condition(std::uint64_t n, double eps);

struct FractionResult {
    std::uint64_t n_max = 0;
    std::uint64_t applicable = 0;
    std::uint64_t total = 0;     // number of n' in [3, n_max]
    double fraction = 0.0;
};

/// Fraction of 3 <= n' <= n_max for which window_condition(n', eps) holds.
///
/// Within a run of n' sharing the same alpha, the lower inequality switches from
/// false to true once and the upper one from true to false once, so each run is
/// resolved by bisection instead of visiting every n'.
FractionResult fraction_applicable(std::uint64_t n_max, double eps);

/// The two limiting fractions between which the applicable share oscillates:
/// (2^{-0.025} - 2^{-0.5}) / (1 - 2^{-0.5}) and (1 - 2^{-0.475}) / (1 - 2^{-0.5}).
std::pair<BigFloat, BigFloat> fraction_limit_constants();

enum class RandomGraphModel { half, gnm };

struct Expectation {
    LogReal ordered;
    LogReal unordered;  // ordered / prod_u k_u!
};

/// E[X_k]: P_k 2^{-f_k} in G(n,1/2), or P_k C(N - f_k, m) / C(N, m) in G(n, m).
/// `m` defaults to floor(N/2) for the G(n, m) model.
Expectation expected_colourings(std::uint64_t n, const Profile & profile, RandomGraphModel model = RandomGraphModel::half,
                                std::optional<std::uint64_t> m = std::nullopt);

/// ln P_k = ln n! - ln (n - mass)! - sum_u k_u ln u!.
BigFloat log_partition_count(std::uint64_t n, const Profile & profile);

/// E[X^co_k] = 2^k E[X_k] in G(n, 1/2); requires k_1 = 0.
Expectation expected_cocolourings(std::uint64_t n, const Profile & profile);

struct TransferRatio {
    LogReal exact;       // C(N - x, m) / C(N, m)
    LogReal asymptotic;  // 2^{-x} exp(-x^2 / n^2)
    bool exact_is_zero = false;
};

/// G(n, m) transfer ratio at p = 1/2 with m = floor(N/2).
TransferRatio gnm_transfer_ratio(std::uint64_t n, std::uint64_t x);

/// 2 exp(-t^2 / (2n)).
LogReal azuma_tail(std::uint64_t n, const BigFloat & t);

/// E[Z]^2 / E[Z^2]; throws PreconditionError when E[Z^2] < E[Z]^2.
LogReal paley_zygmund_bound(const LogReal & mean, const LogReal & second_moment);

} // namespace cochromatic
