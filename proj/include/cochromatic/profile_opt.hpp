#pragma once

#include "cochromatic/log_real.hpp"
#include "cochromatic/profile.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cochromatic {

/// ln d_u with d_u = 2^{C(u,2)} u!.
BigFloat log_d(int u);

/// Expected number of unordered t-bounded k-colourings of G(n, 1/2), summed
/// over all complete profiles without enumerating them.
///
/// Zero when k > n or n > k t (`feasible` is false then).
struct ExpectationValue {
    LogReal value;
    bool feasible = true;
};
ExpectationValue exact_E_nkt(std::uint64_t n, std::uint64_t k, int t);

/// Streams E_{n,c,t} for c = 1, 2, ... using the recurrence
/// row_c[v] = (1/c) sum_u row_{c-1}[v-u] / d_u, where row_c[v] is the
/// coefficient of x^v in W(x)^c / c! and W(x) = sum_{u<=t} x^u / d_u.
class ColouringExpectationTable {
public:
    ColouringExpectationTable(std::uint64_t n, int t);

    /// Advances to the next class count and returns E_{n,c,t}.
    LogReal next();
    std::uint64_t classes() const noexcept { return c_; }

private:
    std::uint64_t n_;
    int t_;
    std::uint64_t c_ = 0;
    BigFloat log_n_factorial_;
    std::vector<BigFloat> inverse_d_;
    std::vector<BigFloat> row_;
    std::vector<BigFloat> scratch_;
};

/// Stationary point of the relaxed profile problem: k_u = e^{a + b u} / d_u
/// with sum k_u = k and sum u k_u = n.
struct RelaxedOptimum {
    BigFloat a;
    BigFloat b;
    std::vector<BigFloat> k_u;   // index u-1
    BigFloat value;              // L0
    BigFloat variance;           // of the size distribution proportional to k_u
    /// Saddle-point estimate of ln E_{n,k,t}:
    /// ln n! - ln k! + k ln W(e^b) - b n - ln(2 pi k variance) / 2.
    BigFloat saddle_log_E;
    int iterations = 0;
};

/// Solves the relaxed problem for real k with 1 <= n/k <= t. `b_start` seeds Newton.
/// At n/k = 1 or n/k = t only one size fits; a and b are NaN there.
RelaxedOptimum solve_relaxed_profile(std::uint64_t n, const BigFloat & k, int t, const BigFloat & b_start = BigFloat(0));

enum class L0Mode { relaxed, integer };

/// sup over t-bounded profiles of n ln n - n + k - sum_u k_u ln(k_u d_u).
/// Integer mode evaluates the objective at optimal_profile(n, k, t).
BigFloat L0(std::uint64_t n, const BigFloat & k, int t, L0Mode mode = L0Mode::relaxed);

/// The objective n ln n - n + k - sum k_u ln(k_u d_u) at an integer profile (0 ln 0 = 0).
BigFloat profile_objective(std::uint64_t n, const Profile & profile);

/// l0_bisection bisects on L0 and then settles the last step with the
/// saddle-point estimate of ln E; l0_raw stops at min{k : L0 >= 0}.
enum class ThresholdMethod { automatic, exact_dp, l0_bisection, l0_raw };

struct ThresholdResult {
    std::uint64_t n = 0;
    int t = 0;
    std::uint64_t k_threshold = 0;
    ThresholdMethod method = ThresholdMethod::exact_dp;
    std::optional<BigFloat> L0_at;       // L0(n, k_t, t)
    std::optional<BigFloat> L0_below;    // L0(n, k_t - 1, t); -inf below the feasible range
    std::optional<std::uint64_t> k_raw;  // min{k : L0 >= 0} (L0 methods)
    std::optional<BigFloat> saddle_log_E_at;
    std::optional<BigFloat> saddle_log_E_below;
    std::optional<BigFloat> log_E_at;    // exact method only
    std::optional<BigFloat> log_E_below;
    bool monotone_in_bracket = true;     // exact method: E non-decreasing on [ceil(n/t), k_t]
};

/// k_t(n) = min{k : E_{n,k,t} >= 1}. Automatic picks the exact DP for n <= 3000.
ThresholdResult first_moment_threshold(std::uint64_t n, int t, ThresholdMethod method = ThresholdMethod::automatic);

std::string to_string(ThresholdMethod method);

/// Central difference (L0(k+h) - L0(k-h)) / 2h of the relaxed L0.
BigFloat dL0_dk(std::uint64_t n, const BigFloat & k, int t, const BigFloat & h = BigFloat(1));

/// Exact derivative of the relaxed L0 in k, equal to -a at the stationary point.
BigFloat dL0_dk_envelope(std::uint64_t n, const BigFloat & k, int t);

struct KStarResult {
    std::uint64_t n = 0;
    double eps = 0.0;
    int t = 0;                         // alpha - 1
    std::uint64_t k_threshold = 0;     // k_{alpha-1}(n)
    std::int64_t k_star = 0;           // floor(k_threshold - n^{1-eps/2})
    std::int64_t k_1 = 0;              // floor(k_threshold - n^{1-0.9 eps})
    std::int64_t k_2 = 0;              // floor(k_star + 2 n^{0.999})
    std::int64_t gap = 0;              // k_1 - k_2
    bool window_holds = false;
    bool k_star_feasible = false;      // an (alpha-1)-bounded k*-profile exists: t k* >= n, k* >= 1
    bool display_holds = false;        // n^{1-eps/2} - 2n^{0.999} - n^{1-0.9eps} >= n^{1-eps}
    bool gap_bound_holds = false;      // gap >= n^{1-eps} - 2 (rounding)
    std::optional<double> crossover_log10_n;  // least n with display_holds, as log10
};

/// k*, k_1, k_2 and their gap at one n. Needs 0 < eps < 1.
KStarResult kstar_and_gap(std::uint64_t n, double eps, ThresholdMethod method = ThresholdMethod::automatic);

/// Least real ln n beyond which the gap display holds; empty when eps >= 0.002,
/// where 2 n^{0.999} outgrows n^{1-eps/2}.
std::optional<BigFloat> gap_display_crossover_log(double eps);

struct ProfileSolution {
    Profile profile;
    RelaxedOptimum relaxed;
    BigFloat objective;          // profile_objective at the integer profile
    BigFloat displacement;       // sum_u |k_u(int) - k_u(relaxed)|
    int repair_moves = 0;
};

/// Integer complete t-bounded k-profile near the relaxed optimiser: round to
/// nearest, fix the class count, then shift classes between adjacent sizes
/// until the mass is n, each move chosen greedily by objective.
ProfileSolution optimal_profile(std::uint64_t n, std::uint64_t k, int t);

using TailFunction = std::function<double(double)>;

/// Default tail function for tameness checks.
double default_gamma(double x);

struct TameCheck {
    bool tail_ok = false;
    bool expectation_ok = false;
    int worst_u = 0;               // size with the largest u k_u / n relative to its bound
    BigFloat log_expectation;      // ln E_m[unordered X_k]
};

/// Tail bound u k_u / n < 2^{-(alpha-u) gamma(alpha-u)} for 1 <= u <= alpha-1, and
/// ln E_m[unordered X_k] >= -n^{1-c}.
TameCheck is_tame(const Profile & profile, std::uint64_t n, const TailFunction & gamma, double c);

} // namespace cochromatic
