#pragma once

#include "cochromatic/exact_solver.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cochromatic {

/// Uniformly random ordered partition of [n] with a complete profile; parts listed
/// in non-increasing size.
OrderedPartition random_partition(int n, const Profile & profile, std::uint64_t seed);

/// Number of parts of `pi` meeting `s`. `s` must lie inside the covered vertices.
int z_composed(const VertexSet & s, const OrderedPartition & pi);

struct EventFlags {
    bool A = false;        // pi is a proper colouring
    bool A_co = false;     // every part is independent or a clique
    bool B = false;
    bool C = false;
    bool D = false;
    bool B_clique = false;
    bool C_clique = false;
    bool D_clique = false;
    bool B_co = false;     // B and B_clique
    bool C_co = false;
    bool D_co = false;
    std::uint64_t d_count = 0;          // sets counted by D
    std::uint64_t d_count_clique = 0;
    std::uint64_t d_threshold = 0;      // ceil(ln^3 n / 2)

    bool colouring_event() const noexcept { return A && B && C && D; }
    bool cocolouring_event() const noexcept { return A_co && B_co && C_co && D_co; }
};

/// Evaluates the structural events over all independent sets (and cliques) S
/// with u_star <= |S| <= alpha - 1. Requires pi complete on g and 1 <= u_star <= alpha - 1.
EventFlags evaluate_events(const Graph & g, const OrderedPartition & pi, int u_star, int alpha);

/// Whether no part of pi' with u_star <= |part| <= alpha - 1 breaks the
/// straddling rules against pi, and vice versa. Parts outside that size range
/// are unconstrained since no event looks at sets of those sizes.
bool is_relevant_pair(const OrderedPartition & pi, const OrderedPartition & pi_prime, int alpha, int u_star = 1);

enum class OverlapBand { scrambled, middle, similar };
std::string to_string(OverlapBand band);

struct PairClassification {
    std::vector<std::uint64_t> ell_u;  // index u-1: parts of size u identical in both
    std::uint64_t ell = 0;
    double lambda = 0.0;
    OverlapBand band = OverlapBand::scrambled;
    double c0 = 0.0;
};

/// lambda = sum_u ell_u u / n; scrambled when lambda < ln^{-3} n, similar when
/// lambda > 1 - n^{-c0}, middle otherwise (closed). Requires equal profiles.
PairClassification classify_pair(const OrderedPartition & pi, const OrderedPartition & pi_prime, std::uint64_t n, double c0);

/// Number of parts shared, as vertex sets, by two partitions.
std::uint64_t shared_parts(const OrderedPartition & pi, const OrderedPartition & pi_prime);

struct OverlapTally {
    std::uint64_t pairs = 0;
    std::uint64_t violations = 0;   // pairs breaking the joint inequality
    std::uint64_t tight = 0;        // pairs meeting it with equality
};

/// Exhaustive check, over all graphs on n vertices, of
/// #{G : pi cocolours G} = 2^k #{G : pi colours G} for a canonical pi, and of
/// #{G : pi, pi' cocolour G} <= 2^{2k - ell} #{G : pi, pi' colour G} for pairs.
struct Prop42Report {
    int n = 0;
    Profile profile;
    std::uint64_t k = 0;
    std::uint64_t graphs = 0;
    BigInt colouring_graphs;        // for the canonical pi
    BigInt cocolouring_graphs;
    bool equality_holds = false;
    std::string pair_scope;         // "all" or "canonical"
    std::map<std::uint64_t, OverlapTally> by_ell;
    bool inequality_holds = false;
};

/// Requires k_1 = 0, a complete profile and n <= 7. At n = 7 the pairs are
/// (canonical pi, every pi') to keep the run short.
Prop42Report prop42_oracle(int n, const Profile & profile);

/// Exact moments over all graphs and all ordered partitions with the profile (n <= 6).
/// Rationals are rendered as "p/q" in lowest terms.
struct SecondMomentReport {
    int n = 0;
    Profile profile;
    int u_star = 0;
    int alpha = 0;
    std::uint64_t graphs = 0;
    std::uint64_t partitions = 0;
    std::string mean_X, mean_Xco;                 // E[X], E[X^co] without conditioning
    std::string mean_Z, second_Z;                 // E[Z], E[Z^2]
    std::string mean_Zco, second_Zco;             // E[Z^co], E[(Z^co)^2]
    std::string ratio_Z, ratio_Zco;               // E[Z^2]/E[Z]^2 (empty when E[Z] = 0)
    std::string pz_bound;                         // E[Z^co]^2 / E[(Z^co)^2], 0 when E[Z^co] = 0
    std::string empirical_P;                      // P(Z^co > 0)
    std::string sum_all_pairs;                    // sum over all pairs of P(A^co_pi and A^co_pi')
    std::string sum_relevant_pairs;               // same over relevant pairs
    bool pz_below_empirical = false;
    bool relevant_sum_below_all = false;
    bool second_moment_below_relevant_sum = false;  // E[(Z^co)^2] <= sum over relevant pairs
    bool cocolouring_mean_within_2k = false;         // E[Z^co] <= 2^k E[Z]
    std::uint64_t irrelevant_positive_pairs = 0;      // pairs with positive joint probability yet not relevant
};

SecondMomentReport second_moment_ratio_tiny(int n, const Profile & profile, int u_star, int alpha);

} // namespace cochromatic
