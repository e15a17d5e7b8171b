#pragma once

#include <cstdint>
#include <map>

#include "urnlab/distributions.hpp"

namespace urnlab {

/// Work limits for the exact routines. Exceeding one throws BudgetExceeded.
struct ExactBudget {
    /// (distinct urn masses) x n binomial-tail evaluations for the mean formulas.
    std::uint64_t tail_evaluations = 1'000'000'000;
    /// Count vectors visited by exact_distribution.
    std::uint64_t compositions = 10'000'000;
    /// Ball sequences visited by sequence_distribution and nod_check.
    std::uint64_t sequences = 10'000'000;
};

/// Exact law of the overflow V_{n,r} on a small instance.
struct ExactDistribution {
    std::uint64_t n = 0;
    std::uint64_t r = 0;
    std::map<std::uint64_t, double> pmf;  // overflow value -> probability, positive entries only
    double mean = 0.0;
    double variance = 0.0;

    friend bool operator==(const ExactDistribution&, const ExactDistribution&) = default;
};

/// P(Bin(k, p) >= r).
///
/// The pmf is built outward from the mode by the ratio recurrence
/// w_{i+1}/w_i = (k-i)/(i+1) * p/q with the mode weight fixed at 1, then
/// renormalized, so no factorials or tiny powers are formed. Linear in the
/// width of the non-negligible window.
double binomial_tail(std::uint64_t k, double p, std::uint64_t r);

/// P(Bin(k, p) = i), same construction as binomial_tail.
double binomial_pmf(std::uint64_t k, double p, std::uint64_t i);

/// (k p)^r / r!, the upper bound on P(Bin(k, p) >= r).
double tail_bound(std::uint64_t k, double p, std::uint64_t r);

/// E V_{n,r} = sum_m p_m sum_{k=1}^{n} P(Bin(k-1, p_m) >= r).
///
/// The inner sum runs the tail recurrence
///   P(B_{k} >= s) = p P(B_{k-1} >= s-1) + q P(B_{k-1} >= s)
/// for s = 1..r, which only adds non-negative terms. Urns of equal mass are
/// evaluated once. Geometric supports are cut once a rigorous bound on the
/// remaining contribution drops below 1e-14 of the accumulated sum.
double exact_mean_overflow(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r,
                           const ExactBudget& budget = {});

/// E V_{n,r} = n - sum_m E min(Bin(n, p_m), r), the per-urn retention view.
double exact_mean_via_counts(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r,
                             const ExactBudget& budget = {});

/// Exact pmf of V by enumerating every count vector with multinomial weights.
/// Needs a finite support.
ExactDistribution exact_distribution(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r,
                                     const ExactBudget& budget = {});

/// Exact pmf of V by enumerating every ordered ball sequence and applying the
/// streaming overflow rule. Independent of the count-vector route.
ExactDistribution sequence_distribution(const BoxDistribution& dist, std::uint64_t n,
                                        std::uint64_t r, const ExactBudget& budget = {});

struct NodResult {
    double joint = 0.0;    // P(N_k(m1) >= x1, N_l(m2) >= x2)
    double product = 0.0;  // P(N_k(m1) >= x1) P(N_l(m2) >= x2)
    bool holds = false;    // joint <= product + 1e-12
};

/// Check negative orthant dependence of running urn counts by exhaustive
/// enumeration of the first l-1 balls. N_k(m) counts balls 1..k-1 landing in m.
/// Requires m1 != m2 within the support and 1 <= k <= l <= n + 1.
NodResult nod_check(const BoxDistribution& dist, std::uint64_t n, std::uint64_t k, std::uint64_t l,
                    UrnIndex m1, UrnIndex m2, std::uint64_t x1, std::uint64_t x2,
                    const ExactBudget& budget = {});

}  // namespace urnlab
