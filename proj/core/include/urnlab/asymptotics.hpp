#pragma once

#include <cstdint>
#include <string_view>

#include "urnlab/distributions.hpp"

namespace urnlab {

enum class Regime { PoissonCandidate, NormalCandidate, Indeterminate };

std::string_view to_string(Regime regime) noexcept;
Regime regime_from_string(std::string_view name);

/// Thresholds of the regime heuristic. A single (dist, n) pair cannot decide a
/// limit law; these only flag which limit theorem the instance resembles.
struct RegimeThresholds {
    double poisson_max_n_p_star = 0.05;
    double poisson_max_scaled_moment = 50.0;
    double normal_min_scaled_moment = 500.0;
};

/// Limit-regime diagnostics for one instance.
struct RegimeReport {
    double n_p_star = 0.0;              // n p*
    double scaled_moment = 0.0;         // n^{r+1} E p^r
    double mu = 0.0;                    // scaled_moment / (r+1)!
    double var_upper = 0.0;             // n^{r+1} E p^r / r!, valid for every n
    double var_lower_asymptotic = 0.0;  // e^{-2 n p*} / (r+1)! * scaled_moment, a liminf only
    Regime classification = Regime::Indeterminate;

    friend bool operator==(const RegimeReport&, const RegimeReport&) = default;
};

/// PoissonCandidate if n p* <= 0.05 and scaled_moment <= 50,
/// NormalCandidate if scaled_moment >= 500, Indeterminate otherwise.
Regime classify(double n_p_star, double scaled_moment, const RegimeThresholds& t = {});

RegimeReport regime_report(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r,
                           const RegimeThresholds& thresholds = {});

/// e^{-mu} mu^k / k!, evaluated in log space.
double poisson_pmf(double mu, std::uint64_t k);

/// (n p)^{r+1} / (1 - (1-p)^{r+1}), the scaled moment of Geometric(p).
double geometric_scaled_moment(double p, std::uint64_t n, std::uint64_t r);

/// Poisson intensity of the full-urn counts L_{n,r} and M_{n,r}:
/// n^r E p^{r-1} / r!. Requires r >= 2.
double full_urn_intensity(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r);

}  // namespace urnlab
