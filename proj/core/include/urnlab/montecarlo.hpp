#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "urnlab/distributions.hpp"
#include "urnlab/stats.hpp"

namespace urnlab {

/// Which per-trial statistics to aggregate.
struct StatisticSet {
    bool overflow = true;      // "V"
    bool full = false;         // "L"
    bool exactly_full = false; // "M"

    /// Parse a comma list such as "v,l,m" (case-insensitive).
    static StatisticSet parse(const std::string& list);
    std::string to_string() const;  // canonical "v,l,m" subset

    friend bool operator==(const StatisticSet&, const StatisticSet&) = default;
};

struct ExperimentConfig {
    BoxDistribution dist;
    std::uint64_t n = 1;
    std::uint64_t r = 1;
    std::uint64_t reps = 1;
    std::uint64_t seed = 0;
    StatisticSet collect;
    bool identity_checks = false;
    /// Worker threads; 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
    unsigned threads = 0;
    /// Upper limit on n * reps ball draws.
    std::uint64_t max_ball_draws = 1'000'000'000'000ULL;
};

/// Summaries keyed by statistic name: "V", "L", "M".
using ExperimentResult = std::map<std::string, EmpiricalSummary>;

/// Run `reps` independent trials.
///
/// Trial i draws from derive_stream(seed, i), so every trial is a pure function
/// of (config, i) and the integer histograms are merged order-insensitively:
/// the result is bit-identical for any thread count. With identity_checks each
/// trial also evaluates capacities r-1 and r+1 and throws IdentityViolation on
/// the first failing trial.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace urnlab
