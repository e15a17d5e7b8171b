#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace urnlab {

/// Empirical law of an integer statistic across replications.
struct EmpiricalSummary {
    std::map<std::int64_t, std::uint64_t> histogram;
    std::uint64_t reps = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased; 0 when reps < 2

    /// Build from a histogram; mean and variance are computed in key order so
    /// the result depends only on the histogram contents.
    static EmpiricalSummary from_histogram(std::map<std::int64_t, std::uint64_t> histogram);
    static EmpiricalSummary from_samples(std::span<const std::int64_t> samples);

    friend bool operator==(const EmpiricalSummary&, const EmpiricalSummary&) = default;
};

/// Significance levels with tabulated critical values.
enum class Level { Ten, One, Tenth };  // 10%, 1%, 0.1%

/// Upper quantile of the chi-square law: table for dof <= 30, Wilson-Hilferty beyond.
double chi_square_critical(std::uint64_t dof, Level level);

/// Asymptotic one-sample Kolmogorov-Smirnov critical value c(level) / sqrt(n).
double ks_critical(std::uint64_t n, Level level);

/// Total variation distance between the empirical law and Pois(mu).
///
/// Sums over 0..K where K covers the histogram and the Poisson support up to
/// tail mass 1e-12; the Poisson mass beyond K is added to the discrepancy.
double tv_distance_poisson(const EmpiricalSummary& summary, double mu);

/// Total variation distance between an empirical law and an explicit pmf.
double tv_distance(const EmpiricalSummary& summary, const std::map<std::uint64_t, double>& pmf);

struct ChiSquareResult {
    double statistic = 0.0;
    std::uint64_t dof = 0;
};

/// Pearson chi-square against Pois(mu). Cells are 0, 1, ..., with an open
/// right cell; cells are pooled from the right, then left to right, until
/// every expected count is at least 5. Needs reps >= 50; throws DegenerateFit
/// if fewer than two cells survive.
ChiSquareResult chi_square_poisson(const EmpiricalSummary& summary, double mu);

/// Standard normal CDF.
double normal_cdf(double x);

/// One-sample KS statistic of `samples` against N(0,1). Callers standardize
/// first. Needs at least 100 samples.
double ks_normal(std::span<const double> samples);

/// Histogram values standardized by the summary's mean and standard deviation.
std::vector<double> standardized_samples(const EmpiricalSummary& summary);

}  // namespace urnlab
