#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "urnlab/random.hpp"

namespace urnlab {

/// Index of an urn. 0-based everywhere.
using UrnIndex = std::uint64_t;

enum class DistributionKind { Uniform, Geometric, Custom };

/// A group of urns sharing one selection probability.
struct MassClass {
    double probability;
    std::uint64_t multiplicity;
};

/// The law by which every ball independently picks an urn.
///
/// Three families are supported:
///   - Uniform(m): p_j = 1/m on {0, ..., m-1}
///   - Geometric(p): p_j = p (1-p)^j on {0, 1, 2, ...}
///   - Custom(w): p_j = w_j / sum(w), finite support
///
/// Values are immutable after construction and safe to share across threads.
class BoxDistribution {
public:
    static BoxDistribution uniform(std::uint64_t urn_count);
    static BoxDistribution geometric(double success_prob);
    /// Weights are normalized; each must be finite and positive.
    static BoxDistribution custom(std::vector<double> weights);

    DistributionKind kind() const noexcept { return kind_; }

    /// Number of urns, or nullopt for the (infinite) geometric support.
    std::optional<std::uint64_t> support_size() const noexcept;

    /// Selection probability of `urn` (0 outside the support).
    double probability(UrnIndex urn) const noexcept;

    /// Uniform urn count. Only meaningful for Uniform.
    std::uint64_t urn_count() const noexcept { return urn_count_; }
    /// Geometric success probability. Only meaningful for Geometric.
    double success_prob() const noexcept { return success_prob_; }
    /// Normalized weights. Empty unless Custom.
    std::span<const double> weights() const noexcept { return weights_; }

    /// Distinct masses with multiplicities. Requires a finite support; urns with
    /// equal probability are grouped (Uniform yields a single class).
    std::vector<MassClass> mass_classes() const;

    /// Draw one urn index. See sample_box.
    UrnIndex sample(RandomStream& rng) const;

    /// Human-readable form, e.g. "uniform:m=10" or "custom:[0.5,0.5]".
    std::string describe() const;

private:
    BoxDistribution() = default;

    DistributionKind kind_ = DistributionKind::Uniform;
    std::uint64_t urn_count_ = 1;
    double success_prob_ = 0.0;
    double log_failure_ = 0.0;  // log(1 - p), cached for inverse-CDF sampling
    std::vector<double> weights_;
    std::vector<double> cumulative_;
};

/// Largest single-urn probability.
double p_star(const BoxDistribution& dist);

/// E p_X^r = sum_m p_m^{r+1}. Closed forms for Uniform and Geometric. r >= 0.
double power_moment(const BoxDistribution& dist, int r);

/// Draw one urn index.
///
/// Uniform uses an unbiased bounded integer draw; Geometric uses the exact
/// inverse CDF floor(log U / log(1-p)) with U in (0,1]; Custom uses binary
/// search over the cumulative weights.
UrnIndex sample_box(const BoxDistribution& dist, RandomStream& rng);

/// Parse `uniform:m=<int>`, `geometric:p=<real>` or `custom:@<path>`.
/// Throws UsageError on malformed input.
BoxDistribution parse_distribution_spec(std::string_view spec);

/// Read one weight per line. `#` starts a comment; blank lines are skipped.
std::vector<double> read_weights_file(const std::filesystem::path& path);

}  // namespace urnlab
