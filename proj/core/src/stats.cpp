#include "urnlab/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "urnlab/asymptotics.hpp"
#include "urnlab/errors.hpp"

namespace urnlab {
namespace {

// chi2.ppf(level, dof) for dof = 1..30 at 0.90, 0.99, 0.999.
constexpr std::array<double, 30> kChi2_90 = {
    2.7055,  4.6052,  6.2514,  7.7794,  9.2364,  10.6446, 12.0170, 13.3616, 14.6837, 15.9872,
    17.2750, 18.5493, 19.8119, 21.0641, 22.3071, 23.5418, 24.7690, 25.9894, 27.2036, 28.4120,
    29.6151, 30.8133, 32.0069, 33.1962, 34.3816, 35.5632, 36.7412, 37.9159, 39.0875, 40.2560};
constexpr std::array<double, 30> kChi2_99 = {
    6.6349,  9.2103,  11.3449, 13.2767, 15.0863, 16.8119, 18.4753, 20.0902, 21.6660, 23.2093,
    24.7250, 26.2170, 27.6882, 29.1412, 30.5779, 31.9999, 33.4087, 34.8053, 36.1909, 37.5662,
    38.9322, 40.2894, 41.6384, 42.9798, 44.3141, 45.6417, 46.9629, 48.2782, 49.5879, 50.8922};
constexpr std::array<double, 30> kChi2_999 = {
    10.8276, 13.8155, 16.2662, 18.4668, 20.5150, 22.4577, 24.3219, 26.1245, 27.8772, 29.5883,
    31.2641, 32.9095, 34.5282, 36.1233, 37.6973, 39.2524, 40.7902, 42.3124, 43.8202, 45.3147,
    46.7970, 48.2679, 49.7282, 51.1786, 52.6197, 54.0520, 55.4760, 56.8923, 58.3012, 59.7031};

double normal_upper_quantile(Level level) {
    switch (level) {
        case Level::Ten: return 1.2815516;
        case Level::One: return 2.3263479;
        case Level::Tenth: return 3.0902323;
    }
    return 0.0;
}

// Smallest K with P(Pois(mu) > K) < 1e-12, together with P(Pois(mu) <= K).
std::uint64_t poisson_cutoff(double mu) {
    double cdf = 0.0;
    std::uint64_t k = 0;
    while (true) {
        cdf += poisson_pmf(mu, k);
        if (static_cast<double>(k) >= mu && 1.0 - cdf < 1e-12) {
            return k;
        }
        ++k;
    }
}

struct Cell {
    double expected;
    double observed;
};

}  // namespace

EmpiricalSummary EmpiricalSummary::from_histogram(std::map<std::int64_t, std::uint64_t> histogram) {
    EmpiricalSummary s;
    s.histogram = std::move(histogram);
    for (auto [v, c] : s.histogram) {
        s.reps += c;
    }
    if (s.reps == 0) {
        return s;
    }
    const double n = static_cast<double>(s.reps);
    double sum = 0.0;
    for (auto [v, c] : s.histogram) {
        sum += static_cast<double>(v) * static_cast<double>(c);
    }
    s.mean = sum / n;
    if (s.reps > 1) {
        double ss = 0.0;
        for (auto [v, c] : s.histogram) {
            const double d = static_cast<double>(v) - s.mean;
            ss += d * d * static_cast<double>(c);
        }
        s.variance = ss / (n - 1.0);
    }
    return s;
}

EmpiricalSummary EmpiricalSummary::from_samples(std::span<const std::int64_t> samples) {
    std::map<std::int64_t, std::uint64_t> hist;
    for (auto v : samples) {
        ++hist[v];
    }
    return from_histogram(std::move(hist));
}

double chi_square_critical(std::uint64_t dof, Level level) {
    if (dof == 0) {
        throw UsageError("chi-square quantile needs dof >= 1");
    }
    if (dof <= 30) {
        switch (level) {
            case Level::Ten: return kChi2_90[dof - 1];
            case Level::One: return kChi2_99[dof - 1];
            case Level::Tenth: return kChi2_999[dof - 1];
        }
    }
    const double k = static_cast<double>(dof);
    const double h = 2.0 / (9.0 * k);
    const double base = 1.0 - h + normal_upper_quantile(level) * std::sqrt(h);
    return k * base * base * base;
}

double ks_critical(std::uint64_t n, Level level) {
    double c = 0.0;
    switch (level) {
        case Level::Ten: c = 1.2238; break;
        case Level::One: c = 1.6276; break;
        case Level::Tenth: c = 1.9495; break;
    }
    return c / std::sqrt(static_cast<double>(n));
}

double tv_distance_poisson(const EmpiricalSummary& summary, double mu) {
    if (summary.reps == 0) {
        throw UsageError("total variation needs at least one replication");
    }
    const double n = static_cast<double>(summary.reps);
    std::uint64_t top = poisson_cutoff(mu);
    if (!summary.histogram.empty() && summary.histogram.rbegin()->first > 0) {
        top = std::max<std::uint64_t>(top, static_cast<std::uint64_t>(summary.histogram.rbegin()->first));
    }
    double discrepancy = 0.0;
    double covered = 0.0;
    for (auto [v, c] : summary.histogram) {
        if (v < 0) {
            discrepancy += static_cast<double>(c) / n;
        }
    }
    for (std::uint64_t k = 0; k <= top; ++k) {
        const double pk = poisson_pmf(mu, k);
        covered += pk;
        const auto it = summary.histogram.find(static_cast<std::int64_t>(k));
        const double ek = it == summary.histogram.end() ? 0.0 : static_cast<double>(it->second) / n;
        discrepancy += std::abs(ek - pk);
    }
    discrepancy += std::max(0.0, 1.0 - covered);
    return 0.5 * discrepancy;
}

double tv_distance(const EmpiricalSummary& summary, const std::map<std::uint64_t, double>& pmf) {
    if (summary.reps == 0) {
        throw UsageError("total variation needs at least one replication");
    }
    const double n = static_cast<double>(summary.reps);
    double discrepancy = 0.0;
    for (auto [v, c] : summary.histogram) {
        const double ek = static_cast<double>(c) / n;
        double pk = 0.0;
        if (v >= 0) {
            if (auto it = pmf.find(static_cast<std::uint64_t>(v)); it != pmf.end()) {
                pk = it->second;
            }
        }
        discrepancy += std::abs(ek - pk);
    }
    for (auto [v, pk] : pmf) {
        if (!summary.histogram.contains(static_cast<std::int64_t>(v))) {
            discrepancy += pk;
        }
    }
    return 0.5 * discrepancy;
}

ChiSquareResult chi_square_poisson(const EmpiricalSummary& summary, double mu) {
    if (summary.reps < 50) {
        throw UsageError("chi-square fit needs at least 50 replications");
    }
    const double n = static_cast<double>(summary.reps);
    std::uint64_t top = poisson_cutoff(mu);
    if (!summary.histogram.empty() && summary.histogram.rbegin()->first > 0) {
        top = std::max<std::uint64_t>(top, static_cast<std::uint64_t>(summary.histogram.rbegin()->first));
    }
    // cells 0..top-1 are points, cell `top` is [top, inf)
    std::vector<Cell> cells(top + 1, Cell{0.0, 0.0});
    double covered = 0.0;
    for (std::uint64_t k = 0; k < top; ++k) {
        const double pk = poisson_pmf(mu, k);
        covered += pk;
        cells[k].expected = pk * n;
    }
    cells[top].expected = std::max(0.0, 1.0 - covered) * n;
    for (auto [v, c] : summary.histogram) {
        const auto idx = v < 0 ? 0 : std::min<std::uint64_t>(static_cast<std::uint64_t>(v), top);
        cells[idx].observed += static_cast<double>(c);
    }

    while (cells.size() > 1 && cells.back().expected < 5.0) {
        auto last = cells.back();
        cells.pop_back();
        cells.back().expected += last.expected;
        cells.back().observed += last.observed;
    }
    std::vector<Cell> pooled;
    Cell acc{0.0, 0.0};
    for (const auto& c : cells) {
        acc.expected += c.expected;
        acc.observed += c.observed;
        if (acc.expected >= 5.0) {
            pooled.push_back(acc);
            acc = Cell{0.0, 0.0};
        }
    }
    if (acc.expected > 0.0 || acc.observed > 0.0) {
        if (pooled.empty()) {
            pooled.push_back(acc);
        } else {
            pooled.back().expected += acc.expected;
            pooled.back().observed += acc.observed;
        }
    }
    if (pooled.size() < 2) {
        throw DegenerateFit("degenerate fit: fewer than two cells after pooling");
    }
    ChiSquareResult res;
    for (const auto& c : pooled) {
        const double d = c.observed - c.expected;
        res.statistic += d * d / c.expected;
    }
    res.dof = pooled.size() - 1;
    return res;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double ks_normal(std::span<const double> samples) {
    if (samples.size() < 100) {
        throw UsageError("KS statistic needs at least 100 samples");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = normal_cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

std::vector<double> standardized_samples(const EmpiricalSummary& summary) {
    const double sd = std::sqrt(summary.variance);
    std::vector<double> out;
    out.reserve(summary.reps);
    for (auto [v, c] : summary.histogram) {
        const double z = sd > 0.0 ? (static_cast<double>(v) - summary.mean) / sd : 0.0;
        out.insert(out.end(), c, z);
    }
    return out;
}

}  // namespace urnlab
