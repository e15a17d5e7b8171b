#include "urnlab/asymptotics.hpp"

#include <cmath>
#include <string>

#include "urnlab/errors.hpp"

namespace urnlab {
namespace {

double factorial(std::uint64_t k) {
    double f = 1.0;
    for (std::uint64_t i = 2; i <= k; ++i) {
        f *= static_cast<double>(i);
    }
    return f;
}

}  // namespace

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::PoissonCandidate:
            return "PoissonCandidate";
        case Regime::NormalCandidate:
            return "NormalCandidate";
        case Regime::Indeterminate:
            return "Indeterminate";
    }
    return "Indeterminate";
}

Regime regime_from_string(std::string_view name) {
    if (name == "PoissonCandidate") return Regime::PoissonCandidate;
    if (name == "NormalCandidate") return Regime::NormalCandidate;
    if (name == "Indeterminate") return Regime::Indeterminate;
    throw UsageError("unknown regime '" + std::string(name) + "'");
}

Regime classify(double n_p_star, double scaled_moment, const RegimeThresholds& t) {
    if (n_p_star <= t.poisson_max_n_p_star && scaled_moment <= t.poisson_max_scaled_moment) {
        return Regime::PoissonCandidate;
    }
    if (scaled_moment >= t.normal_min_scaled_moment) {
        return Regime::NormalCandidate;
    }
    return Regime::Indeterminate;
}

RegimeReport regime_report(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r,
                           const RegimeThresholds& thresholds) {
    const double nd = static_cast<double>(n);
    RegimeReport rep;
    rep.n_p_star = nd * p_star(dist);
    if (dist.kind() == DistributionKind::Geometric) {
        rep.scaled_moment = geometric_scaled_moment(dist.success_prob(), n, r);
    } else {
        rep.scaled_moment = std::pow(nd, static_cast<double>(r + 1)) *
                            power_moment(dist, static_cast<int>(r));
    }
    rep.mu = rep.scaled_moment / factorial(r + 1);
    rep.var_upper = rep.scaled_moment / factorial(r);
    rep.var_lower_asymptotic = std::exp(-2.0 * rep.n_p_star) / factorial(r + 1) * rep.scaled_moment;
    rep.classification = classify(rep.n_p_star, rep.scaled_moment, thresholds);
    return rep;
}

double poisson_pmf(double mu, std::uint64_t k) {
    if (mu <= 0.0) {
        return k == 0 ? 1.0 : 0.0;
    }
    const double kd = static_cast<double>(k);
    return std::exp(kd * std::log(mu) - mu - std::lgamma(kd + 1.0));
}

double geometric_scaled_moment(double p, std::uint64_t n, std::uint64_t r) {
    const double e = static_cast<double>(r + 1);
    const double denom = -std::expm1(e * std::log1p(-p));
    return std::pow(static_cast<double>(n) * p, e) / denom;
}

double full_urn_intensity(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r) {
    if (r < 2) {
        throw UsageError("full-urn Poisson intensity needs r >= 2");
    }
    return std::pow(static_cast<double>(n), static_cast<double>(r)) *
           power_moment(dist, static_cast<int>(r - 1)) / factorial(r);
}

}  // namespace urnlab
