#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "urnlab/asymptotics.hpp"
#include "urnlab/exact.hpp"

using Catch::Approx;
using namespace urnlab;

TEST_CASE("regime report: scaled uniform Poisson setup", "[asymptotics]") {
    // mu = n^3 / (6 m^2) for r = 2
    const auto rep = regime_report(BoxDistribution::uniform(333333), 10'000, 2);
    CHECK(rep.mu == Approx(1e12 / (6.0 * 333333.0 * 333333.0)).epsilon(1e-12));
    CHECK(rep.mu == Approx(1.50).epsilon(1e-3));
    CHECK(rep.classification == Regime::PoissonCandidate);
}

TEST_CASE("regime report: geometric Poisson sequence approaches mu = 2.25", "[asymptotics]") {
    double previous_gap = 1.0;
    for (double n : {1e4, 1e5, 1e6, 1e7}) {
        const double p = 6.0 * std::pow(n, -4.0 / 3.0);
        const auto rep = regime_report(BoxDistribution::geometric(p), static_cast<std::uint64_t>(n), 3);
        const double gap = std::abs(rep.mu - 2.25);
        CHECK(gap < previous_gap);
        previous_gap = gap;
    }
    CHECK(previous_gap < 1e-4);
    // a^r / ((r+1) (r+1)!) with a = 6, r = 3
    CHECK(216.0 / (4.0 * 24.0) == 2.25);
}

TEST_CASE("regime report: Uniform(n), r = 1 is a normal candidate", "[asymptotics]") {
    for (std::uint64_t n : {500u, 1000u, 100000u}) {
        const auto rep = regime_report(BoxDistribution::uniform(n), n, 1);
        CHECK(rep.scaled_moment == Approx(static_cast<double>(n)).epsilon(1e-12));
        CHECK(rep.classification == Regime::NormalCandidate);
    }
    CHECK(regime_report(BoxDistribution::uniform(499), 499, 1).classification == Regime::Indeterminate);
}

TEST_CASE("regime classification thresholds", "[asymptotics]") {
    CHECK(regime_report(BoxDistribution::uniform(25118), 10'000, 2).classification == Regime::NormalCandidate);
    CHECK(regime_report(BoxDistribution::uniform(25118), 10'000, 2).scaled_moment == Approx(1585.0).epsilon(1e-3));
    CHECK(regime_report(BoxDistribution::uniform(100), 100, 1).classification == Regime::Indeterminate);
    CHECK(classify(0.05, 50.0) == Regime::PoissonCandidate);
    CHECK(classify(0.0501, 10.0) == Regime::Indeterminate);
    CHECK(classify(3.0, 500.0) == Regime::NormalCandidate);
    CHECK(classify(0.01, 499.0) == Regime::Indeterminate);
}

TEST_CASE("regime report invariants", "[asymptotics][property]") {
    std::vector<BoxDistribution> dists = {BoxDistribution::uniform(7), BoxDistribution::uniform(100000),
                                          BoxDistribution::geometric(0.2), BoxDistribution::geometric(1e-5),
                                          BoxDistribution::custom({1, 2, 3})};
    for (const auto& d : dists) {
        for (std::uint64_t n : {1u, 10u, 1000u}) {
            for (std::uint64_t r = 1; r <= 5; ++r) {
                const auto rep = regime_report(d, n, r);
                CHECK(rep.mu >= 0.0);
                CHECK(rep.var_lower_asymptotic <= rep.var_upper);
                CHECK(rep.classification == classify(rep.n_p_star, rep.scaled_moment));
            }
        }
    }
}

TEST_CASE("uniform scaled moment is n^{r+1} / m^r", "[asymptotics][property]") {
    for (std::uint64_t m : {3u, 1000u, 10540926u}) {
        for (std::uint64_t n : {10u, 10000u}) {
            for (std::uint64_t r = 1; r <= 4; ++r) {
                const double expect = std::pow(static_cast<double>(n), static_cast<double>(r + 1)) /
                                      std::pow(static_cast<double>(m), static_cast<double>(r));
                CHECK(regime_report(BoxDistribution::uniform(m), n, r).scaled_moment ==
                      Approx(expect).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("classification survives an equal-law custom copy", "[asymptotics][property]") {
    for (std::uint64_t m : {5u, 50u, 400u}) {
        const auto u = BoxDistribution::uniform(m);
        const auto c = BoxDistribution::custom(std::vector<double>(m, 1.0 / static_cast<double>(m)));
        for (std::uint64_t n : {1u, 5u, 40u, 400u}) {
            for (std::uint64_t r = 1; r <= 3; ++r) {
                const auto a = regime_report(u, n, r);
                const auto b = regime_report(c, n, r);
                CHECK(a.classification == b.classification);
                CHECK(a.scaled_moment == Approx(b.scaled_moment).epsilon(1e-12));
                CHECK(a.n_p_star == Approx(b.n_p_star).epsilon(1e-12));
            }
        }
    }
    const auto g = BoxDistribution::geometric(0.5);
    std::vector<double> w;
    for (int j = 0; j < 60; ++j) w.push_back(g.probability(static_cast<UrnIndex>(j)));
    const auto gc = BoxDistribution::custom(w);
    CHECK(regime_report(g, 30, 2).classification == regime_report(gc, 30, 2).classification);
}

TEST_CASE("poisson_pmf values", "[asymptotics]") {
    CHECK(poisson_pmf(1.5, 0) == Approx(std::exp(-1.5)).epsilon(1e-14));
    CHECK(poisson_pmf(1.5, 0) == Approx(0.22313016014842982).epsilon(1e-14));
    CHECK(poisson_pmf(2.25, 2) == Approx(0.2667917871722191).epsilon(1e-13));
    CHECK(std::isfinite(poisson_pmf(1000.0, 1200)));
    for (double mu : {0.1, 1.5, 2.25, 30.0}) {
        double total = 0.0;
        double term = 1.0;
        for (std::uint64_t k = 0; k < 500 && (k < mu || term > 1e-15); ++k) {
            term = poisson_pmf(mu, k);
            total += term;
        }
        CHECK(total == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("geometric scaled moment closed form", "[asymptotics]") {
    CHECK(geometric_scaled_moment(0.5, 2, 1) == Approx(4.0 / 3.0).epsilon(1e-14));
    // p = n^{-(r+1)/r}: value tends to 1/(r+1)
    const double n = 1e6;
    CHECK(geometric_scaled_moment(std::pow(n, -1.5), 1'000'000, 2) == Approx(1.0 / 3.0).epsilon(1e-5));
    // single-atom limit
    CHECK(geometric_scaled_moment(1.0 - 1e-12, 10, 3) == Approx(1e4).epsilon(1e-9));
}

TEST_CASE("geometric scaled moment equals n^{r+1} times the power moment", "[asymptotics][property]") {
    for (double p : {1e-8, 1e-6, 1e-4, 1e-2, 0.1, 0.5, 0.9}) {
        for (std::uint64_t n : {10u, 1000u, 100000u, 1000000u}) {
            for (std::uint64_t r = 1; r <= 5; ++r) {
                const double direct = std::pow(static_cast<double>(n), static_cast<double>(r + 1)) *
                                      power_moment(BoxDistribution::geometric(p), static_cast<int>(r));
                CHECK(geometric_scaled_moment(p, n, r) == Approx(direct).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("full-urn intensity", "[asymptotics]") {
    // m = n^2 / 2, r = 2: n^2 E p / 2! = 1
    CHECK(full_urn_intensity(BoxDistribution::uniform(50'000'000), 10'000, 2) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("regime names round-trip", "[asymptotics]") {
    for (auto r : {Regime::PoissonCandidate, Regime::NormalCandidate, Regime::Indeterminate}) {
        CHECK(regime_from_string(to_string(r)) == r);
    }
}
