#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "oracles.hpp"
#include "urnlab/distributions.hpp"
#include "urnlab/errors.hpp"

using Catch::Approx;
using namespace urnlab;

TEST_CASE("p_star of each family", "[distributions]") {
    CHECK(p_star(BoxDistribution::uniform(4)) == 0.25);
    CHECK(p_star(BoxDistribution::geometric(0.3)) == 0.3);
    CHECK(p_star(BoxDistribution::custom({0.5, 0.3, 0.2})) == Approx(0.5).epsilon(1e-15));
    // unnormalized weights
    CHECK(p_star(BoxDistribution::custom({5.0, 3.0, 2.0})) == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("power_moment examples", "[distributions]") {
    CHECK(power_moment(BoxDistribution::uniform(10), 2) == Approx(0.01).epsilon(1e-14));
    CHECK(power_moment(BoxDistribution::custom({0.5, 0.5}), 3) == Approx(0.125).epsilon(1e-14));

    // Geometric(0.5), r = 1: the series sum_j (0.5 * 0.5^j)^2 to 30 terms
    const double series = oracle::geometric_power_series(0.5, 1, 30);
    CHECK(series == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(power_moment(BoxDistribution::geometric(0.5), 1) == Approx(series).epsilon(1e-14));
}

TEST_CASE("power_moment closed forms match direct summation", "[distributions][property]") {
    for (int r = 1; r <= 6; ++r) {
        for (std::uint64_t m : {1u, 2u, 7u, 100u, 12345u}) {
            const auto d = BoxDistribution::uniform(m);
            long double direct = 0.0L;
            for (std::uint64_t j = 0; j < m; ++j) {
                direct += std::pow(static_cast<long double>(d.probability(j)), r + 1);
            }
            CHECK(power_moment(d, r) == Approx(static_cast<double>(direct)).epsilon(1e-12));
        }
        for (double p : {0.9, 0.5, 0.1, 0.01, 0.001}) {
            // truncate once the remaining tail mass (1-p)^J < 1e-15
            const int terms = static_cast<int>(std::ceil(std::log(1e-15) / std::log1p(-p))) + 1;
            const double direct = oracle::geometric_power_series(p, r, terms);
            CHECK(power_moment(BoxDistribution::geometric(p), r) == Approx(direct).epsilon(1e-12));
        }
        const auto c = BoxDistribution::custom({3.0, 1.0, 4.0, 1.0, 5.0});
        double direct = 0.0;
        for (double w : {3.0, 1.0, 4.0, 1.0, 5.0}) {
            direct += std::pow(w / 14.0, r + 1);
        }
        CHECK(power_moment(c, r) == Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("p_star sandwiches the power moment", "[distributions][property]") {
    std::vector<BoxDistribution> dists = {
        BoxDistribution::uniform(1),          BoxDistribution::uniform(17),
        BoxDistribution::geometric(0.7),      BoxDistribution::geometric(1e-4),
        BoxDistribution::custom({1, 2, 3, 4}), BoxDistribution::custom({0.999, 0.001})};
    for (const auto& d : dists) {
        const double ps = p_star(d);
        for (int r = 1; r <= 6; ++r) {
            const double pm = power_moment(d, r);
            CHECK(pm <= std::pow(ps, r) * (1 + 1e-12));
            CHECK(pm >= std::pow(ps, r + 1) * (1 - 1e-12));
        }
    }
}

TEST_CASE("degenerate samplers always return urn 0", "[distributions][sampling]") {
    RandomStream rng(42);
    const auto one = BoxDistribution::uniform(1);
    const auto single = BoxDistribution::custom({1.0});
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(sample_box(one, rng) == 0);
        REQUIRE(sample_box(single, rng) == 0);
    }
}

TEST_CASE("Uniform(2) splits evenly over 10^6 draws", "[distributions][sampling]") {
    RandomStream rng(2024);
    const auto d = BoxDistribution::uniform(2);
    std::uint64_t zeros = 0;
    constexpr int kDraws = 1'000'000;
    for (int i = 0; i < kDraws; ++i) {
        zeros += sample_box(d, rng) == 0;
    }
    CHECK(std::abs(static_cast<double>(zeros) / kDraws - 0.5) <= 0.002);
}

TEST_CASE("empirical urn frequencies within 5 standard errors", "[distributions][sampling][property]") {
    constexpr int kDraws = 1'000'000;
    auto check = [](const BoxDistribution& d, std::uint64_t urns, std::uint64_t seed) {
        RandomStream rng(seed);
        std::vector<std::uint64_t> hits(urns + 1, 0);
        for (int i = 0; i < kDraws; ++i) {
            const auto u = sample_box(d, rng);
            ++hits[std::min<std::uint64_t>(u, urns)];
        }
        for (std::uint64_t j = 0; j < urns; ++j) {
            const double p = d.probability(j);
            const double se = std::sqrt(p * (1 - p) / kDraws);
            INFO(d.describe() << " urn " << j);
            CHECK(std::abs(static_cast<double>(hits[j]) / kDraws - p) <= 5 * se);
        }
    };
    check(BoxDistribution::uniform(7), 7, 1);
    check(BoxDistribution::geometric(0.3), 12, 2);
    check(BoxDistribution::custom({0.5, 0.3, 0.15, 0.05}), 4, 3);
}

TEST_CASE("invalid distributions are rejected", "[distributions][errors]") {
    CHECK_THROWS_AS(BoxDistribution::uniform(0), UsageError);
    CHECK_THROWS_AS(BoxDistribution::geometric(0.0), UsageError);
    CHECK_THROWS_AS(BoxDistribution::geometric(1.0), UsageError);
    CHECK_THROWS_AS(BoxDistribution::custom({}), UsageError);
    CHECK_THROWS_AS(BoxDistribution::custom({1.0, -1.0}), UsageError);
    CHECK_THROWS_AS(BoxDistribution::custom({1.0, 0.0}), UsageError);
    CHECK_THROWS_AS(BoxDistribution::custom({1.0, NAN}), UsageError);
    CHECK_THROWS_AS(BoxDistribution::custom({1.0, INFINITY}), UsageError);
}

TEST_CASE("custom weights normalize", "[distributions]") {
    const auto d = BoxDistribution::custom({2.0, 6.0});
    double total = 0.0;
    for (double w : d.weights()) total += w;
    CHECK(std::abs(total - 1.0) <= 1e-12);
    CHECK(d.probability(1) == Approx(0.75));
    CHECK(d.probability(2) == 0.0);
}

TEST_CASE("distribution spec strings", "[distributions][spec]") {
    const auto u = parse_distribution_spec("uniform:m=333333");
    CHECK(u.kind() == DistributionKind::Uniform);
    CHECK(u.urn_count() == 333333);

    const auto g = parse_distribution_spec("geometric:p=0.0000013");
    CHECK(g.kind() == DistributionKind::Geometric);
    CHECK(g.success_prob() == Approx(1.3e-6));

    const auto path = std::filesystem::temp_directory_path() / "urnlab_weights_test.txt";
    {
        std::ofstream out(path);
        out << "# skewed weights\n3\n\n1   # trailing comment\n  2\n";
    }
    const auto c = parse_distribution_spec("custom:@" + path.string());
    REQUIRE(c.kind() == DistributionKind::Custom);
    REQUIRE(c.weights().size() == 3);
    CHECK(c.probability(0) == Approx(0.5));
    std::filesystem::remove(path);

    CHECK_THROWS_AS(parse_distribution_spec("uniform"), UsageError);
    CHECK_THROWS_AS(parse_distribution_spec("uniform:m=abc"), UsageError);
    CHECK_THROWS_AS(parse_distribution_spec("uniform:n=3"), UsageError);
    CHECK_THROWS_AS(parse_distribution_spec("geometric:p=1.5"), UsageError);
    CHECK_THROWS_AS(parse_distribution_spec("poisson:l=2"), UsageError);
    CHECK_THROWS_AS(parse_distribution_spec("custom:@/nonexistent/weights"), UsageError);
}
