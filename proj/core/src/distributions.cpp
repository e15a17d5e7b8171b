#include "urnlab/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "urnlab/errors.hpp"

namespace urnlab {

BoxDistribution BoxDistribution::uniform(std::uint64_t urn_count) {
    if (urn_count == 0) {
        throw UsageError("uniform distribution needs at least one urn");
    }
    BoxDistribution d;
    d.kind_ = DistributionKind::Uniform;
    d.urn_count_ = urn_count;
    return d;
}

BoxDistribution BoxDistribution::geometric(double success_prob) {
    if (!(success_prob > 0.0 && success_prob < 1.0)) {
        throw UsageError("geometric success probability must lie in (0, 1)");
    }
    BoxDistribution d;
    d.kind_ = DistributionKind::Geometric;
    d.success_prob_ = success_prob;
    d.log_failure_ = std::log1p(-success_prob);
    return d;
}

BoxDistribution BoxDistribution::custom(std::vector<double> weights) {
    if (weights.empty()) {
        throw UsageError("custom distribution needs at least one weight");
    }
    for (double w : weights) {
        if (!std::isfinite(w) || w <= 0.0) {
            throw UsageError("custom weights must be finite and positive");
        }
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!std::isfinite(total)) {
        throw UsageError("custom weights sum to a non-finite value");
    }
    BoxDistribution d;
    d.kind_ = DistributionKind::Custom;
    d.urn_count_ = weights.size();
    d.cumulative_.reserve(weights.size());
    double running = 0.0;
    for (double& w : weights) {
        w /= total;
        running += w;
        d.cumulative_.push_back(running);
    }
    d.weights_ = std::move(weights);
    return d;
}

std::optional<std::uint64_t> BoxDistribution::support_size() const noexcept {
    if (kind_ == DistributionKind::Geometric) {
        return std::nullopt;
    }
    return urn_count_;
}

double BoxDistribution::probability(UrnIndex urn) const noexcept {
    switch (kind_) {
        case DistributionKind::Uniform:
            return urn < urn_count_ ? 1.0 / static_cast<double>(urn_count_) : 0.0;
        case DistributionKind::Geometric:
            return success_prob_ * std::exp(static_cast<double>(urn) * log_failure_);
        case DistributionKind::Custom:
            return urn < weights_.size() ? weights_[urn] : 0.0;
    }
    return 0.0;
}

std::vector<MassClass> BoxDistribution::mass_classes() const {
    switch (kind_) {
        case DistributionKind::Uniform:
            return {MassClass{1.0 / static_cast<double>(urn_count_), urn_count_}};
        case DistributionKind::Geometric:
            throw UsageError("geometric distribution has infinite support");
        case DistributionKind::Custom: {
            std::map<double, std::uint64_t> grouped;
            for (double w : weights_) {
                ++grouped[w];
            }
            std::vector<MassClass> classes;
            classes.reserve(grouped.size());
            for (auto [p, count] : grouped) {
                classes.push_back({p, count});
            }
            return classes;
        }
    }
    return {};
}

std::string BoxDistribution::describe() const {
    std::ostringstream out;
    out.precision(17);
    switch (kind_) {
        case DistributionKind::Uniform:
            out << "uniform:m=" << urn_count_;
            break;
        case DistributionKind::Geometric:
            out << "geometric:p=" << success_prob_;
            break;
        case DistributionKind::Custom:
            out << "custom:[";
            for (std::size_t i = 0; i < weights_.size(); ++i) {
                out << (i ? "," : "") << weights_[i];
            }
            out << "]";
            break;
    }
    return out.str();
}

double p_star(const BoxDistribution& dist) {
    switch (dist.kind()) {
        case DistributionKind::Uniform:
            return 1.0 / static_cast<double>(dist.urn_count());
        case DistributionKind::Geometric:
            return dist.success_prob();
        case DistributionKind::Custom: {
            auto w = dist.weights();
            return *std::max_element(w.begin(), w.end());
        }
    }
    return 0.0;
}

double power_moment(const BoxDistribution& dist, int r) {
    if (r < 0) {
        throw UsageError("power moment order must be non-negative");
    }
    switch (dist.kind()) {
        case DistributionKind::Uniform:
            return std::pow(static_cast<double>(dist.urn_count()), -r);
        case DistributionKind::Geometric: {
            // p^{r+1} / (1 - (1-p)^{r+1}), denominator via expm1 for small p
            const double p = dist.success_prob();
            const double denom = -std::expm1((r + 1) * std::log1p(-p));
            return std::pow(p, r + 1) / denom;
        }
        case DistributionKind::Custom: {
            double sum = 0.0;
            for (double w : dist.weights()) {
                sum += std::pow(w, r + 1);
            }
            return sum;
        }
    }
    return 0.0;
}

UrnIndex BoxDistribution::sample(RandomStream& rng) const {
    switch (kind_) {
        case DistributionKind::Uniform:
            return uniform_below(rng, urn_count_);
        case DistributionKind::Geometric: {
            const double u = 1.0 - unit_uniform(rng);  // (0, 1]
            return static_cast<UrnIndex>(std::floor(std::log(u) / log_failure_));
        }
        case DistributionKind::Custom: {
            const double u = unit_uniform(rng) * cumulative_.back();
            auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
            if (it == cumulative_.end()) {
                --it;
            }
            return static_cast<UrnIndex>(it - cumulative_.begin());
        }
    }
    return 0;
}

UrnIndex sample_box(const BoxDistribution& dist, RandomStream& rng) {
    return dist.sample(rng);
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
    text = trim(text);
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return value;
}

std::string_view expect_key(std::string_view body, std::string_view key, std::string_view spec) {
    if (body.substr(0, key.size()) != key) {
        throw UsageError("malformed distribution spec '" + std::string(spec) + "'");
    }
    return body.substr(key.size());
}

}  // namespace

BoxDistribution parse_distribution_spec(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw UsageError("distribution spec needs the form <kind>:<params>, got '" + std::string(spec) + "'");
    }
    const auto kind = spec.substr(0, colon);
    const auto body = spec.substr(colon + 1);
    if (kind == "uniform") {
        return BoxDistribution::uniform(
            parse_number<std::uint64_t>(expect_key(body, "m=", spec), "urn count"));
    }
    if (kind == "geometric") {
        return BoxDistribution::geometric(
            parse_number<double>(expect_key(body, "p=", spec), "success probability"));
    }
    if (kind == "custom") {
        return BoxDistribution::custom(read_weights_file(std::string(expect_key(body, "@", spec))));
    }
    throw UsageError("unknown distribution kind '" + std::string(kind) + "'");
}

std::vector<double> read_weights_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open weights file '" + path.string() + "'");
    }
    std::vector<double> weights;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view view(line);
        if (auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        weights.push_back(parse_number<double>(view, "weight"));
    }
    return weights;
}

}  // namespace urnlab
