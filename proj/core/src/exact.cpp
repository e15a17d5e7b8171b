#include "urnlab/exact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "urnlab/errors.hpp"

namespace urnlab {
namespace {

constexpr double kNegligibleWeight = 1e-300;

// Unnormalized Bin(k, p) weights over [lo, lo + weights.size()), mode weight 1.
struct BinomialWindow {
    std::uint64_t lo = 0;
    std::vector<double> weights;
    double total = 0.0;

    double pmf(std::uint64_t i) const {
        if (i < lo || i >= lo + weights.size()) {
            return 0.0;
        }
        return weights[i - lo] / total;
    }

    double tail(std::uint64_t r) const {
        if (r <= lo) {
            return 1.0;
        }
        const std::uint64_t split = std::min<std::uint64_t>(r - lo, weights.size());
        double lower = 0.0;
        double upper = 0.0;
        for (std::uint64_t i = 0; i < split; ++i) {
            lower += weights[i];
        }
        for (std::uint64_t i = split; i < weights.size(); ++i) {
            upper += weights[i];
        }
        const double sum = lower + upper;
        return upper <= lower ? upper / sum : 1.0 - lower / sum;
    }
};

BinomialWindow binomial_window(std::uint64_t k, double p) {
    BinomialWindow w;
    if (p <= 0.0) {
        w.weights = {1.0};
        w.total = 1.0;
        return w;
    }
    if (p >= 1.0) {
        w.lo = k;
        w.weights = {1.0};
        w.total = 1.0;
        return w;
    }
    const double kd = static_cast<double>(k);
    const auto mode = std::min<std::uint64_t>(k, static_cast<std::uint64_t>(std::floor((kd + 1.0) * p)));
    const double odds = p / (1.0 - p);

    std::vector<double> down;  // weights at mode-1, mode-2, ...
    double x = 1.0;
    for (std::uint64_t i = mode; i > 0; --i) {
        // w_{i-1} / w_i = i / ((k - i + 1) * odds)
        x *= static_cast<double>(i) / (static_cast<double>(k - i + 1) * odds);
        if (x < kNegligibleWeight) {
            break;
        }
        down.push_back(x);
    }
    w.lo = mode - down.size();
    w.weights.assign(down.rbegin(), down.rend());
    w.weights.push_back(1.0);
    x = 1.0;
    for (std::uint64_t i = mode; i < k; ++i) {
        x *= static_cast<double>(k - i) / static_cast<double>(i + 1) * odds;
        if (x < kNegligibleWeight) {
            break;
        }
        w.weights.push_back(x);
    }
    // sum from the small ends inward
    double total = 0.0;
    const std::size_t mode_pos = down.size();
    for (std::size_t i = 0; i < mode_pos; ++i) {
        total += w.weights[i];
    }
    for (std::size_t i = w.weights.size(); i-- > mode_pos;) {
        total += w.weights[i];
    }
    w.total = total;
    return w;
}

// sum_{k=1}^{n} P(Bin(k-1, p) >= r) via the additive tail recurrence.
double summed_tails(double p, std::uint64_t n, std::uint64_t r) {
    const double q = 1.0 - p;
    std::vector<double> tails(r + 1, 0.0);  // tails[s] = P(B_{k-1} >= s)
    tails[0] = 1.0;
    double sum = 0.0;
    for (std::uint64_t k = 1; k <= n; ++k) {
        sum += tails[r];
        for (std::uint64_t s = r; s >= 1; --s) {
            tails[s] = p * tails[s - 1] + q * tails[s];
        }
    }
    return sum;
}

// E min(Bin(n, p), r) = sum_{i<r} i P(B = i) + r P(B >= r).
double expected_retained(double p, std::uint64_t n, std::uint64_t r) {
    const BinomialWindow w = binomial_window(n, p);
    double retained = 0.0;
    for (std::uint64_t i = 1; i < r; ++i) {
        retained += static_cast<double>(i) * w.pmf(i);
    }
    return retained + static_cast<double>(r) * w.tail(r);
}

[[noreturn]] void budget_error(const char* what, double needed, std::uint64_t limit) {
    std::ostringstream msg;
    msg << "instance too large for exact computation: " << what << " needs " << needed
        << ", budget is " << limit << " (use Monte Carlo)";
    throw BudgetExceeded(msg.str());
}

void check_tail_budget(double urns, std::uint64_t n, const ExactBudget& budget) {
    const double work = urns * static_cast<double>(n);
    if (work > static_cast<double>(budget.tail_evaluations)) {
        budget_error("tail evaluations", work, budget.tail_evaluations);
    }
}

// Number of leading geometric urns after which the remaining contribution to
// E V is below 1e-14 of `first`. Per urn, p_m sum_k P(Bin(k-1,p_m) >= r) <=
// n (n p_m)^r p_m / r!, and sum_{j>=J} p_j^{r+1} = E p^r (1-p)^{J(r+1)}.
std::uint64_t geometric_cutoff(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r,
                               double first) {
    const double p = dist.success_prob();
    double scale = power_moment(dist, static_cast<int>(r));
    for (std::uint64_t i = 1; i <= r + 1; ++i) {
        scale *= static_cast<double>(n);
        if (i <= r) {
            scale /= static_cast<double>(i);
        }
    }
    const double target = 1e-14 * first / scale;
    if (target >= 1.0) {
        return 1;
    }
    const double j = std::log(target) / (static_cast<double>(r + 1) * std::log1p(-p));
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(j)));
}

void require_instance(std::uint64_t n, std::uint64_t r) {
    if (n == 0 || r == 0) {
        throw UsageError("exact computations need n >= 1 and r >= 1");
    }
}

}  // namespace

double binomial_tail(std::uint64_t k, double p, std::uint64_t r) {
    if (r == 0) {
        return 1.0;
    }
    if (r > k || p <= 0.0) {
        return 0.0;
    }
    if (p >= 1.0) {
        return 1.0;
    }
    if (r == k) {
        // single term; the windowed pmf would lose an ulp here
        double all = 1.0;
        for (std::uint64_t i = 0; i < k; ++i) all *= p;
        return all;
    }
    return binomial_window(k, p).tail(r);
}

double binomial_pmf(std::uint64_t k, double p, std::uint64_t i) {
    if (i > k) {
        return 0.0;
    }
    return binomial_window(k, p).pmf(i);
}

double tail_bound(std::uint64_t k, double p, std::uint64_t r) {
    const double mean = static_cast<double>(k) * p;
    double bound = 1.0;
    for (std::uint64_t i = 1; i <= r; ++i) {
        bound *= mean / static_cast<double>(i);
    }
    return bound;
}

double exact_mean_overflow(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r,
                           const ExactBudget& budget) {
    require_instance(n, r);
    if (n <= r) {
        return 0.0;
    }
    if (dist.kind() == DistributionKind::Geometric) {
        const double first = dist.probability(0) * summed_tails(dist.probability(0), n, r);
        const std::uint64_t urns = geometric_cutoff(dist, n, r, first);
        check_tail_budget(static_cast<double>(urns), n, budget);
        double mean = first;
        for (std::uint64_t j = 1; j < urns; ++j) {
            const double pj = dist.probability(j);
            mean += pj * summed_tails(pj, n, r);
        }
        return mean;
    }
    const auto classes = dist.mass_classes();
    check_tail_budget(static_cast<double>(classes.size()), n, budget);
    double mean = 0.0;
    for (const auto& c : classes) {
        mean += static_cast<double>(c.multiplicity) * c.probability * summed_tails(c.probability, n, r);
    }
    return mean;
}

double exact_mean_via_counts(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r,
                             const ExactBudget& budget) {
    require_instance(n, r);
    const double nd = static_cast<double>(n);
    if (dist.kind() == DistributionKind::Geometric) {
        if (n <= r) {
            return 0.0;
        }
        // Truncated support: sum n p_j - E min(B_j, r) per urn so the cut mass cancels.
        const double p0 = dist.probability(0);
        const double first = nd * p0 - expected_retained(p0, n, r);
        const std::uint64_t urns = geometric_cutoff(dist, n, r, std::max(first, 1e-300));
        check_tail_budget(static_cast<double>(urns), n, budget);
        double mean = first;
        for (std::uint64_t j = 1; j < urns; ++j) {
            const double pj = dist.probability(j);
            mean += nd * pj - expected_retained(pj, n, r);
        }
        return mean;
    }
    const auto classes = dist.mass_classes();
    check_tail_budget(static_cast<double>(classes.size()), n, budget);
    double retained = 0.0;
    for (const auto& c : classes) {
        retained += static_cast<double>(c.multiplicity) * expected_retained(c.probability, n, r);
    }
    return nd - retained;
}

namespace {

void finish(ExactDistribution& d, const std::vector<double>& by_value) {
    for (std::size_t v = 0; v < by_value.size(); ++v) {
        if (by_value[v] > 0.0) {
            d.pmf.emplace(v, by_value[v]);
        }
    }
    double mean = 0.0;
    for (auto [v, pr] : d.pmf) {
        mean += static_cast<double>(v) * pr;
    }
    double var = 0.0;
    for (auto [v, pr] : d.pmf) {
        const double dv = static_cast<double>(v) - mean;
        var += dv * dv * pr;
    }
    d.mean = mean;
    d.variance = var;
}

std::uint64_t finite_support(const BoxDistribution& dist) {
    const auto s = dist.support_size();
    if (!s) {
        throw UsageError("exact enumeration needs a finite support");
    }
    return *s;
}

struct CompositionWalker {
    std::uint64_t r;
    std::vector<double> log_p;
    std::vector<double> log_factorial;
    std::vector<double>& by_value;
    std::uint64_t n;

    void walk(std::size_t urn, std::uint64_t remaining, double log_weight, std::uint64_t retained) {
        if (urn + 1 == log_p.size()) {
            const double lw = log_weight + static_cast<double>(remaining) * log_p[urn] -
                              log_factorial[remaining];
            by_value[n - retained - std::min(remaining, r)] += std::exp(lw);
            return;
        }
        for (std::uint64_t c = 0; c <= remaining; ++c) {
            walk(urn + 1, remaining - c,
                 log_weight + static_cast<double>(c) * log_p[urn] - log_factorial[c],
                 retained + std::min(c, r));
        }
    }
};

}  // namespace

ExactDistribution exact_distribution(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r,
                                     const ExactBudget& budget) {
    require_instance(n, r);
    const std::uint64_t s = finite_support(dist);
    // C(n + s - 1, s - 1)
    const double compositions = std::exp(std::lgamma(static_cast<double>(n + s)) -
                                         std::lgamma(static_cast<double>(n + 1)) -
                                         std::lgamma(static_cast<double>(s)));
    if (compositions > static_cast<double>(budget.compositions) * (1.0 + 1e-9)) {
        budget_error("count vectors", std::round(compositions), budget.compositions);
    }

    ExactDistribution d;
    d.n = n;
    d.r = r;
    std::vector<double> by_value(n + 1, 0.0);
    CompositionWalker walker{r, {}, {}, by_value, n};
    walker.log_p.reserve(s);
    for (std::uint64_t m = 0; m < s; ++m) {
        walker.log_p.push_back(std::log(dist.probability(m)));
    }
    walker.log_factorial.resize(n + 1);
    for (std::uint64_t i = 0; i <= n; ++i) {
        walker.log_factorial[i] = std::lgamma(static_cast<double>(i) + 1.0);
    }
    walker.walk(0, n, walker.log_factorial[n], 0);
    finish(d, by_value);
    return d;
}

namespace {

double sequence_count(std::uint64_t s, std::uint64_t length) {
    return std::pow(static_cast<double>(s), static_cast<double>(length));
}

// Visit every sequence in {0..s-1}^length with its probability.
template <typename Fn>
void for_each_sequence(const BoxDistribution& dist, std::uint64_t s, std::uint64_t length, Fn&& fn) {
    std::vector<double> prob(s);
    for (std::uint64_t m = 0; m < s; ++m) {
        prob[m] = dist.probability(m);
    }
    std::vector<UrnIndex> digits(length, 0);
    while (true) {
        double pr = 1.0;
        for (auto d : digits) {
            pr *= prob[d];
        }
        fn(digits, pr);
        std::size_t pos = 0;
        while (pos < length && ++digits[pos] == s) {
            digits[pos++] = 0;
        }
        if (pos == length) {
            break;
        }
    }
}

}  // namespace

ExactDistribution sequence_distribution(const BoxDistribution& dist, std::uint64_t n,
                                        std::uint64_t r, const ExactBudget& budget) {
    require_instance(n, r);
    const std::uint64_t s = finite_support(dist);
    const double total = sequence_count(s, n);
    if (total > static_cast<double>(budget.sequences)) {
        budget_error("ball sequences", total, budget.sequences);
    }
    ExactDistribution d;
    d.n = n;
    d.r = r;
    std::vector<double> by_value(n + 1, 0.0);
    std::vector<std::uint64_t> running(s);
    for_each_sequence(dist, s, n, [&](const std::vector<UrnIndex>& seq, double pr) {
        std::fill(running.begin(), running.end(), 0);
        std::uint64_t overflow = 0;
        for (auto urn : seq) {
            overflow += running[urn]++ >= r;
        }
        by_value[overflow] += pr;
    });
    finish(d, by_value);
    return d;
}

NodResult nod_check(const BoxDistribution& dist, std::uint64_t n, std::uint64_t k, std::uint64_t l,
                    UrnIndex m1, UrnIndex m2, std::uint64_t x1, std::uint64_t x2,
                    const ExactBudget& budget) {
    const std::uint64_t s = finite_support(dist);
    if (m1 == m2 || m1 >= s || m2 >= s) {
        throw UsageError("nod_check needs two distinct urns inside the support");
    }
    if (k < 1 || k > l || l > n + 1) {
        throw UsageError("nod_check needs 1 <= k <= l <= n + 1");
    }
    const std::uint64_t length = l - 1;
    const double total = sequence_count(s, length);
    if (total > static_cast<double>(budget.sequences)) {
        budget_error("ball sequences", total, budget.sequences);
    }
    double joint = 0.0;
    double first = 0.0;
    double second = 0.0;
    for_each_sequence(dist, s, length, [&](const std::vector<UrnIndex>& seq, double pr) {
        std::uint64_t early = 0;  // N_k(m1): balls 1..k-1
        std::uint64_t late = 0;   // N_l(m2): balls 1..l-1
        for (std::uint64_t j = 0; j < length; ++j) {
            early += j + 1 < k && seq[j] == m1;
            late += seq[j] == m2;
        }
        const bool a = early >= x1;
        const bool b = late >= x2;
        first += a ? pr : 0.0;
        second += b ? pr : 0.0;
        joint += (a && b) ? pr : 0.0;
    });
    NodResult res;
    res.joint = joint;
    res.product = first * second;
    res.holds = res.joint <= res.product + 1e-12;
    return res;
}

}  // namespace urnlab
