#include "urnlab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "urnlab/allocation.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/random.hpp"

namespace urnlab {

StatisticSet StatisticSet::parse(const std::string& list) {
    StatisticSet set{false, false, false};
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::string key;
        for (char c : item) {
            if (!std::isspace(static_cast<unsigned char>(c))) {
                key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            }
        }
        if (key == "v") {
            set.overflow = true;
        } else if (key == "l") {
            set.full = true;
        } else if (key == "m") {
            set.exactly_full = true;
        } else {
            throw UsageError("unknown statistic '" + item + "' (expected v, l or m)");
        }
    }
    if (!set.overflow && !set.full && !set.exactly_full) {
        throw UsageError("no statistic selected");
    }
    return set;
}

std::string StatisticSet::to_string() const {
    std::string out;
    auto add = [&](bool on, const char* key) {
        if (on) {
            out += out.empty() ? "" : ",";
            out += key;
        }
    };
    add(overflow, "v");
    add(full, "l");
    add(exactly_full, "m");
    return out;
}

namespace {

using Histogram = std::map<std::int64_t, std::uint64_t>;

struct WorkerTally {
    Histogram overflow;
    Histogram full;
    Histogram exactly_full;
};

void merge(Histogram& into, const Histogram& from) {
    for (auto [v, c] : from) {
        into[v] += c;
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.n == 0 || config.r == 0 || config.reps == 0) {
        throw UsageError("experiment needs n >= 1, r >= 1 and reps >= 1");
    }
    const double draws = static_cast<double>(config.n) * static_cast<double>(config.reps);
    if (draws > static_cast<double>(config.max_ball_draws)) {
        std::ostringstream msg;
        msg << "experiment needs " << draws << " ball draws, budget is " << config.max_ball_draws;
        throw BudgetExceeded(msg.str());
    }

    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, config.reps));

    constexpr std::uint64_t kChunk = 16;
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<WorkerTally> tallies(threads);

    const TrialOptions options{.keep_counts = false,
                               .neighbor_capacities = config.identity_checks,
                               .keep_sequence = false};

    auto worker = [&](unsigned id) {
        try {
            UrnCounter counter(config.dist, config.n);
            WorkerTally& tally = tallies[id];
            while (!failed.load(std::memory_order_relaxed)) {
                const std::uint64_t begin = next.fetch_add(kChunk);
                if (begin >= config.reps) {
                    break;
                }
                const std::uint64_t end = std::min(begin + kChunk, config.reps);
                for (std::uint64_t trial = begin; trial < end; ++trial) {
                    RandomStream rng = derive_stream(config.seed, trial);
                    const auto out = run_trial(config.dist, config.n, config.r, rng, counter, options);
                    if (config.identity_checks) {
                        try {
                            check_identities(out);
                        } catch (const IdentityViolation& e) {
                            throw IdentityViolation(std::string(e.what()) + " in trial " +
                                                    std::to_string(trial));
                        }
                    }
                    ++tally.overflow[static_cast<std::int64_t>(out.overflow)];
                    ++tally.full[static_cast<std::int64_t>(out.full_urns)];
                    ++tally.exactly_full[static_cast<std::int64_t>(out.exactly_full)];
                }
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) {
                error = std::current_exception();
            }
            failed.store(true);
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned id = 0; id < threads; ++id) {
            pool.emplace_back(worker, id);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    WorkerTally total;
    for (const auto& t : tallies) {
        merge(total.overflow, t.overflow);
        merge(total.full, t.full);
        merge(total.exactly_full, t.exactly_full);
    }
    ExperimentResult result;
    if (config.collect.overflow) {
        result.emplace("V", EmpiricalSummary::from_histogram(std::move(total.overflow)));
    }
    if (config.collect.full) {
        result.emplace("L", EmpiricalSummary::from_histogram(std::move(total.full)));
    }
    if (config.collect.exactly_full) {
        result.emplace("M", EmpiricalSummary::from_histogram(std::move(total.exactly_full)));
    }
    return result;
}

}  // namespace urnlab
