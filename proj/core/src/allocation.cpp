#include "urnlab/allocation.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "urnlab/errors.hpp"

namespace urnlab {

UrnCounter::UrnCounter(const BoxDistribution& dist, std::uint64_t balls) {
    const auto support = dist.support_size();
    dense_ = support.has_value() && *support <= 4 * std::max<std::uint64_t>(balls, 1);
    if (dense_) {
        dense_counts_.assign(*support, 0);
    } else {
        const std::uint64_t capacity = std::bit_ceil(std::max<std::uint64_t>(2 * balls, 16));
        keys_.assign(capacity, kEmpty);
        slot_counts_.assign(capacity, 0);
        mask_ = capacity - 1;
    }
    touched_.reserve(std::min<std::uint64_t>(balls, 1u << 20));
}

std::uint32_t UrnCounter::increment(UrnIndex urn) {
    if (dense_) {
        auto& c = dense_counts_[urn];
        if (c == 0) {
            touched_.push_back(urn);
        }
        return c++;
    }
    std::uint64_t slot = mix64(urn) & mask_;
    while (true) {
        const UrnIndex key = keys_[slot];
        if (key == urn) {
            return slot_counts_[slot]++;
        }
        if (key == kEmpty) {
            break;
        }
        slot = (slot + 1) & mask_;
    }
    // load factor kept at or below 1/2
    if (2 * (touched_.size() + 1) > keys_.size()) {
        grow();
        return increment(urn);
    }
    keys_[slot] = urn;
    slot_counts_[slot] = 1;
    touched_.push_back(slot);
    return 0;
}

void UrnCounter::grow() {
    std::vector<std::pair<UrnIndex, std::uint32_t>> entries;
    entries.reserve(touched_.size());
    for (auto slot : touched_) {
        entries.emplace_back(keys_[slot], slot_counts_[slot]);
    }
    const std::uint64_t capacity = keys_.size() * 2;
    keys_.assign(capacity, kEmpty);
    slot_counts_.assign(capacity, 0);
    mask_ = capacity - 1;
    touched_.clear();
    for (auto [urn, count] : entries) {
        std::uint64_t slot = mix64(urn) & mask_;
        while (keys_[slot] != kEmpty) {
            slot = (slot + 1) & mask_;
        }
        keys_[slot] = urn;
        slot_counts_[slot] = count;
        touched_.push_back(slot);
    }
}

void UrnCounter::clear() {
    if (dense_) {
        for (auto urn : touched_) {
            dense_counts_[urn] = 0;
        }
    } else {
        for (auto slot : touched_) {
            keys_[slot] = kEmpty;
            slot_counts_[slot] = 0;
        }
    }
    touched_.clear();
}

AllocationOutcome run_trial(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r,
                            RandomStream& rng, const TrialOptions& options) {
    UrnCounter counter(dist, n);
    return run_trial(dist, n, r, rng, counter, options);
}

AllocationOutcome run_trial(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r,
                            RandomStream& rng, UrnCounter& counter, const TrialOptions& options) {
    if (n == 0 || r == 0) {
        throw UsageError("run_trial needs n >= 1 and r >= 1");
    }
    counter.clear();
    AllocationOutcome out;
    out.n = n;
    out.r = r;
    if (options.keep_sequence) {
        out.sequence.emplace();
        out.sequence->reserve(n);
    }

    std::uint64_t overflow = 0;
    if (options.neighbor_capacities) {
        NeighborOverflows nb;
        for (std::uint64_t k = 0; k < n; ++k) {
            const UrnIndex urn = dist.sample(rng);
            const std::uint64_t prior = counter.increment(urn);
            nb.below += prior + 1 >= r;  // prior >= r - 1 without unsigned wrap
            nb.at += prior >= r;
            nb.above += prior >= r + 1;
            if (out.sequence) {
                out.sequence->push_back(urn);
            }
        }
        overflow = nb.at;
        out.neighbors = nb;
    } else {
        for (std::uint64_t k = 0; k < n; ++k) {
            const UrnIndex urn = dist.sample(rng);
            overflow += counter.increment(urn) >= r;
            if (out.sequence) {
                out.sequence->push_back(urn);
            }
        }
    }
    out.overflow = overflow;

    std::uint64_t retained = 0;
    counter.for_each([&](UrnIndex urn, std::uint64_t count) {
        retained += std::min(count, r);
        out.full_urns += count >= r;
        out.exactly_full += count == r;
        if (options.keep_counts) {
            out.counts.emplace(urn, count);
        }
    });
    out.overflow_from_counts = n - retained;
    return out;
}

std::uint64_t overflow_of_sequence(const std::vector<UrnIndex>& sequence, std::uint64_t r) {
    std::map<UrnIndex, std::uint64_t> running;
    std::uint64_t overflow = 0;
    for (UrnIndex urn : sequence) {
        overflow += running[urn]++ >= r;
    }
    return overflow;
}

std::uint64_t overflow_from_counts(const CountMap& counts, std::uint64_t n, std::uint64_t r) {
    std::uint64_t total = 0;
    std::uint64_t retained = 0;
    for (const auto& [urn, count] : counts) {
        total += count;
        retained += std::min(count, r);
    }
    if (total != n) {
        std::ostringstream msg;
        msg << "urn counts sum to " << total << " but n = " << n;
        throw UsageError(msg.str());
    }
    return n - retained;
}

FullCounts full_counts(const CountMap& counts, std::uint64_t r) {
    FullCounts fc;
    for (const auto& [urn, count] : counts) {
        fc.full += count >= r;
        fc.exactly += count == r;
    }
    return fc;
}

void check_identities(const AllocationOutcome& o) {
    if (!o.neighbors) {
        throw UsageError("identity check needs neighbour capacities");
    }
    const auto& nb = *o.neighbors;
    std::ostringstream msg;
    if (o.overflow != o.overflow_from_counts) {
        msg << "streaming overflow " << o.overflow << " != count-based overflow "
            << o.overflow_from_counts;
    } else if (nb.below - nb.at != o.full_urns) {
        msg << "V_{r-1} - V_r = " << nb.below - nb.at << " but L = " << o.full_urns;
    } else if (nb.below + nb.above - 2 * nb.at != o.exactly_full) {
        msg << "V_{r-1} - 2V_r + V_{r+1} = " << nb.below + nb.above - 2 * nb.at
            << " but M = " << o.exactly_full;
    } else {
        return;
    }
    msg << " (n=" << o.n << ", r=" << o.r << ")";
    throw IdentityViolation(msg.str());
}

}  // namespace urnlab
