#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "urnlab/distributions.hpp"
#include "urnlab/random.hpp"

namespace urnlab {

/// Final ball count per occupied urn. Urns with zero balls are absent.
using CountMap = std::map<UrnIndex, std::uint64_t>;

/// Overflow at the neighbouring capacities r-1, r, r+1 of one ball sequence.
/// Capacity 0 overflows every ball, so `below == n` when r == 1.
struct NeighborOverflows {
    std::uint64_t below = 0;
    std::uint64_t at = 0;
    std::uint64_t above = 0;
};

struct FullCounts {
    std::uint64_t full = 0;     // urns holding >= r balls
    std::uint64_t exactly = 0;  // urns holding exactly r balls
};

/// Result of throwing n balls into capacity-r urns once.
struct AllocationOutcome {
    std::uint64_t n = 0;
    std::uint64_t r = 0;
    std::uint64_t overflow = 0;      // V: balls that found their urn already full
    std::uint64_t full_urns = 0;     // L: urns with count >= r
    std::uint64_t exactly_full = 0;  // M: urns with count == r
    /// Order-free overflow n - sum_m min(count_m, r) from the same trial.
    std::uint64_t overflow_from_counts = 0;

    CountMap counts;                               // filled when TrialOptions::keep_counts
    std::optional<NeighborOverflows> neighbors;    // filled when TrialOptions::neighbor_capacities
    std::optional<std::vector<UrnIndex>> sequence; // filled when TrialOptions::keep_sequence
};

struct TrialOptions {
    bool keep_counts = true;
    bool neighbor_capacities = false;
    bool keep_sequence = false;
};

/// Per-urn running counts for one trial, reusable across trials.
///
/// Uses a dense array when the support is finite and at most 4n urns, and an
/// open-addressing table keyed by urn index otherwise. Clearing touches only
/// the urns hit by the previous trial.
class UrnCounter {
public:
    UrnCounter(const BoxDistribution& dist, std::uint64_t balls);

    /// Add one ball to `urn`, returning the count the urn held before it.
    std::uint32_t increment(UrnIndex urn);

    void clear();

    bool dense() const noexcept { return dense_; }
    std::size_t occupied() const noexcept { return touched_.size(); }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        if (dense_) {
            for (auto urn : touched_) {
                fn(static_cast<UrnIndex>(urn), dense_counts_[urn]);
            }
        } else {
            for (auto slot : touched_) {
                fn(keys_[slot], slot_counts_[slot]);
            }
        }
    }

private:
    static constexpr UrnIndex kEmpty = ~UrnIndex{0};

    void grow();

    bool dense_ = true;
    std::vector<std::uint32_t> dense_counts_;
    std::vector<UrnIndex> keys_;
    std::vector<std::uint32_t> slot_counts_;
    std::uint64_t mask_ = 0;
    std::vector<std::uint64_t> touched_;  // urn (dense) or slot (sparse) indices
};

/// Throw n balls and record V, L and M. The overflow is computed by the
/// streaming rule: ball k overflows iff its urn already holds >= r balls.
AllocationOutcome run_trial(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r,
                            RandomStream& rng, const TrialOptions& options = {});

/// Same as above with a caller-owned counter (cleared on entry).
AllocationOutcome run_trial(const BoxDistribution& dist, std::uint64_t n, std::uint64_t r,
                            RandomStream& rng, UrnCounter& counter, const TrialOptions& options);

/// Streaming overflow of an explicit ball sequence.
std::uint64_t overflow_of_sequence(const std::vector<UrnIndex>& sequence, std::uint64_t r);

/// n - sum_m min(count_m, r). Throws UsageError if the counts do not sum to n.
std::uint64_t overflow_from_counts(const CountMap& counts, std::uint64_t n, std::uint64_t r);

FullCounts full_counts(const CountMap& counts, std::uint64_t r);

/// Verify V_{r-1} - V_r = L, V_{r-1} - 2V_r + V_{r+1} = M and that the streaming
/// and count-based overflows agree. Requires neighbour capacities. Throws
/// IdentityViolation with a diagnostic on failure.
void check_identities(const AllocationOutcome& outcome);

}  // namespace urnlab
