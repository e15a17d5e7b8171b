#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "urnlab/asymptotics.hpp"
#include "urnlab/exact.hpp"
#include "urnlab/stats.hpp"

namespace urnlab::cli {

/// Echo of the effective run parameters. Thread count is deliberately absent
/// so that output does not depend on it.
struct ConfigEcho {
    std::string dist;
    std::uint64_t balls = 0;
    std::uint64_t capacity = 0;
    std::optional<std::uint64_t> reps;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> collect;
    std::optional<std::string> gof;
    std::optional<std::string> preset;
    std::optional<double> scale;

    friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

/// Goodness-of-fit figures for one statistic.
struct FitBlock {
    std::optional<double> poisson_mu;
    std::optional<double> tv;
    std::optional<double> chi_square;
    std::optional<std::uint64_t> chi_square_dof;
    std::optional<double> chi_square_critical_001;  // 0.1% upper quantile
    std::optional<double> ks;
    std::optional<double> ks_critical_01;  // 1% critical value

    friend bool operator==(const FitBlock&, const FitBlock&) = default;
};

struct ExactBlock {
    double mean_overflow = 0.0;    // tail-sum formula
    double mean_via_counts = 0.0;  // per-urn retention formula
    std::optional<ExactDistribution> distribution;

    friend bool operator==(const ExactBlock&, const ExactBlock&) = default;
};

struct OutputRecord {
    std::string command;
    ConfigEcho config;
    std::map<std::string, EmpiricalSummary> summaries;
    std::optional<RegimeReport> theory;
    std::map<std::string, FitBlock> fit;
    std::optional<ExactBlock> exact;
    std::vector<std::string> notes;
    std::optional<double> timing_seconds;

    friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

nlohmann::json to_json(const RegimeReport& report);
RegimeReport regime_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OutputRecord& record);
OutputRecord record_from_json(const nlohmann::json& j);

/// One `value,count,empirical_prob,theory_prob` row per histogram cell. With
/// more than one statistic, each block is preceded by `# statistic=<name>`.
void write_csv(const OutputRecord& record, std::ostream& out);

}  // namespace urnlab::cli
