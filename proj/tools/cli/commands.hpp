#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cli/record.hpp"
#include "urnlab/distributions.hpp"
#include "urnlab/montecarlo.hpp"

namespace urnlab::cli {

/// Exit codes of the urnlab tool.
enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kBudget = 3 };

/// Parameters of one figure preset at a given scale.
struct Preset {
    std::string name;
    BoxDistribution dist;
    std::uint64_t balls;
    std::uint64_t capacity;
    std::uint64_t reps;
    std::string gof;
    std::vector<std::string> notes;
};

/// Figure presets fig1..fig4.
///
/// `scale` in (0, 1] multiplies the replication count of every preset. For the
/// two Poisson presets it also multiplies n (floored at 1000), and the urn
/// count m = a n^{(r+1)/r} or success probability p = a n^{-(r+1)/r} is
/// recomputed so the Poisson intensity stays fixed.
Preset make_preset(const std::string& name, double scale);

struct SimulateOptions {
    std::optional<std::string> dist;
    std::optional<std::uint64_t> balls;
    std::optional<std::uint64_t> capacity;
    std::optional<std::uint64_t> reps;
    std::optional<std::uint64_t> seed;
    std::string collect = "v";
    std::optional<std::string> gof;  // "poisson" or "normal"
    std::optional<std::string> preset;
    double scale = 1.0;
    unsigned threads = 0;
    bool identity_checks = false;
    bool timing = true;
};

struct ExactOptions {
    std::string dist;
    std::uint64_t balls = 0;
    std::uint64_t capacity = 0;
    bool full_dist = false;
};

struct PredictOptions {
    std::string dist;
    std::uint64_t balls = 0;
    std::uint64_t capacity = 0;
};

/// Resolve flags and presets into an experiment configuration plus its echo.
std::pair<ExperimentConfig, OutputRecord> plan_simulation(const SimulateOptions& options);

/// Run the experiment and attach the regime report and requested fit statistics.
OutputRecord cmd_simulate(const SimulateOptions& options);

/// Exact mean by both formulas; the exact pmf when requested.
OutputRecord cmd_exact(const ExactOptions& options);

RegimeReport cmd_predict(const PredictOptions& options);

/// Command-line entry point. Data goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace urnlab::cli
