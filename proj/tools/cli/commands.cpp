#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "urnlab/asymptotics.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/exact.hpp"
#include "urnlab/stats.hpp"

namespace urnlab::cli {

Preset make_preset(const std::string& name, double scale) {
    if (!(scale > 0.0 && scale <= 1.0)) {
        throw UsageError("--scale must lie in (0, 1]");
    }
    auto scaled_reps = [scale](std::uint64_t reps) {
        return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(static_cast<double>(reps) * scale)));
    };
    auto scaled_balls = [scale](std::uint64_t n) {
        return std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(std::llround(static_cast<double>(n) * scale)));
    };

    if (name == "fig1") {
        // uniform, r = 2, m = n^{3/2} / 3, mu = 1.5
        const std::uint64_t n = scaled_balls(100'000);
        const auto m = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(n), 1.5) / 3.0));
        return {name, BoxDistribution::uniform(m), n, 2, scaled_reps(10'000), "poisson",
                {"fig1: n=10^6 is inconsistent with m=10540926 at mu=1.5 (it would need m~3.33e8); "
                 "the consistent n=10^5 is the unscaled base"}};
    }
    if (name == "fig2") {
        // geometric, r = 3, p = 6 n^{-4/3}, mu = 2.25
        const std::uint64_t n = scaled_balls(100'000);
        const double p = 6.0 * std::pow(static_cast<double>(n), -4.0 / 3.0);
        return {name, BoxDistribution::geometric(p), n, 3, scaled_reps(1'000), "poisson",
                {"fig2: p~1.3e-6 at mu=2.25 matches 6 n^{-4/3} for n=10^5, not n=10^6; "
                 "the consistent n=10^5 is the unscaled base"}};
    }
    if (name == "fig3") {
        // uniform, r = 2, n = 10^4, m = floor(n^{1.1})
        return {name, BoxDistribution::uniform(25'118), 10'000, 2, scaled_reps(10'000), "normal", {}};
    }
    if (name == "fig4") {
        // geometric, r = 4, n = 10^4, p = 1/n
        return {name, BoxDistribution::geometric(1e-4), 10'000, 4, scaled_reps(10'000), "normal", {}};
    }
    throw UsageError("unknown preset '" + name + "' (expected fig1, fig2, fig3 or fig4)");
}

std::pair<ExperimentConfig, OutputRecord> plan_simulation(const SimulateOptions& o) {
    if (!o.seed) {
        throw UsageError("--seed is required; runs are never seeded from the clock");
    }
    OutputRecord rec;
    rec.command = "simulate";

    std::optional<Preset> preset;
    if (o.preset) {
        preset = make_preset(*o.preset, o.scale);
        rec.config.preset = *o.preset;
        rec.config.scale = o.scale;
        rec.notes = preset->notes;
    }
    std::optional<BoxDistribution> dist;
    if (o.dist) {
        dist = parse_distribution_spec(*o.dist);
        rec.config.dist = *o.dist;
    } else if (preset) {
        dist = preset->dist;
        rec.config.dist = preset->dist.describe();
    } else {
        throw UsageError("--dist is required without --preset");
    }
    auto pick = [&](const std::optional<std::uint64_t>& flag, std::uint64_t Preset::*field,
                    const char* name) -> std::uint64_t {
        if (flag) return *flag;
        if (preset) return (*preset).*field;
        throw UsageError(std::string("--") + name + " is required without --preset");
    };
    const std::uint64_t n = pick(o.balls, &Preset::balls, "balls");
    const std::uint64_t r = pick(o.capacity, &Preset::capacity, "capacity");
    const std::uint64_t reps = pick(o.reps, &Preset::reps, "reps");
    if (n == 0 || r == 0 || reps == 0) {
        throw UsageError("--balls, --capacity and --reps must be positive");
    }
    std::optional<std::string> gof = o.gof;
    if (!gof && preset) {
        gof = preset->gof;
    }
    if (gof && *gof != "poisson" && *gof != "normal") {
        throw UsageError("--gof must be poisson or normal");
    }

    ExperimentConfig config{.dist = *dist,
                            .n = n,
                            .r = r,
                            .reps = reps,
                            .seed = *o.seed,
                            .collect = StatisticSet::parse(o.collect),
                            .identity_checks = o.identity_checks,
                            .threads = o.threads};
    rec.config.balls = n;
    rec.config.capacity = r;
    rec.config.reps = reps;
    rec.config.seed = *o.seed;
    rec.config.collect = config.collect.to_string();
    rec.config.gof = gof;
    return {config, rec};
}

OutputRecord cmd_simulate(const SimulateOptions& options) {
    auto [config, rec] = plan_simulation(options);
    const auto start = std::chrono::steady_clock::now();
    rec.summaries = run_experiment(config);
    rec.theory = regime_report(config.dist, config.n, config.r);

    if (rec.config.gof) {
        const bool poisson = *rec.config.gof == "poisson";
        for (const auto& [name, summary] : rec.summaries) {
            FitBlock fit;
            if (poisson) {
                if (name == "V") {
                    fit.poisson_mu = rec.theory->mu;
                } else if (config.r >= 2) {
                    fit.poisson_mu = full_urn_intensity(config.dist, config.n, config.r);
                }
                if (fit.poisson_mu && *fit.poisson_mu > 0.0) {
                    fit.tv = tv_distance_poisson(summary, *fit.poisson_mu);
                    if (summary.reps >= 50) {
                        try {
                            const auto chi = chi_square_poisson(summary, *fit.poisson_mu);
                            fit.chi_square = chi.statistic;
                            fit.chi_square_dof = chi.dof;
                            fit.chi_square_critical_001 = chi_square_critical(chi.dof, Level::Tenth);
                        } catch (const DegenerateFit& e) {
                            rec.notes.push_back(name + ": " + e.what());
                        }
                    }
                }
            } else if (summary.reps >= 100) {
                const auto z = standardized_samples(summary);
                fit.ks = ks_normal(z);
                fit.ks_critical_01 = ks_critical(z.size(), Level::One);
            } else {
                rec.notes.push_back(name + ": KS needs at least 100 replications");
            }
            rec.fit.emplace(name, fit);
        }
    }
    if (options.timing) {
        rec.timing_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return rec;
}

OutputRecord cmd_exact(const ExactOptions& o) {
    if (o.balls == 0 || o.capacity == 0) {
        throw UsageError("--balls and --capacity must be positive");
    }
    const auto dist = parse_distribution_spec(o.dist);
    OutputRecord rec;
    rec.command = "exact";
    rec.config.dist = o.dist;
    rec.config.balls = o.balls;
    rec.config.capacity = o.capacity;
    ExactBlock block;
    block.mean_overflow = exact_mean_overflow(dist, o.balls, o.capacity);
    block.mean_via_counts = exact_mean_via_counts(dist, o.balls, o.capacity);
    if (o.full_dist) {
        block.distribution = exact_distribution(dist, o.balls, o.capacity);
    }
    rec.exact = std::move(block);
    rec.theory = regime_report(dist, o.balls, o.capacity);
    return rec;
}

RegimeReport cmd_predict(const PredictOptions& o) {
    if (o.balls == 0 || o.capacity == 0) {
        throw UsageError("--balls and --capacity must be positive");
    }
    return regime_report(parse_distribution_spec(o.dist), o.balls, o.capacity);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"urnlab: overflow of capacity-limited urns, simulated and computed exactly"};
    app.require_subcommand(1);

    SimulateOptions sim;
    std::string format = "json";
    bool no_timing = false;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo replications of one configuration");
    simulate->add_option("--dist", sim.dist, "uniform:m=<int> | geometric:p=<real> | custom:@<path>");
    simulate->add_option("--balls", sim.balls, "number of balls n");
    simulate->add_option("--capacity", sim.capacity, "urn capacity r");
    simulate->add_option("--reps", sim.reps, "replications");
    simulate->add_option("--seed", sim.seed, "64-bit seed (required)");
    simulate->add_option("--collect", sim.collect, "statistics to collect: v,l,m")->capture_default_str();
    simulate->add_option("--gof", sim.gof, "goodness of fit: poisson | normal");
    simulate->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    simulate->add_option("--preset", sim.preset, "fig1 | fig2 | fig3 | fig4");
    simulate->add_option("--scale", sim.scale, "preset scale in (0, 1]")->capture_default_str();
    simulate->add_option("--threads", sim.threads, "worker threads (0 = all cores)");
    simulate->add_flag("--identity-checks", sim.identity_checks, "assert L/M overflow identities per trial");
    simulate->add_flag("--no-timing", no_timing, "omit the timing block");

    ExactOptions ex;
    auto* exact = app.add_subcommand("exact", "exact mean and (optionally) exact law of the overflow");
    exact->add_option("--dist", ex.dist)->required();
    exact->add_option("--balls", ex.balls)->required();
    exact->add_option("--capacity", ex.capacity)->required();
    exact->add_flag("--full-dist", ex.full_dist, "enumerate the exact pmf");

    PredictOptions pr;
    auto* predict = app.add_subcommand("predict", "limit-regime diagnostics");
    predict->add_option("--dist", pr.dist)->required();
    predict->add_option("--balls", pr.balls)->required();
    predict->add_option("--capacity", pr.capacity)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (simulate->parsed()) {
            sim.timing = !no_timing;
            err << "simulating...\n";
            const auto rec = cmd_simulate(sim);
            if (format == "csv") {
                write_csv(rec, out);
            } else {
                out << to_json(rec).dump(2) << '\n';
            }
            err << "done\n";
        } else if (exact->parsed()) {
            out << to_json(cmd_exact(ex)).dump(2) << '\n';
        } else if (predict->parsed()) {
            out << to_json(cmd_predict(pr)).dump(2) << '\n';
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}

}  // namespace urnlab::cli
