#include "cli/record.hpp"

#include <ostream>

#include "urnlab/asymptotics.hpp"

namespace urnlab::cli {

using nlohmann::json;

namespace {

template <typename T>
void put(json& j, const char* key, const std::optional<T>& value) {
    if (value) {
        j[key] = *value;
    }
}

template <typename T>
void get(const json& j, const char* key, std::optional<T>& value) {
    if (auto it = j.find(key); it != j.end() && !it->is_null()) {
        value = it->get<T>();
    }
}

json summary_json(const EmpiricalSummary& s) {
    json hist = json::array();
    for (auto [v, c] : s.histogram) {
        hist.push_back(json::array({v, c}));
    }
    return {{"histogram", hist}, {"reps", s.reps}, {"mean", s.mean}, {"variance", s.variance}};
}

EmpiricalSummary summary_from_json(const json& j) {
    EmpiricalSummary s;
    for (const auto& cell : j.at("histogram")) {
        s.histogram.emplace(cell.at(0).get<std::int64_t>(), cell.at(1).get<std::uint64_t>());
    }
    s.reps = j.at("reps").get<std::uint64_t>();
    s.mean = j.at("mean").get<double>();
    s.variance = j.at("variance").get<double>();
    return s;
}

json fit_json(const FitBlock& f) {
    json j = json::object();
    put(j, "poisson_mu", f.poisson_mu);
    put(j, "tv", f.tv);
    put(j, "chi_square", f.chi_square);
    put(j, "chi_square_dof", f.chi_square_dof);
    put(j, "chi_square_critical_001", f.chi_square_critical_001);
    put(j, "ks", f.ks);
    put(j, "ks_critical_01", f.ks_critical_01);
    return j;
}

FitBlock fit_from_json(const json& j) {
    FitBlock f;
    get(j, "poisson_mu", f.poisson_mu);
    get(j, "tv", f.tv);
    get(j, "chi_square", f.chi_square);
    get(j, "chi_square_dof", f.chi_square_dof);
    get(j, "chi_square_critical_001", f.chi_square_critical_001);
    get(j, "ks", f.ks);
    get(j, "ks_critical_01", f.ks_critical_01);
    return f;
}

json exact_json(const ExactBlock& e) {
    json j = {{"mean_overflow", e.mean_overflow}, {"mean_via_counts", e.mean_via_counts}};
    if (e.distribution) {
        json pmf = json::array();
        for (auto [v, p] : e.distribution->pmf) {
            pmf.push_back(json::array({v, p}));
        }
        j["distribution"] = {{"n", e.distribution->n},
                             {"r", e.distribution->r},
                             {"pmf", pmf},
                             {"mean", e.distribution->mean},
                             {"variance", e.distribution->variance}};
    }
    return j;
}

ExactBlock exact_from_json(const json& j) {
    ExactBlock e;
    e.mean_overflow = j.at("mean_overflow").get<double>();
    e.mean_via_counts = j.at("mean_via_counts").get<double>();
    if (auto it = j.find("distribution"); it != j.end()) {
        ExactDistribution d;
        d.n = it->at("n").get<std::uint64_t>();
        d.r = it->at("r").get<std::uint64_t>();
        for (const auto& cell : it->at("pmf")) {
            d.pmf.emplace(cell.at(0).get<std::uint64_t>(), cell.at(1).get<double>());
        }
        d.mean = it->at("mean").get<double>();
        d.variance = it->at("variance").get<double>();
        e.distribution = std::move(d);
    }
    return e;
}

}  // namespace

json to_json(const RegimeReport& r) {
    return {{"n_p_star", r.n_p_star},
            {"scaled_moment", r.scaled_moment},
            {"mu", r.mu},
            {"var_upper", r.var_upper},
            {"var_lower_asymptotic", r.var_lower_asymptotic},
            {"classification", std::string(to_string(r.classification))}};
}

RegimeReport regime_report_from_json(const json& j) {
    RegimeReport r;
    r.n_p_star = j.at("n_p_star").get<double>();
    r.scaled_moment = j.at("scaled_moment").get<double>();
    r.mu = j.at("mu").get<double>();
    r.var_upper = j.at("var_upper").get<double>();
    r.var_lower_asymptotic = j.at("var_lower_asymptotic").get<double>();
    r.classification = regime_from_string(j.at("classification").get<std::string>());
    return r;
}

json to_json(const OutputRecord& rec) {
    json config = {{"dist", rec.config.dist},
                   {"balls", rec.config.balls},
                   {"capacity", rec.config.capacity}};
    put(config, "reps", rec.config.reps);
    put(config, "seed", rec.config.seed);
    put(config, "collect", rec.config.collect);
    put(config, "gof", rec.config.gof);
    put(config, "preset", rec.config.preset);
    put(config, "scale", rec.config.scale);

    json j = {{"command", rec.command}, {"config", config}};
    if (!rec.summaries.empty()) {
        json summaries = json::object();
        for (const auto& [name, s] : rec.summaries) {
            summaries[name] = summary_json(s);
        }
        j["summaries"] = summaries;
    }
    if (rec.theory) {
        j["theory"] = to_json(*rec.theory);
    }
    if (!rec.fit.empty()) {
        json fit = json::object();
        for (const auto& [name, f] : rec.fit) {
            fit[name] = fit_json(f);
        }
        j["fit"] = fit;
    }
    if (rec.exact) {
        j["exact"] = exact_json(*rec.exact);
    }
    if (!rec.notes.empty()) {
        j["notes"] = rec.notes;
    }
    if (rec.timing_seconds) {
        j["timing"] = {{"seconds", *rec.timing_seconds}};
    }
    return j;
}

OutputRecord record_from_json(const json& j) {
    OutputRecord rec;
    rec.command = j.at("command").get<std::string>();
    const auto& c = j.at("config");
    rec.config.dist = c.at("dist").get<std::string>();
    rec.config.balls = c.at("balls").get<std::uint64_t>();
    rec.config.capacity = c.at("capacity").get<std::uint64_t>();
    get(c, "reps", rec.config.reps);
    get(c, "seed", rec.config.seed);
    get(c, "collect", rec.config.collect);
    get(c, "gof", rec.config.gof);
    get(c, "preset", rec.config.preset);
    get(c, "scale", rec.config.scale);
    if (auto it = j.find("summaries"); it != j.end()) {
        for (const auto& [name, s] : it->items()) {
            rec.summaries.emplace(name, summary_from_json(s));
        }
    }
    if (auto it = j.find("theory"); it != j.end()) {
        rec.theory = regime_report_from_json(*it);
    }
    if (auto it = j.find("fit"); it != j.end()) {
        for (const auto& [name, f] : it->items()) {
            rec.fit.emplace(name, fit_from_json(f));
        }
    }
    if (auto it = j.find("exact"); it != j.end()) {
        rec.exact = exact_from_json(*it);
    }
    if (auto it = j.find("notes"); it != j.end()) {
        rec.notes = it->get<std::vector<std::string>>();
    }
    if (auto it = j.find("timing"); it != j.end()) {
        rec.timing_seconds = it->at("seconds").get<double>();
    }
    return rec;
}

void write_csv(const OutputRecord& record, std::ostream& out) {
    const bool blocks = record.summaries.size() > 1;
    const auto old_precision = out.precision(17);
    for (const auto& [name, summary] : record.summaries) {
        if (blocks) {
            out << "# statistic=" << name << '\n';
        }
        std::optional<double> mu;
        if (auto it = record.fit.find(name); it != record.fit.end()) {
            mu = it->second.poisson_mu;
        }
        out << "value,count,empirical_prob,theory_prob\n";
        const double reps = static_cast<double>(summary.reps);
        for (auto [v, c] : summary.histogram) {
            out << v << ',' << c << ',' << static_cast<double>(c) / reps << ',';
            if (mu && v >= 0) {
                out << poisson_pmf(*mu, static_cast<std::uint64_t>(v));
            }
            out << '\n';
        }
    }
    out.precision(old_precision);
}

}  // namespace urnlab::cli
