#include "zebrasim/runner.hpp"

#include <cmath>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "zebrasim/errors.hpp"
#include "zebrasim/simulation.hpp"

namespace zebrasim {

namespace fs = std::filesystem;
using nlohmann::json;

double RunOutputs::veh_per_min() const {
    long total = 0;
    for (const MinuteRecord& m : minutes) total += m.n_vehicles;
    return config.duration > 0.0 ? total / config.duration : 0.0;
}

double RunOutputs::ped_crossing_per_min() const {
    long total = 0;
    for (const MinuteRecord& m : minutes) total += m.n_crossing_peds;
    return config.duration > 0.0 ? total / config.duration : 0.0;
}

std::optional<double> RunOutputs::nc_rate() const {
    if (compliance.total() == 0) return std::nullopt;
    return static_cast<double>(compliance.total_noncompliant()) / compliance.total();
}

namespace {

json compliance_json(const ComplianceTable& table) {
    json j;
    j["near"]["compliant"] = table.near.compliant;
    j["near"]["noncompliant"] = table.near.noncompliant;
    j["near"]["pct_noncompliant"] = table.near.pct_noncompliant();
    j["far"]["compliant"] = table.far.compliant;
    j["far"]["noncompliant"] = table.far.noncompliant;
    j["far"]["pct_noncompliant"] = table.far.pct_noncompliant();
    j["total_episodes"] = table.total();
    if (auto pct = table.overall_pct_noncompliant())
        j["overall_pct_noncompliant"] = *pct;
    else
        j["overall_pct_noncompliant"] = nullptr;
    return j;
}

json episode_json(const CrossingEpisode& ep) {
    json j;
    j["episode_id"] = ep.id;
    j["start_s"] = ep.start_time;
    j["end_s"] = ep.end_time;
    j["car_id"] = ep.car_id;
    j["ped_ids"] = ep.ped_ids;
    j["category"] = to_string(ep.category);
    j["side"] = to_string(ep.side);
    j["decision"] = ep.decision ? to_string(ep.decision->kind) : "undecided";
    if (std::isfinite(ep.min_ttc))
        j["min_ttc_s"] = ep.min_ttc;
    else
        j["min_ttc_s"] = nullptr;
    return j;
}

json minute_json(const MinuteRecord& m) {
    json j;
    j["minute"] = m.minute;
    j["vehicles"] = m.n_vehicles;
    j["crossing_peds"] = m.n_crossing_peds;
    j["episodes"] = m.n_episodes;
    if (m.pct_noncompliant)
        j["pct_noncompliant"] = *m.pct_noncompliant;
    else
        j["pct_noncompliant"] = nullptr;
    return j;
}

}  // namespace

RunOutputs simulate_scenario(const ScenarioConfig& cfg, const std::string& scenario_hash) {
    Simulation sim(cfg);
    sim.run();
    WorldState& world = sim.world();

    RunOutputs out;
    out.config = cfg;
    out.scenario_hash = scenario_hash;
    out.episodes = std::move(world.episode_log);
    out.minutes = aggregate_minutes(out.episodes, world.events, cfg.duration);
    out.compliance = tally_compliance(out.episodes);
    out.capacity = capacity_and_los(world.events, cfg.duration, cfg.los_bands);
    out.near_accidents = near_accident_count(out.episodes, cfg.ttc_threshold);
    out.counters = world.counters;

    out.episodes_csv_text = episodes_csv(out.episodes);
    out.minutes_csv_text = minutes_csv(out.minutes);

    json summary;
    summary["config_echo"] = json::parse(cfg.echo_json());
    summary["scenario_hash"] = scenario_hash;
    summary["seed"] = cfg.seed;
    summary["duration_min"] = cfg.duration;
    summary["compliance"] = compliance_json(out.compliance);
    summary["throughput_veh_per_hour"] = out.capacity.veh_per_hour;
    summary["demand"]["veh_per_min_realized"] = out.veh_per_min();
    summary["demand"]["ped_crossing_per_min_realized"] = out.ped_crossing_per_min();
    summary["level_of_service"]["grade"] = to_string(out.capacity.los);
    summary["level_of_service"]["mean_ped_delay_s"] = out.capacity.mean_ped_delay;
    summary["level_of_service"]["delay_samples"] = out.capacity.delay_samples;
    summary["level_of_service"]["zero_sample"] = out.capacity.zero_sample;
    summary["near_accidents"] = out.near_accidents;
    summary["counters"]["spawned_veh"] = out.counters.spawned_veh;
    summary["counters"]["despawned_veh"] = out.counters.despawned_veh;
    summary["counters"]["spawned_ped"] = out.counters.spawned_ped;
    summary["counters"]["cleared_ped"] = out.counters.cleared_ped;
    out.summary_json_text = summary.dump(2) + "\n";
    return out;
}

RunOutputs run_scenario(const std::string& scenario_path,
                        std::optional<std::uint64_t> seed_override,
                        const std::string& out_dir, OutputFormat format) {
    const std::string content = read_text_file(scenario_path);
    ScenarioConfig cfg = ScenarioConfig::from_json_text(content);
    if (seed_override) cfg.seed = *seed_override;

    RunOutputs out = simulate_scenario(cfg, fnv1a_hex(content));

    fs::create_directories(out_dir);
    write_text_file(out_dir + "/config_echo.json", cfg.echo_json() + "\n");
    if (format == OutputFormat::Csv) {
        write_text_file(out_dir + "/episodes.csv", out.episodes_csv_text);
        write_text_file(out_dir + "/minutes.csv", out.minutes_csv_text);
        write_text_file(out_dir + "/summary.json", out.summary_json_text);
    } else {
        json bundle;
        bundle["summary"] = json::parse(out.summary_json_text);
        bundle["episodes"] = json::array();
        for (const auto& ep : out.episodes) bundle["episodes"].push_back(episode_json(ep));
        bundle["minutes"] = json::array();
        for (const auto& m : out.minutes) bundle["minutes"].push_back(minute_json(m));
        write_text_file(out_dir + "/run.json", bundle.dump(2) + "\n");
    }
    return out;
}

namespace {

BatchStats stats_of(const std::vector<double>& xs) {
    BatchStats s;
    s.n = static_cast<long>(xs.size());
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / s.n;
    if (s.n > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(ss / (s.n - 1));
    }
    return s;
}

void check_seeds(const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty()) throw ConfigError("at least one seed is required");
    std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
    if (unique.size() != seeds.size())
        throw ConfigError("duplicate seeds in batch: replications must be independent");
}

json batch_json(const BatchSummary& batch) {
    json j;
    j["replications"] = batch.runs.size();
    auto stats = [](const BatchStats& s) {
        json o;
        o["mean"] = s.mean;
        o["sd"] = s.sd;
        o["n"] = s.n;
        return o;
    };
    j["nc_rate"] = stats(batch.nc_rate);
    j["veh_per_min"] = stats(batch.veh_per_min);
    j["ped_per_min"] = stats(batch.ped_per_min);
    j["mean_delay_s"] = stats(batch.mean_delay);
    j["near_accidents"] = stats(batch.near_accidents);
    j["runs"] = json::array();
    for (const SeedOutcome& r : batch.runs) {
        json o;
        o["seed"] = r.seed;
        o["episodes"] = r.episodes;
        if (r.nc_rate)
            o["nc_rate"] = *r.nc_rate;
        else
            o["nc_rate"] = nullptr;
        o["veh_per_min"] = r.veh_per_min;
        o["ped_per_min"] = r.ped_per_min;
        o["mean_delay_s"] = r.mean_delay;
        o["near_accidents"] = r.near_accidents;
        j["runs"].push_back(o);
    }
    return j;
}

BatchSummary make_batch(const ScenarioConfig& base, const std::vector<std::uint64_t>& seeds,
                        const std::string& scenario_hash, const std::string* out_dir) {
    check_seeds(seeds);
    BatchSummary batch;
    std::vector<double> ncs, vehs, peds, delays, accs;

    for (std::uint64_t seed : seeds) {
        ScenarioConfig cfg = base;
        cfg.seed = seed;
        RunOutputs out = simulate_scenario(cfg, scenario_hash);

        SeedOutcome o;
        o.seed = seed;
        o.episodes = out.compliance.total();
        o.nc_rate = out.nc_rate();
        o.veh_per_min = out.veh_per_min();
        o.ped_per_min = out.ped_crossing_per_min();
        o.mean_delay = out.capacity.mean_ped_delay;
        o.near_accidents = out.near_accidents;
        batch.runs.push_back(o);

        if (o.nc_rate) ncs.push_back(*o.nc_rate);
        vehs.push_back(o.veh_per_min);
        peds.push_back(o.ped_per_min);
        delays.push_back(o.mean_delay);
        accs.push_back(static_cast<double>(o.near_accidents));

        if (out_dir) {
            const std::string seed_dir = *out_dir + "/seed_" + std::to_string(seed);
            fs::create_directories(seed_dir);
            write_text_file(seed_dir + "/episodes.csv", out.episodes_csv_text);
            write_text_file(seed_dir + "/minutes.csv", out.minutes_csv_text);
            write_text_file(seed_dir + "/summary.json", out.summary_json_text);
        }
    }

    batch.nc_rate = stats_of(ncs);
    batch.veh_per_min = stats_of(vehs);
    batch.ped_per_min = stats_of(peds);
    batch.mean_delay = stats_of(delays);
    batch.near_accidents = stats_of(accs);
    batch.summary_json_text = batch_json(batch).dump(2) + "\n";

    if (out_dir) write_text_file(*out_dir + "/batch_summary.json", batch.summary_json_text);
    return batch;
}

}  // namespace

BatchSummary simulate_batch(const ScenarioConfig& cfg,
                            const std::vector<std::uint64_t>& seeds) {
    return make_batch(cfg, seeds, "", nullptr);
}

BatchSummary run_batch(const std::string& scenario_path,
                       const std::vector<std::uint64_t>& seeds, const std::string& out_dir) {
    const std::string content = read_text_file(scenario_path);
    const ScenarioConfig cfg = ScenarioConfig::from_json_text(content);
    check_seeds(seeds);
    fs::create_directories(out_dir);
    return make_batch(cfg, seeds, fnv1a_hex(content), &out_dir);
}

std::string regression_json(const NoncomplianceRegression& reg) {
    json j;
    const RegressionResult& r = reg.result;
    const char* names[] = {"intercept", "vehicles_per_min", "crossing_peds_per_min"};
    for (std::size_t i = 0; i < r.beta.size() && i < 3; ++i) {
        j["coefficients"][names[i]]["beta"] = r.beta[i];
        j["coefficients"][names[i]]["std_error"] = r.std_errors[i];
        j["coefficients"][names[i]]["t"] = r.t_stats[i];
        j["coefficients"][names[i]]["p"] = r.p_values[i];
    }
    j["r_squared"] = r.r_squared;
    j["adj_r_squared"] = r.adj_r_squared;
    j["f_stat"] = r.f_stat;
    j["f_p_value"] = r.f_p_value;
    j["df"] = {r.df_model, r.df_residual};
    j["n"] = r.n;
    j["minutes_used"] = reg.minutes_used;
    j["minutes_excluded"] = reg.minutes_excluded;
    return j.dump(2) + "\n";
}

SweepResult simulate_sweep(const ScenarioConfig& base, const std::vector<double>& veh_rates,
                           const std::vector<double>& ped_rates,
                           const std::vector<std::uint64_t>& seeds) {
    if (veh_rates.empty() || ped_rates.empty())
        throw ConfigError("sweep rate grids must be non-empty");
    check_seeds(seeds);

    SweepResult sweep;
    for (double veh : veh_rates) {
        for (double ped : ped_rates) {
            for (std::uint64_t seed : seeds) {
                ScenarioConfig cfg = base;
                cfg.veh_arrival_rate = veh;
                cfg.ped_arrival_rate = ped;
                cfg.ped_rate_side_a.reset();
                cfg.ped_rate_side_b.reset();
                cfg.seed = seed;
                cfg.validate();
                RunOutputs out = simulate_scenario(cfg);
                sweep.pooled_minutes.insert(sweep.pooled_minutes.end(), out.minutes.begin(),
                                            out.minutes.end());
            }
        }
    }
    sweep.regression = regress_noncompliance(sweep.pooled_minutes);
    sweep.regression_json_text = regression_json(sweep.regression);
    return sweep;
}

SweepResult run_sweep(const std::string& scenario_path, const std::vector<double>& veh_rates,
                      const std::vector<double>& ped_rates,
                      const std::vector<std::uint64_t>& seeds, const std::string& out_dir) {
    const std::string content = read_text_file(scenario_path);
    const ScenarioConfig cfg = ScenarioConfig::from_json_text(content);
    SweepResult sweep = simulate_sweep(cfg, veh_rates, ped_rates, seeds);
    fs::create_directories(out_dir);
    write_text_file(out_dir + "/pooled_minutes.csv", minutes_csv(sweep.pooled_minutes));
    write_text_file(out_dir + "/regression.json", sweep.regression_json_text);
    return sweep;
}

}  // namespace zebrasim
