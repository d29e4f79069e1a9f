#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zebrasim/calibration.hpp"
#include "zebrasim/config.hpp"
#include "zebrasim/outputs.hpp"
#include "zebrasim/regression.hpp"

namespace zebrasim {

enum class OutputFormat { Csv, Json };

/// Everything one replication produces, plus its serialized forms.
struct RunOutputs {
    ScenarioConfig config;
    std::string scenario_hash;
    std::vector<CrossingEpisode> episodes;
    std::vector<MinuteRecord> minutes;
    ComplianceTable compliance;
    CapacityResult capacity;
    long near_accidents = 0;
    SimCounters counters;

    std::string episodes_csv_text;
    std::string minutes_csv_text;
    std::string summary_json_text;

    double veh_per_min() const;
    double ped_crossing_per_min() const;
    std::optional<double> nc_rate() const;  // absent when no episodes
};

/// Run one replication of the (validated) config and build all outputs.
RunOutputs simulate_scenario(const ScenarioConfig& cfg, const std::string& scenario_hash = "");

/// Load, simulate and write episodes.csv + minutes.csv + summary.json
/// (format csv) or a single run.json bundle (format json) into out_dir.
RunOutputs run_scenario(const std::string& scenario_path,
                        std::optional<std::uint64_t> seed_override,
                        const std::string& out_dir,
                        OutputFormat format = OutputFormat::Csv);

struct BatchStats {
    double mean = 0.0;
    double sd = 0.0;
    long n = 0;
};

struct SeedOutcome {
    std::uint64_t seed = 0;
    long episodes = 0;
    std::optional<double> nc_rate;
    double veh_per_min = 0.0;
    double ped_per_min = 0.0;
    double mean_delay = 0.0;
    long near_accidents = 0;
};

struct BatchSummary {
    std::vector<SeedOutcome> runs;
    BatchStats nc_rate, veh_per_min, ped_per_min, mean_delay, near_accidents;
    std::string summary_json_text;
};

/// Independent replications over distinct seeds; per-seed outputs are written
/// under out_dir/seed_<n>/. Duplicate seeds are rejected.
BatchSummary run_batch(const std::string& scenario_path,
                       const std::vector<std::uint64_t>& seeds,
                       const std::string& out_dir);

/// In-memory batch over an already-loaded config (no file output).
BatchSummary simulate_batch(const ScenarioConfig& cfg,
                            const std::vector<std::uint64_t>& seeds);

struct SweepResult {
    std::vector<MinuteRecord> pooled_minutes;
    NoncomplianceRegression regression;
    std::string regression_json_text;
};

/// Demand grid x seeds, pooled minutes, one regression over the pool: the
/// experiment probing how non-compliance responds to traffic and pedestrian
/// flows.
SweepResult run_sweep(const std::string& scenario_path,
                      const std::vector<double>& veh_rates,
                      const std::vector<double>& ped_rates,
                      const std::vector<std::uint64_t>& seeds,
                      const std::string& out_dir);

SweepResult simulate_sweep(const ScenarioConfig& cfg,
                           const std::vector<double>& veh_rates,
                           const std::vector<double>& ped_rates,
                           const std::vector<std::uint64_t>& seeds);

std::string regression_json(const NoncomplianceRegression& reg);

}  // namespace zebrasim
